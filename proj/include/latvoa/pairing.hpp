#pragma once

#include "latvoa/voa.hpp"

namespace latvoa {

// BILINEAR: (e^a, e^b) = delta_{a,-b}; a negative mode crossing the pairing
// flips sign.  HERMITIAN: (e^a | e^b) = delta_{a,b}; modes cross unchanged.
enum class PairKind { BILINEAR, HERMITIAN };

// Pairing by full monomial contraction (per-mode permanents).
Rat pair(const Voa& v, const VoaElement& a, const VoaElement& b, PairKind kind);

// Symbolic product of complete generators h_{part}(coords) times e^{charge}.
struct HFactor {
  std::vector<Rat> coords;
  int64_t part = 1;
};
struct HProduct {
  std::vector<HFactor> factors;
  LatticeVector charge;
};

VoaElement expand_hproduct(const Voa& v, const HProduct& p);

// The same pairing from the closed generating function
// prod_{t,s} (1 - w_t x_s)^{e(t,s)}, e(t,s) = +-(a_t, b_s), by exact
// truncated series expansion; shares no code with pair().
Rat pair_genfun(const Voa& v, const HProduct& a, const HProduct& b,
                PairKind kind);

// Gram matrix between two (possibly equal) bases.  Entries with
// non-interacting charges are skipped without contraction work.
RatMatrix graded_gram(const Voa& v, const std::vector<BasisElement>& a,
                      const std::vector<BasisElement>& b, PairKind kind,
                      int threads = 1);
RatMatrix graded_gram(const Voa& v, const std::vector<BasisElement>& basis,
                      PairKind kind, int threads = 1);

// Gram matrix of a frame's unit monomials.
RatMatrix frame_gram(const Voa& v, const DegreeFrame& f, PairKind kind);

// Elementary divisors > 1 of an integral Gram matrix; throws invalid_input on
// non-integer entries or a singular matrix.
AbelianInvariants gram_invariants(const RatMatrix& gram);

}  // namespace latvoa
