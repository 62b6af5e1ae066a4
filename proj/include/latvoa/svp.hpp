#pragma once

// Exact shortest/short vector computations for positive definite forms.
// Reduction (exact LLL over Q) is a speed heuristic only; correctness rests
// on the exact enumeration bounds.

#include "latvoa/lattice.hpp"

namespace latvoa {

// Unimodular u such that u * gram * u^T is LLL-reduced (delta = 99/100).
IntMatrix lll_transform(const RatMatrix& gram);

struct ShortVector {
  LatticeVector coords;  // in the basis the Gram matrix was given in
  Rat norm;
};

// All nonzero vectors of norm <= bound (both signs), sorted by
// (norm, lexicographic coordinates).  Exact; throws invalid_input if the
// form is not positive definite or bound <= 0 yields an empty request.
std::vector<ShortVector> short_vectors(const RatMatrix& gram, const Rat& bound);
std::vector<ShortVector> short_vectors(const IntMatrix& gram, const Int& bound);

struct MinNormResult {
  bool found = false;      // false: no nonzero vector of norm <= bound
  Rat min;                 // minimum norm when found
  LatticeVector witness;   // a vector attaining it
};

// Exact minimum norm among nonzero vectors if it is <= bound; otherwise
// reports NONE_BELOW_BOUND via found == false.
MinNormResult min_norm(const RatMatrix& gram, const Rat& bound);
MinNormResult min_norm(const IntMatrix& gram, const Int& bound);

}  // namespace latvoa
