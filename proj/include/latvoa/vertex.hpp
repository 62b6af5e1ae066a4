#pragma once

#include "latvoa/voa.hpp"

namespace latvoa {

// The k-th product u_k v in the charged oscillator algebra, by normal-ordered
// expansion: each u-oscillator either re-emits a creation operator, acts as a
// zero mode on the target charge, or contracts against one target oscillator;
// the exponential of annihilation modes then hits a subset of the remaining
// target oscillators, and the leftover z-power fixes the order of the
// creation series of the charge.
VoaElement vertex_mode(const Voa& v, const VoaElement& u, int64_t k,
                       const VoaElement& w);

// Conformal structure: omega = 1/2 sum (G^{-1})_{ij} gi(-1) gj(-1),
// central charge = rank, multiplier = least s >= 1 with s*omega inside the
// standard form at weight 2.
struct VirasoroConfig {
  VoaElement omega;
  Rat central_charge;
  Int multiplier;
};
VirasoroConfig virasoro(const Voa& v);

// L(n) x = omega_{n+1} x.
VoaElement virasoro_mode(const Voa& v, const VirasoroConfig& vc, int64_t n,
                         const VoaElement& x);

// L(1) x == 0.
bool is_quasi_primary(const Voa& v, const VirasoroConfig& vc,
                      const VoaElement& x);

// Matrix of x -> u_k x between two weight frames, rows indexed by source
// keys (row-vector action: coords(u_k x) = coords(x) * M).  Throws
// invalid_input if an image leaves the target frame.
RatMatrix mode_matrix(const Voa& v, const VoaElement& u, int64_t k,
                      const DegreeFrame& from, const DegreeFrame& to);

// Trace over the weight-n piece of x -> a_{wt(a)-1} (b_{wt(b)-1} x); both
// arguments must be homogeneous.
Rat trace_form(const Voa& v, const VoaElement& a, const VoaElement& b,
               int64_t n);

// Matrix of the weight-m trace pairing on the standard basis of weight m.
RatMatrix trace_form_matrix(const Voa& v, int64_t m);

// Adjoint identity for the invariant pairing: for homogeneous u of weight m,
//   (u_n a, b) == (-1)^m sum_{i>=0} 1/i! * (a, (L(1)^i u)_{2m-n-2-i} b).
bool pair_adjoint_check(const Voa& v, const VirasoroConfig& vc,
                        const VoaElement& u, const VoaElement& a,
                        const VoaElement& b, int64_t n);

// Specialization of the adjoint identity against the vacuum: the value
//   (-1)^m sum_{i>=0} 1/i! * (vac, (L(1)^i u)_{2m-1-i} w)
// for homogeneous u of weight m; equals pair(u, w, BILINEAR).
Rat invariance_sum(const Voa& v, const VirasoroConfig& vc, const VoaElement& u,
                   const VoaElement& w);

// Graded span generated from the vacuum and `gens` (homogeneous, weights
// <= max_degree) under all products g_k x with g a generator: per weight,
// iterated until the spans stop growing.  Throws invariant_violation if the
// spans keep growing after max_rounds sweeps.
std::vector<GradedZForm> generated_form(const Voa& v,
                                        const std::vector<VoaElement>& gens,
                                        int64_t max_degree,
                                        int max_rounds = 64);

}  // namespace latvoa
