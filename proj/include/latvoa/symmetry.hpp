#pragma once

#include "latvoa/vertex.hpp"

namespace latvoa {

// Isometry of the lattice lifted to the charged oscillator space:
//   e^{gamma_i} -> signs[i] * e^{sigma gamma_i},   h(-n) -> (sigma h)(-n),
// extended to every charge through the product rule
//   eta(a+b) = eta(a) * eta(b) * eps(sigma a, sigma b) * eps(a, b).
// Any sign assignment on the basis extends consistently because sigma
// preserves the Gram matrix; the extension is property-tested.
struct LiftedIsometry {
  IntMatrix sigma;         // columns are the images of the basis vectors
  std::vector<int> signs;  // +1 / -1 per basis vector
};

// sigma = -1, all signs +1: e^{alpha} <-> e^{-alpha}, h -> -h.
LiftedIsometry theta(const Voa& v);
LiftedIsometry lift_identity(const Voa& v);
// Validates sigma^T G sigma = G and the sign values.
LiftedIsometry lift_isometry(const Voa& v, IntMatrix sigma,
                             std::vector<int> signs);

// Image of a coordinate vector under sigma.
LatticeVector isometry_image(const LiftedIsometry& g, const LatticeVector& a);
// eta(alpha): the sign of g on e^{alpha}.
int lift_sign(const Voa& v, const LiftedIsometry& g,
              const LatticeVector& alpha);
VoaElement apply_isometry(const Voa& v, const LiftedIsometry& g,
                          const VoaElement& u);
// g after h.
LiftedIsometry compose(const Voa& v, const LiftedIsometry& g,
                       const LiftedIsometry& h);
LiftedIsometry inverse_isometry(const Voa& v, const LiftedIsometry& g);
bool same_isometry(const LiftedIsometry& a, const LiftedIsometry& b);

// Closure of `gens` under composition; throws invalid_input past max_size.
std::vector<LiftedIsometry> isometry_group(const Voa& v,
                                           const std::vector<LiftedIsometry>& gens,
                                           std::size_t max_size = 256);

// Matrix on a weight frame; rows indexed by source keys, so
// coords(g u) = coords(u) * M.
RatMatrix isometry_matrix(const Voa& v, const LiftedIsometry& g,
                          const DegreeFrame& f);

// Per-degree fixed points { x in R_n : g x = x for all g in gs }.
std::vector<GradedZForm> fixed_form(const Voa& v,
                                    const std::vector<GradedZForm>& r,
                                    const std::vector<LiftedIsometry>& gs);

// Intersection / sum of same-degree row modules.
GradedZForm intersect_forms(const std::vector<GradedZForm>& forms);
GradedZForm sum_forms(const std::vector<GradedZForm>& forms);

// Z-span of all x_k y over basis rows x of the x-grades and y of the
// y-grades, collected per result weight 0..max_degree.
std::vector<GradedZForm> module_product_span(const Voa& v,
                                             const std::vector<GradedZForm>& x,
                                             const std::vector<GradedZForm>& y,
                                             int64_t max_degree);

// Degree-n piece: direct sum over i+j=n of A_i (x) B_j, blocks ordered by i,
// each block in Kronecker coordinates (a-index major).
std::vector<GradedZForm> tensor_form(const std::vector<GradedZForm>& a,
                                     const std::vector<GradedZForm>& b);

// Permutation of the weight-n tensor-square coordinates that exchanges the
// two factors: block (i, n-i) goes to block (n-i, i) with the Kronecker
// indices transposed.  Row-vector action, like isometry_matrix.
RatMatrix tensor_swap(const std::vector<GradedZForm>& a, int64_t degree);

// Character decomposition of a module under commuting involutions: one
// eigenmodule per sign vector, the invariants of a / (sum of eigenmodules),
// and for a single involution the mod-2 Jordan surplus rank of t - 1.
struct CharacterSplit {
  std::vector<std::vector<int>> characters;
  std::vector<ZModule> eigenmodules;
  AbelianInvariants quotient;
  int64_t jordan_rank = -1;
};
CharacterSplit eigen_split(const ZModule& a, const std::vector<RatMatrix>& t);

// Rank of an integer matrix reduced mod 2.
std::size_t f2_rank(const IntMatrix& m);

}  // namespace latvoa
