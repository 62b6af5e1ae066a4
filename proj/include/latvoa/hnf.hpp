#pragma once

// Canonical forms for integer row modules: Hermite and Smith normal forms,
// integer kernels, exact row-space membership.

#include <optional>
#include <vector>

#include "latvoa/matrix.hpp"

namespace latvoa {

struct HnfResult {
  IntMatrix h;                      // canonical form, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row of h
  std::size_t rank = 0;
};

// Row-style Hermite normal form: pivot columns strictly increase, pivots are
// positive, entries above each pivot are reduced into [0, pivot).  Identical
// row spans over Z give identical h.
HnfResult hnf(const IntMatrix& m);

// As hnf(), but also returns a unimodular u with u*m == (h with zero rows),
// and the kernel rows of u (a basis of the left kernel of m, saturated).
struct HnfTransformResult {
  IntMatrix h;  // rank rows, canonical
  IntMatrix u;  // rank x m.rows(): u * m == h
  IntMatrix kernel;  // (m.rows - rank) x m.rows(): kernel * m == 0
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};
HnfTransformResult hnf_transform(const IntMatrix& m);

// Basis of { x : x * m == 0 } as rows; the lattice of all integer solutions.
IntMatrix left_kernel(const IntMatrix& m);

// Elementary divisors d1 | d2 | ... (all of them, including 1s), plus rank.
struct SnfResult {
  std::vector<Int> divisors;
  std::size_t rank = 0;
};
SnfResult snf(const IntMatrix& m);

// Solves x * h_rows = v exactly for a matrix h in HNF shape; returns
// coefficients (rational in general) or nullopt if v is outside the row span.
std::optional<std::vector<Rat>> solve_in_rows(const HnfResult& h,
                                              const std::vector<Rat>& v);

}  // namespace latvoa
