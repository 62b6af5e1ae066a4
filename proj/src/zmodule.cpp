#include "latvoa/zmodule.hpp"

#include <sstream>

namespace latvoa {

namespace {

std::string row_to_string(const RatMatrix& m, std::size_t i) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < m.cols(); ++j)
    os << (j ? ", " : "") << rat_str(m(i, j));
  os << ")";
  return os.str();
}

}  // namespace

void ZModule::canonicalize(RatMatrix rows) {
  ambient_ = rows.cols();
  // Clear denominators globally, then divide out shared content.
  Int den(1);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j)
      den = int_lcm(den, Rat(rows(i, j)).get_den());
  IntMatrix scaled(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) {
      Rat v = rows(i, j) * Rat(den);
      v.canonicalize();
      scaled(i, j) = v.get_num();
    }
  basis_ = hnf(scaled);
  Int content(0);
  for (std::size_t i = 0; i < basis_.h.rows(); ++i)
    for (std::size_t j = 0; j < basis_.h.cols(); ++j)
      content = int_gcd(content, basis_.h(i, j));
  Int g = int_gcd(content, den);
  if (g > 1) {
    for (std::size_t i = 0; i < basis_.h.rows(); ++i)
      for (std::size_t j = 0; j < basis_.h.cols(); ++j)
        mpz_divexact(basis_.h(i, j).get_mpz_t(), basis_.h(i, j).get_mpz_t(),
                     g.get_mpz_t());
    den /= g;
  }
  denom_ = den;
}

ZModule ZModule::from_rows(const RatMatrix& rows) {
  ZModule m;
  m.canonicalize(rows);
  return m;
}

ZModule ZModule::from_rows(const IntMatrix& rows) {
  return from_rows(to_rational(rows));
}

ZModule ZModule::full(std::size_t n) {
  return from_rows(IntMatrix::identity(n));
}

ZModule ZModule::zero(std::size_t n) { return from_rows(RatMatrix(0, n)); }

RatMatrix ZModule::basis_rows() const {
  RatMatrix r(rank(), ambient_);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) {
      r(i, j) = Rat(basis_.h(i, j), denom_);
      r(i, j).canonicalize();
    }
  return r;
}

bool ZModule::contains(const std::vector<Rat>& v) const {
  return coordinates(v).has_value();
}

std::optional<std::vector<Int>> ZModule::coordinates(
    const std::vector<Rat>& v) const {
  std::vector<Rat> scaled(v);
  for (Rat& x : scaled) x *= Rat(denom_);
  auto sol = solve_in_rows(basis_, scaled);
  if (!sol) return std::nullopt;
  std::vector<Int> out;
  out.reserve(sol->size());
  for (Rat& c : *sol) {
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return out;
}

std::optional<std::vector<Rat>> ZModule::rational_coordinates(
    const std::vector<Rat>& v) const {
  std::vector<Rat> scaled(v);
  for (Rat& x : scaled) x *= Rat(denom_);
  return solve_in_rows(basis_, scaled);
}

bool ZModule::contains(const ZModule& sub) const {
  RatMatrix rows = sub.basis_rows();
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!contains(rows.row(i))) return false;
  return true;
}

bool ZModule::rational_span_contains(const ZModule& other) const {
  RatMatrix rows = other.basis_rows();
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!rational_coordinates(rows.row(i))) return false;
  return true;
}

ZModule sum(const ZModule& a, const ZModule& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw invalid_input("sum: ambient dimension mismatch");
  RatMatrix rows = a.basis_rows();
  rows.append_rows(b.basis_rows());
  return ZModule::from_rows(rows);
}

ZModule intersect(const ZModule& a, const ZModule& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw invalid_input("intersect: ambient dimension mismatch");
  if (a.rank() == 0 || b.rank() == 0) return ZModule::zero(a.ambient_dim());
  // Common denominator D; intersect the integer numerator modules, then
  // divide by D again.  Kernel rows (x|y) of the stacked matrix satisfy
  // x*A = -y*B, i.e. x*A runs over the intersection.
  Int d = int_lcm(a.denominator(), b.denominator());
  Int fa = d / a.denominator(), fb = d / b.denominator();
  IntMatrix stacked(a.rank() + b.rank(), a.ambient_dim());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j)
      stacked(i, j) = fa * a.numerator_basis()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.ambient_dim(); ++j)
      stacked(a.rank() + i, j) = fb * b.numerator_basis()(i, j);
  IntMatrix kern = left_kernel(stacked);
  RatMatrix rows(kern.rows(), a.ambient_dim());
  for (std::size_t i = 0; i < kern.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) {
      Rat acc(0);
      for (std::size_t k = 0; k < a.rank(); ++k)
        acc += Rat(kern(i, k)) * Rat(fa * a.numerator_basis()(k, j));
      rows(i, j) = acc / Rat(d);
    }
  return ZModule::from_rows(rows);
}

IndexResult index_of(const ZModule& sub, const ZModule& super) {
  if (sub.ambient_dim() != super.ambient_dim())
    throw invalid_input("index_of: ambient dimension mismatch");
  if (!super.rational_span_contains(sub))
    throw containment_error("index_of: sub is not inside super's rational span");
  if (sub.rank() < super.rank()) return IndexResult{false, Int(0)};
  // Express sub's basis in super's basis; containment demands integrality.
  RatMatrix rows = sub.basis_rows();
  IntMatrix x(sub.rank(), super.rank());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto coords = super.coordinates(rows.row(i));
    if (!coords)
      throw containment_error(
          "index_of: row " + row_to_string(rows, i) +
          " of sub lies outside super as an integer module");
    for (std::size_t j = 0; j < super.rank(); ++j) x(i, j) = (*coords)[j];
  }
  IndexResult res;
  res.finite = true;
  res.value = abs(det(x));
  return res;
}

AbelianInvariants quotient_invariants(const ZModule& sub, const ZModule& super) {
  if (sub.ambient_dim() != super.ambient_dim())
    throw invalid_input("quotient_invariants: ambient dimension mismatch");
  if (sub.rank() != super.rank())
    throw invalid_input("quotient_invariants: infinite quotient (rank drop)");
  RatMatrix rows = sub.basis_rows();
  IntMatrix x(sub.rank(), super.rank());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto coords = super.coordinates(rows.row(i));
    if (!coords)
      throw containment_error("quotient_invariants: sub not contained in super");
    for (std::size_t j = 0; j < super.rank(); ++j) x(i, j) = (*coords)[j];
  }
  SnfResult s = snf(x);
  AbelianInvariants inv;
  for (const Int& d : s.divisors)
    if (d > 1) inv.push_back(d);
  return inv;
}

IntMatrix restrict_action(const ZModule& mod, const RatMatrix& action) {
  if (action.rows() != mod.ambient_dim() || action.cols() != mod.ambient_dim())
    throw invalid_input("restrict_action: action shape mismatch");
  RatMatrix image = mod.basis_rows() * action;
  IntMatrix t(mod.rank(), mod.rank());
  for (std::size_t i = 0; i < image.rows(); ++i) {
    auto coords = mod.coordinates(image.row(i));
    if (!coords)
      throw invariant_violation(
          "module is not invariant under the action; witness image row " +
          row_to_string(image, i));
    for (std::size_t j = 0; j < mod.rank(); ++j) t(i, j) = (*coords)[j];
  }
  return t;
}

namespace {

// Kernel rows (in basis coordinates) of the stacked blocks, mapped back to
// the ambient space.
ZModule kernel_submodule(const ZModule& mod,
                         const std::vector<IntMatrix>& blocks) {
  const std::size_t r = mod.rank();
  IntMatrix stacked(r, 0);
  {
    IntMatrix wide(r, blocks.size() * r);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          wide(i, b * r + j) = blocks[b](i, j);
    stacked = wide;
  }
  IntMatrix kern = left_kernel(stacked);
  RatMatrix basis = mod.basis_rows();
  RatMatrix rows(kern.rows(), mod.ambient_dim());
  for (std::size_t i = 0; i < kern.rows(); ++i)
    for (std::size_t j = 0; j < mod.ambient_dim(); ++j) {
      Rat acc(0);
      for (std::size_t k = 0; k < r; ++k)
        if (kern(i, k) != 0) acc += Rat(kern(i, k)) * basis(k, j);
      rows(i, j) = acc;
    }
  return ZModule::from_rows(rows);
}

}  // namespace

ZModule fixed_submodule(const ZModule& mod,
                        const std::vector<RatMatrix>& actions) {
  std::vector<IntMatrix> blocks;
  for (const RatMatrix& g : actions) {
    IntMatrix t = restrict_action(mod, g);
    for (std::size_t i = 0; i < t.rows(); ++i) t(i, i) -= 1;
    blocks.push_back(t);
  }
  if (blocks.empty()) return mod;
  return kernel_submodule(mod, blocks);
}

ZModule eigen_submodule(const ZModule& mod, const std::vector<RatMatrix>& actions,
                        const std::vector<int>& signs) {
  if (actions.size() != signs.size())
    throw invalid_input("eigen_submodule: sign count mismatch");
  std::vector<IntMatrix> blocks;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    IntMatrix t = restrict_action(mod, actions[k]);
    for (std::size_t i = 0; i < t.rows(); ++i) t(i, i) -= Int(signs[k]);
    blocks.push_back(t);
  }
  if (blocks.empty()) return mod;
  return kernel_submodule(mod, blocks);
}

ZModule image_module(const ZModule& mod, const RatMatrix& action) {
  if (action.rows() != mod.ambient_dim())
    throw invalid_input("image_module: action shape mismatch");
  return ZModule::from_rows(mod.basis_rows() * action);
}

}  // namespace latvoa
