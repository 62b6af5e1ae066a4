#include "latvoa/lattice.hpp"

#include <fstream>
#include <sstream>

namespace latvoa {

EvenLattice::EvenLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols())
    throw invalid_input("EvenLattice: Gram matrix must be square");
  if (gram_.rows() == 0) throw invalid_input("EvenLattice: empty Gram matrix");
  for (std::size_t i = 0; i < gram_.rows(); ++i) {
    if (gram_(i, i) % 2 != 0)
      throw invalid_input("EvenLattice: diagonal must be even");
    for (std::size_t j = 0; j < i; ++j)
      if (gram_(i, j) != gram_(j, i))
        throw invalid_input("EvenLattice: Gram matrix must be symmetric");
  }
  // Positive definiteness via leading principal minors.
  for (std::size_t k = 1; k <= gram_.rows(); ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = gram_(i, j);
    if (det(minor) <= 0)
      throw invalid_input("EvenLattice: Gram matrix is not positive definite");
  }
}

Int EvenLattice::inner(const LatticeVector& a, const LatticeVector& b) const {
  if (a.size() != rank() || b.size() != rank())
    throw invalid_input("EvenLattice::inner: dimension mismatch");
  Int acc(0);
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    Int row(0);
    for (std::size_t j = 0; j < rank(); ++j)
      if (b[j] != 0) row += gram_(i, j) * Int(static_cast<long>(b[j]));
    acc += Int(static_cast<long>(a[i])) * row;
  }
  return acc;
}

RatMatrix EvenLattice::dual_gram() const { return inverse(to_rational(gram_)); }

AbelianInvariants EvenLattice::discriminant_group() const {
  SnfResult s = snf(gram_);
  AbelianInvariants inv;
  for (const Int& d : s.divisors)
    if (d > 1) inv.push_back(d);
  return inv;
}

IntMatrix a_n_gram(std::size_t n) {
  if (n == 0) throw invalid_input("A(n): rank must be positive");
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) {
      g(i, i + 1) = -1;
      g(i + 1, i) = -1;
    }
  }
  return g;
}

IntMatrix d_n_gram(std::size_t n) {
  if (n < 3) throw invalid_input("D(n): rank must be at least 3");
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  // Chain 0..n-3, with nodes n-2 and n-1 both attached to node n-3.
  for (std::size_t i = 0; i + 1 < n - 2; ++i) {
    g(i, i + 1) = -1;
    g(i + 1, i) = -1;
  }
  g(n - 3, n - 2) = -1;
  g(n - 2, n - 3) = -1;
  g(n - 3, n - 1) = -1;
  g(n - 1, n - 3) = -1;
  return g;
}

IntMatrix e8_gram() {
  // Simply-laced Cartan matrix; nodes 0-2-3-4-5-6-7 in a chain, node 1
  // attached to node 3.
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto edge = [&](std::size_t a, std::size_t b) {
    g(a, b) = -1;
    g(b, a) = -1;
  };
  edge(0, 2);
  edge(2, 3);
  edge(3, 4);
  edge(4, 5);
  edge(5, 6);
  edge(6, 7);
  edge(1, 3);
  return g;
}

namespace {

IntMatrix read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open Gram file: " + path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0)
    throw invalid_input("Gram file: bad rank line in " + path);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long v;
      if (!(in >> v))
        throw invalid_input("Gram file: missing entries in " + path);
      g(i, j) = v;
    }
  return g;
}

}  // namespace

EvenLattice resolve_lattice(const LatticeSpec& spec) {
  const std::string& s = spec.name;
  if (s.empty()) throw invalid_input("empty lattice name");
  if (s[0] == '@') return EvenLattice(read_gram_file(s.substr(1)));
  if (s == "A1") return EvenLattice(a_n_gram(1));
  if (s == "A2") return EvenLattice(a_n_gram(2));
  if (s == "E8") return EvenLattice(e8_gram());
  if (s == "EE8") {
    IntMatrix g = e8_gram();
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= 2;
    return EvenLattice(g);
  }
  auto parse_arg = [&](const std::string& prefix) -> long {
    if (s.size() <= prefix.size() + 1 || s.compare(0, prefix.size(), prefix) != 0 ||
        s[prefix.size()] != '(' || s.back() != ')')
      return -1;
    std::string inner = s.substr(prefix.size() + 1,
                                 s.size() - prefix.size() - 2);
    try {
      std::size_t pos = 0;
      long v = std::stol(inner, &pos);
      if (pos != inner.size()) return -1;
      return v;
    } catch (...) {
      return -1;
    }
  };
  if (long n = parse_arg("A"); n > 0) return EvenLattice(a_n_gram(n));
  if (long n = parse_arg("D"); n > 0) return EvenLattice(d_n_gram(n));
  if (long n = parse_arg("RANK1"); n > 0) {
    if (n % 2 != 0)
      throw invalid_input("RANK1(m): m must be even for an even lattice");
    IntMatrix g(1, 1);
    g(0, 0) = n;
    return EvenLattice(g);
  }
  throw invalid_input("unknown lattice name: " + s);
}

LatticeVector add(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

LatticeVector sub(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

LatticeVector negate(const LatticeVector& a) {
  LatticeVector r(a);
  for (auto& x : r) x = -x;
  return r;
}

bool is_zero(const LatticeVector& a) {
  for (auto x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace latvoa
