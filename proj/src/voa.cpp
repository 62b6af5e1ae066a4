#include "latvoa/voa.hpp"

#include <algorithm>
#include <sstream>

#include "latvoa/error.hpp"
#include "latvoa/svp.hpp"

namespace latvoa {

Cocycle::Cocycle(const IntMatrix& gram) {
  if (gram.rows() != gram.cols()) throw invalid_input("Gram matrix not square");
  std::size_t d = gram.rows();
  e_.assign(d, std::vector<uint8_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    if (gram(i, i) % 2 != 0) throw invalid_input("Gram diagonal must be even");
    Int half = gram(i, i) / 2;
    e_[i][i] = static_cast<uint8_t>(mpz_odd_p(half.get_mpz_t()) ? 1 : 0);
    for (std::size_t j = 0; j < i; ++j)
      e_[i][j] = static_cast<uint8_t>(mpz_odd_p(gram(i, j).get_mpz_t()) ? 1 : 0);
  }
}

int Cocycle::sign(const LatticeVector& a, const LatticeVector& b) const {
  std::size_t d = e_.size();
  if (a.size() != d || b.size() != d)
    throw invalid_input("vector size mismatch in cocycle");
  unsigned bit = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if ((a[i] & 1) == 0) continue;
    for (std::size_t j = 0; j <= i; ++j)
      bit ^= static_cast<unsigned>(e_[i][j]) & static_cast<unsigned>(b[j] & 1);
  }
  return bit ? -1 : 1;
}

VoaElement VoaElement::vacuum(std::size_t rank) {
  return charge_vector(LatticeVector(rank, 0));
}

VoaElement VoaElement::charge_vector(LatticeVector alpha) {
  VoaElement u;
  u.terms[VoaKey{FockMonomial::one(), std::move(alpha)}] = Rat(1);
  return u;
}

VoaElement VoaElement::from_fock(const FockPolynomial& p, LatticeVector charge) {
  VoaElement u;
  for (const auto& [m, c] : p.terms) u.terms[VoaKey{m, charge}] = c;
  return u;
}

void VoaElement::add_term(VoaKey k, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(std::move(k), c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

VoaElement& VoaElement::operator+=(const VoaElement& o) {
  for (const auto& [k, c] : o.terms) add_term(k, c);
  return *this;
}

VoaElement& VoaElement::operator-=(const VoaElement& o) {
  for (const auto& [k, c] : o.terms) add_term(k, -c);
  return *this;
}

VoaElement& VoaElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

std::string charge_str(const LatticeVector& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << a[i];
  }
  os << "]";
  return os.str();
}

std::string VoaElement::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "*" << k.mono.str() << "*e" << charge_str(k.charge);
  }
  return os.str();
}

VoaElement operator+(VoaElement a, const VoaElement& b) {
  a += b;
  return a;
}

VoaElement operator-(VoaElement a, const VoaElement& b) {
  a -= b;
  return a;
}

VoaElement operator*(const Rat& c, VoaElement a) {
  a *= c;
  return a;
}

Int Voa::key_weight(const VoaKey& k) const {
  Int norm = lattice_.norm(k.charge);
  return Int(k.mono.degree()) + norm / 2;
}

bool Voa::homogeneous_weight(const VoaElement& u, Int* wt) const {
  bool have = false;
  Int w = 0;
  for (const auto& [k, c] : u.terms) {
    Int kw = key_weight(k);
    if (!have) {
      w = kw;
      have = true;
    } else if (kw != w) {
      return false;
    }
  }
  if (wt) *wt = have ? w : Int(0);
  return true;
}

namespace {

// Charges of norm <= 2n in frame order: zero first, then (norm, lex).
std::vector<LatticeVector> frame_charges(const Voa& v, int64_t n) {
  std::vector<LatticeVector> out;
  out.push_back(LatticeVector(v.rank(), 0));
  if (n >= 1) {
    auto sv = short_vectors(v.lattice().gram(), Int(2 * n));
    for (auto& s : sv) out.push_back(std::move(s.coords));
  }
  return out;
}

FockMonomial cp_monomial(const ColoredPartition& cp) {
  FockMonomial m;
  for (const auto& [c, k] : cp.parts)
    m.factors.push_back(FockFactor{c, static_cast<int32_t>(k)});
  m.normalize();
  return m;
}

}  // namespace

DegreeFrame degree_frame(const Voa& v, int64_t n) {
  if (n < 0) throw invalid_input("negative weight");
  DegreeFrame f;
  f.degree = n;
  int32_t d = static_cast<int32_t>(v.rank());
  for (auto& alpha : frame_charges(v, n)) {
    Int norm = v.lattice().norm(alpha);
    int64_t leftover = n - Int(norm / 2).get_si();
    if (leftover < 0) continue;
    std::size_t begin = f.keys.size();
    std::vector<FockMonomial> monos;
    for (const auto& cp : colored_partitions(d, leftover))
      monos.push_back(cp_monomial(cp));
    std::sort(monos.begin(), monos.end());
    for (auto& m : monos) f.keys.push_back(VoaKey{std::move(m), alpha});
    f.charge_ranges.emplace_back(begin, f.keys.size());
    f.charges.push_back(std::move(alpha));
  }
  for (std::size_t i = 0; i < f.keys.size(); ++i) f.index[f.keys[i]] = i;
  return f;
}

std::vector<Rat> coordinatize(const DegreeFrame& f, const VoaElement& u) {
  std::vector<Rat> row(f.keys.size(), Rat(0));
  for (const auto& [k, c] : u.terms) {
    auto it = f.index.find(k);
    if (it == f.index.end())
      throw invalid_input("term outside the degree frame: " + k.mono.str() +
                          "*e" + charge_str(k.charge));
    row[it->second] = c;
  }
  return row;
}

VoaElement element_from_coords(const DegreeFrame& f,
                               const std::vector<Rat>& coords) {
  if (coords.size() != f.keys.size())
    throw invalid_input("coordinate length does not match frame");
  VoaElement u;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) u.add_term(f.keys[i], coords[i]);
  return u;
}

namespace {

// Per-color partitions of a colored partition, parts descending.
std::vector<std::vector<int64_t>> split_by_color(const ColoredPartition& cp,
                                                 int32_t d) {
  std::vector<std::vector<int64_t>> lam(d);
  for (const auto& [c, k] : cp.parts) lam[c].push_back(k);
  for (auto& l : lam) std::sort(l.begin(), l.end(), std::greater<int64_t>());
  return lam;
}

std::string lambda_str(const std::vector<int64_t>& lam) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (i) os << ",";
    os << lam[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

std::vector<BasisElement> degree_basis(const Voa& v, int64_t n,
                                       BasisVariant variant) {
  if (n < 0) throw invalid_input("negative weight");
  int32_t d = static_cast<int32_t>(v.rank());
  // Complete generator series per lattice basis direction, up to order n.
  std::vector<std::vector<FockPolynomial>> hser;
  if (variant == BasisVariant::STANDARD_H) {
    for (int32_t c = 0; c < d; ++c) {
      std::vector<Rat> unit(d, Rat(0));
      unit[c] = 1;
      hser.push_back(complete_series(unit, n));
    }
  }
  // Coordinate vectors per color for the Schur variants.
  std::vector<std::vector<Rat>> coords(d);
  RatMatrix dual = v.lattice().dual_gram();
  for (int32_t c = 0; c < d; ++c) {
    coords[c].assign(d, Rat(0));
    switch (variant) {
      case BasisVariant::STANDARD_H:
      case BasisVariant::SCHUR_PRIMAL:
        coords[c][c] = 1;
        break;
      case BasisVariant::SCHUR_DUAL_HERMITIAN:
        for (int32_t j = 0; j < d; ++j) coords[c][j] = dual(j, c);
        break;
      case BasisVariant::SCHUR_DUAL_BILINEAR:
        for (int32_t j = 0; j < d; ++j) coords[c][j] = -dual(j, c);
        break;
    }
  }
  std::vector<BasisElement> out;
  for (auto& alpha : frame_charges(v, n)) {
    Int norm = v.lattice().norm(alpha);
    int64_t leftover = n - Int(norm / 2).get_si();
    if (leftover < 0) continue;
    LatticeVector charge = alpha;
    if (variant == BasisVariant::SCHUR_DUAL_BILINEAR)
      for (auto& x : charge) x = -x;
    for (const auto& cp : colored_partitions(d, leftover)) {
      FockPolynomial p;
      std::ostringstream desc;
      if (variant == BasisVariant::STANDARD_H) {
        p = FockPolynomial::one();
        for (const auto& [c, k] : cp.parts) p = fock_mul(p, hser[c][k]);
        desc << cp.str();
      } else {
        p = FockPolynomial::one();
        auto lams = split_by_color(cp, d);
        bool first = true;
        for (int32_t c = 0; c < d; ++c) {
          if (lams[c].empty()) continue;
          p = fock_mul(p, schur_element(coords[c], lams[c]));
          if (!first) desc << "*";
          first = false;
          const char* base =
              variant == BasisVariant::SCHUR_PRIMAL
                  ? "g"
                  : (variant == BasisVariant::SCHUR_DUAL_HERMITIAN ? "d"
                                                                   : "-d");
          desc << "s" << lambda_str(lams[c]) << "(" << base << c << ")";
        }
        if (first) desc << "1";
      }
      desc << "*e" << charge_str(charge);
      out.push_back(BasisElement{cp, charge,
                                 VoaElement::from_fock(p, charge), desc.str()});
    }
  }
  return out;
}

Int colored_partition_count(int32_t d, int64_t n) {
  if (d <= 0) throw invalid_input("color count must be positive");
  if (n < 0) return 0;
  std::vector<Int> c(n + 1, 0);
  c[0] = 1;
  for (int64_t k = 1; k <= n; ++k) {
    std::vector<Int> nc(n + 1, 0);
    for (int64_t m = 0; m <= n; ++m) {
      if (c[m] == 0) continue;
      for (int64_t j = 0; m + j * k <= n; ++j) {
        nc[m + j * k] +=
            c[m] * int_binomial(static_cast<unsigned long>(d - 1 + j),
                                static_cast<unsigned long>(j));
      }
    }
    c = std::move(nc);
  }
  return c[n];
}

Int graded_dimension(const Voa& v, int64_t n) {
  if (n < 0) return 0;
  int32_t d = static_cast<int32_t>(v.rank());
  Int total = colored_partition_count(d, n);
  if (n >= 1) {
    auto sv = short_vectors(v.lattice().gram(), Int(2 * n));
    for (const auto& s : sv) {
      Int norm = s.norm.get_num();
      int64_t leftover = n - Int(norm / 2).get_si();
      total += colored_partition_count(d, leftover);
    }
  }
  return total;
}

GradedZForm standard_form(const Voa& v, int64_t n) {
  return variant_form(v, n, BasisVariant::STANDARD_H);
}

GradedZForm variant_form(const Voa& v, int64_t n, BasisVariant variant) {
  DegreeFrame f = degree_frame(v, n);
  auto basis = degree_basis(v, n, variant);
  RatMatrix rows(basis.size(), f.keys.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto row = coordinatize(f, basis[i].element);
    rows.set_row(i, row);
  }
  return GradedZForm{n, ZModule::from_rows(rows)};
}

}  // namespace latvoa
