#include "latvoa/cvcc.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "latvoa/error.hpp"
#include "latvoa/hnf.hpp"
#include "latvoa/ints.hpp"
#include "latvoa/svp.hpp"
#include "latvoa/zmodule.hpp"

namespace latvoa {

namespace {

// c * alpha(-1)^2 added onto out as a charge-zero element.
void add_square(VoaElement* out, const LatticeVector& alpha, const Rat& c,
                std::size_t rank) {
  LatticeVector zero(rank, 0);
  for (std::size_t i = 0; i < rank; ++i) {
    if (alpha[i] == 0) continue;
    for (std::size_t j = 0; j < rank; ++j) {
      if (alpha[j] == 0) continue;
      FockMonomial m{{FockFactor{static_cast<int32_t>(i), 1},
                      FockFactor{static_cast<int32_t>(j), 1}}};
      m.normalize();
      out->add_term(VoaKey{std::move(m), zero},
                    c * Rat(alpha[i]) * Rat(alpha[j]));
    }
  }
}

}  // namespace

IsingVector cvcc_aa1(const Voa& v, const LatticeVector& alpha, int sign) {
  if (sign != 1 && sign != -1) throw invalid_input("sign must be +1 or -1");
  if (alpha.size() != v.rank())
    throw invalid_input("source vector size does not match the lattice");
  if (v.lattice().inner(alpha, alpha) != 4)
    throw invalid_input("source vector must have norm four");
  IsingVector iv;
  iv.type = IsingType::AA1;
  iv.alpha = alpha;
  add_square(&iv.e, alpha, Rat(1) / 16, v.rank());
  Rat quarter = Rat(sign) / 4;
  iv.e += quarter * VoaElement::charge_vector(alpha);
  iv.e += quarter * VoaElement::charge_vector(negate(alpha));
  return iv;
}

IsingVector cvcc_ee8(const Voa& v, const IntMatrix& embedding,
                     const std::vector<int>& phi) {
  std::size_t d = v.rank();
  if (embedding.rows() != 8 || embedding.cols() != d)
    throw invalid_input("embedding must give eight generator rows");
  if (phi.size() != 8) throw invalid_input("phi must give eight signs");
  for (int s : phi)
    if (s != 1 && s != -1) throw invalid_input("phi entries must be +1 or -1");
  IntMatrix ge = embedding * v.lattice().gram() * embedding.transpose();
  if (det(ge) != 256)
    throw invalid_input("embedding span must have determinant 2^8");
  MinNormResult mn = min_norm(ge, Int(4));
  if (!mn.found || mn.min != 4)
    throw invalid_input("embedding span must have minimum norm four");
  std::vector<ShortVector> sv = short_vectors(ge, Int(4));
  if (sv.size() != 240)
    throw invalid_input("embedding span must have 240 norm-four vectors");
  IsingVector iv;
  iv.type = IsingType::EE8;
  iv.embedding = embedding;
  iv.phi = phi;
  RatMatrix q = to_rational(embedding.transpose()) * inverse(to_rational(ge)) *
                to_rational(embedding);
  LatticeVector zero(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (q(i, j) == 0) continue;
      FockMonomial m{{FockFactor{static_cast<int32_t>(i), 1},
                      FockFactor{static_cast<int32_t>(j), 1}}};
      m.normalize();
      iv.e.add_term(VoaKey{std::move(m), zero}, q(i, j) / 32);
    }
  for (const auto& s : sv) {
    LatticeVector a(d, 0);
    int sgn = 1;
    for (std::size_t i = 0; i < 8; ++i) {
      if (s.coords[i] % 2 != 0) sgn *= phi[i];
      for (std::size_t k = 0; k < d; ++k)
        a[k] += s.coords[i] * embedding(i, k).get_si();
    }
    iv.e.add_term(VoaKey{FockMonomial::one(), std::move(a)}, Rat(sgn) / 32);
  }
  return iv;
}

IsingReport ising_check(const Voa& v, const VoaElement& e,
                        const IsingCheckOptions& opt) {
  IsingReport rep;
  auto fail = [&rep](std::string msg) {
    rep.failures.push_back(std::move(msg));
  };
  rep.modes_ok = true;
  if (!(vertex_mode(v, e, 1, e) == Rat(2) * e)) {
    rep.modes_ok = false;
    fail("mode 1: e_1 e != 2 e");
  }
  if (!vertex_mode(v, e, 2, e).is_zero()) {
    rep.modes_ok = false;
    fail("mode 2: e_2 e != 0");
  }
  if (!(vertex_mode(v, e, 3, e) ==
        (Rat(1) / 4) * VoaElement::vacuum(v.rank()))) {
    rep.modes_ok = false;
    fail("mode 3: e_3 e != (1/4) vac");
  }
  for (int64_t k = 4; k <= 6; ++k)
    if (!vertex_mode(v, e, k, e).is_zero()) {
      rep.modes_ok = false;
      fail("mode " + std::to_string(k) + ": e_k e != 0");
    }
  rep.bracket_ok = true;
  int64_t r = opt.mode_range;
  for (int64_t deg = 0; deg <= opt.bracket_degree; ++deg) {
    DegreeFrame f = degree_frame(v, deg);
    std::vector<std::size_t> idx(f.keys.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (opt.bracket_samples > 0 &&
        idx.size() > static_cast<std::size_t>(opt.bracket_samples)) {
      std::mt19937_64 rng(0x15C0DE + static_cast<uint64_t>(deg));
      for (std::size_t i = idx.size() - 1; i > 0; --i)
        std::swap(idx[i], idx[rng() % (i + 1)]);
      idx.resize(static_cast<std::size_t>(opt.bracket_samples));
    }
    for (std::size_t ii : idx) {
      VoaElement x;
      x.terms[f.keys[ii]] = 1;
      for (int64_t m = -r; m <= r; ++m)
        for (int64_t n = -r; n < m; ++n) {
          VoaElement lhs =
              vertex_mode(v, e, m + 1, vertex_mode(v, e, n + 1, x)) -
              vertex_mode(v, e, n + 1, vertex_mode(v, e, m + 1, x));
          VoaElement rhs = Rat(m - n) * vertex_mode(v, e, m + n + 1, x);
          if (m + n == 0) rhs += (Rat(m * m * m - m) / 24) * x;
          if (!(lhs == rhs)) {
            rep.bracket_ok = false;
            std::ostringstream os;
            os << "bracket fails at degree " << deg << ", m=" << m
               << ", n=" << n;
            fail(os.str());
          }
        }
    }
  }
  return rep;
}

namespace {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Frame key indices grouped into blocks of charges connected by the
// exponential terms of e; the weight-one mode of e preserves each block.
std::vector<std::vector<std::size_t>> charge_blocks(const DegreeFrame& f,
                                                    const VoaElement& e) {
  std::vector<LatticeVector> deltas;
  std::set<LatticeVector> seen;
  for (const auto& [key, c] : e.terms)
    if (!is_zero(key.charge) && seen.insert(key.charge).second)
      deltas.push_back(key.charge);
  std::map<LatticeVector, std::size_t> charge_index;
  for (std::size_t i = 0; i < f.charges.size(); ++i)
    charge_index[f.charges[i]] = i;
  DisjointSet ds(f.charges.size());
  for (std::size_t i = 0; i < f.charges.size(); ++i)
    for (const auto& dlt : deltas) {
      auto it = charge_index.find(add(f.charges[i], dlt));
      if (it != charge_index.end()) ds.unite(i, it->second);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < f.charges.size(); ++i)
    groups[ds.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [root, cs] : groups) {
    std::vector<std::size_t> keys;
    for (std::size_t ci : cs)
      for (std::size_t k = f.charge_ranges[ci].first;
           k < f.charge_ranges[ci].second; ++k)
        keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    blocks.push_back(std::move(keys));
  }
  return blocks;
}

// Basis rows of { x : x * m == 0 }, by full elimination on the transpose.
// Rational pivoting keeps entries reduced, where an integer Hermite pass
// could let intermediate values explode on large blocks.
RatMatrix rational_left_kernel(const RatMatrix& m) {
  std::size_t n = m.rows();
  RatMatrix a = m.transpose();
  std::vector<std::size_t> pivot_col;
  std::vector<char> is_pivot(n, 0);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < a.rows(); ++col) {
    std::size_t sel = a.rows();
    for (std::size_t i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == a.rows()) continue;
    a.swap_rows(sel, row);
    Rat inv = Rat(1) / a(row, col);
    for (std::size_t j = col; j < n; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rat f = a(i, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_col.push_back(col);
    is_pivot[col] = 1;
    ++row;
  }
  std::size_t rank = row;
  RatMatrix ker(n - rank, n);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    for (std::size_t i = 0; i < rank; ++i) ker(r, pivot_col[i]) = -a(i, col);
    ker(r, col) = 1;
    ++r;
  }
  return ker;
}

struct BlockEigen {
  RatMatrix mode_one;                             // local row action
  std::vector<std::pair<Rat, int64_t>> spectrum;  // eigenvalue, multiplicity
  RatMatrix involution;                           // local
  bool has_sixteenth = false;
};

BlockEigen block_eigen(const Voa& v, const VoaElement& e, const DegreeFrame& f,
                       const std::vector<std::size_t>& keys) {
  std::size_t dim = keys.size();
  std::map<VoaKey, std::size_t> local;
  for (std::size_t i = 0; i < dim; ++i) local[f.keys[keys[i]]] = i;
  BlockEigen be;
  be.mode_one = RatMatrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    VoaElement x;
    x.terms[f.keys[keys[i]]] = 1;
    VoaElement y = vertex_mode(v, e, 1, x);
    for (const auto& [key, c] : y.terms) {
      auto it = local.find(key);
      if (it == local.end())
        throw invariant_violation("weight-one mode escapes its charge block");
      be.mode_one(i, it->second) = c;
    }
  }
  std::vector<Rat> candidates;
  for (int64_t k = 0; k <= f.degree; ++k) {
    candidates.push_back(Rat(k));
    candidates.push_back(Rat(2 * k + 1) / 2);
    candidates.push_back(Rat(16 * k + 1) / 16);
  }
  RatMatrix b(dim, dim);
  std::vector<int> row_sign(dim, 1);
  std::size_t filled = 0;
  for (const auto& lam : candidates) {
    if (filled == dim) break;
    RatMatrix diff = be.mode_one;
    for (std::size_t i = 0; i < dim; ++i) diff(i, i) -= lam;
    RatMatrix ker = rational_left_kernel(diff);
    if (ker.rows() == 0) continue;
    bool sixteenth = lam.get_den() == 16;
    be.has_sixteenth = be.has_sixteenth || sixteenth;
    be.spectrum.emplace_back(lam, static_cast<int64_t>(ker.rows()));
    for (std::size_t r = 0; r < ker.rows(); ++r) {
      if (filled >= dim)
        throw invariant_violation("eigenspaces exceed the block dimension");
      for (std::size_t j = 0; j < dim; ++j) b(filled, j) = ker(r, j);
      row_sign[filled] = sixteenth ? -1 : 1;
      ++filled;
    }
  }
  if (filled != dim)
    throw invariant_violation(
        "weight-one mode spectrum escapes the admissible family");
  RatMatrix s(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) s(i, i) = Rat(row_sign[i]);
  be.involution = inverse(b) * s * b;
  return be;
}

}  // namespace

MiyamotoData miyamoto(const Voa& v, const VoaElement& e, int64_t degree) {
  if (degree < 0) throw invalid_input("degree must be nonnegative");
  Int wt;
  if (!v.homogeneous_weight(e, &wt) || wt != 2)
    throw invalid_input("candidate must be homogeneous of weight two");
  DegreeFrame f = degree_frame(v, degree);
  std::size_t dim = f.keys.size();
  MiyamotoData md;
  md.degree = degree;
  md.mode_one = RatMatrix(dim, dim);
  md.involution = RatMatrix(dim, dim);
  std::map<Rat, int64_t> spec;
  for (const auto& block : charge_blocks(f, e)) {
    BlockEigen be = block_eigen(v, e, f, block);
    for (const auto& [lam, mult] : be.spectrum) spec[lam] += mult;
    md.has_sixteenth = md.has_sixteenth || be.has_sixteenth;
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j) {
        md.mode_one(block[i], block[j]) = be.mode_one(i, j);
        md.involution(block[i], block[j]) = be.involution(i, j);
      }
  }
  md.spectrum.assign(spec.begin(), spec.end());
  return md;
}

VoaElement miyamoto_apply(const Voa& v, const VoaElement& e,
                          const VoaElement& x) {
  if (x.is_zero()) return x;
  Int wt;
  if (!v.homogeneous_weight(x, &wt))
    throw invalid_input("argument must be homogeneous");
  DegreeFrame f = degree_frame(v, wt.get_si());
  std::set<std::size_t> needed;
  for (const auto& [key, c] : x.terms) {
    auto it = f.index.find(key);
    if (it == f.index.end()) throw invalid_input("term outside the frame");
    needed.insert(it->second);
  }
  VoaElement out;
  for (const auto& block : charge_blocks(f, e)) {
    bool hit = false;
    for (std::size_t k : block)
      if (needed.count(k)) {
        hit = true;
        break;
      }
    if (!hit) continue;
    BlockEigen be = block_eigen(v, e, f, block);
    std::vector<Rat> loc(block.size(), Rat(0));
    for (std::size_t i = 0; i < block.size(); ++i) {
      auto it = x.terms.find(f.keys[block[i]]);
      if (it != x.terms.end()) loc[i] = it->second;
    }
    for (std::size_t j = 0; j < block.size(); ++j) {
      Rat c(0);
      for (std::size_t i = 0; i < block.size(); ++i)
        c += loc[i] * be.involution(i, j);
      if (c != 0) out.add_term(f.keys[block[j]], c);
    }
  }
  return out;
}

namespace {

// Canonical invariant-factor chain of a direct sum given by a factor list.
AbelianInvariants merge_invariants(std::vector<Int> factors) {
  factors.erase(std::remove_if(factors.begin(), factors.end(),
                               [](const Int& d) { return d == 1; }),
                factors.end());
  if (factors.empty()) return {};
  IntMatrix diag(factors.size(), factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) diag(i, i) = factors[i];
  SnfResult s = snf(diag);
  AbelianInvariants out;
  for (const auto& d : s.divisors)
    if (d != 1) out.push_back(d);
  return out;
}

struct BlockIndexData {
  bool span_preserved = false;
  std::vector<Int> form_factors;
  std::vector<Int> image_factors;
};

BlockIndexData image_index_data(const ZModule& rb, const RatMatrix& t) {
  BlockIndexData out;
  ZModule image = image_module(rb, t);
  out.span_preserved =
      image.rank() == rb.rank() && rb.rational_span_contains(image);
  ZModule meet = intersect(rb, image);
  for (const auto& d : quotient_invariants(meet, rb)) out.form_factors.push_back(d);
  for (const auto& d : quotient_invariants(meet, image))
    out.image_factors.push_back(d);
  return out;
}

}  // namespace

bool StabilizationReport::ok() const {
  if (degrees.empty()) return false;
  for (const auto& d : degrees)
    if (!d.span_preserved) return false;
  return true;
}

StabilizationReport stabilization_check(const Voa& v, const VoaElement& e,
                                        const std::vector<GradedZForm>& r,
                                        int64_t max_degree) {
  Int wt;
  if (!v.homogeneous_weight(e, &wt) || wt != 2)
    throw invalid_input("candidate must be homogeneous of weight two");
  for (const auto& gf : r)
    if (gf.degree == 2 && gf.degree <= max_degree) {
      DegreeFrame f2 = degree_frame(v, 2);
      if (!gf.module.rational_coordinates(coordinatize(f2, e)))
        throw invalid_input("candidate outside the rational span of the form");
    }
  StabilizationReport rep;
  for (const auto& gf : r) {
    if (gf.degree > max_degree) continue;
    DegreeFrame f = degree_frame(v, gf.degree);
    if (gf.module.ambient_dim() != f.keys.size())
      throw invalid_input("form module does not match the degree frame");
    StabilizationDegree sd;
    sd.degree = gf.degree;
    auto blocks = charge_blocks(f, e);
    std::vector<std::size_t> block_of(f.keys.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (std::size_t k : blocks[b]) block_of[k] = b;
    // Assign each basis row to the single block carrying its support; a row
    // straddling blocks forces the dense path.
    RatMatrix rows = gf.module.basis_rows();
    std::vector<std::vector<std::size_t>> rows_of_block(blocks.size());
    bool blockwise = true;
    for (std::size_t i = 0; i < rows.rows() && blockwise; ++i) {
      std::size_t home = blocks.size();
      for (std::size_t j = 0; j < rows.cols(); ++j) {
        if (rows(i, j) == 0) continue;
        if (home == blocks.size()) {
          home = block_of[j];
        } else if (home != block_of[j]) {
          blockwise = false;
          break;
        }
      }
      if (home < blocks.size()) rows_of_block[home].push_back(i);
    }
    sd.span_preserved = true;
    std::vector<Int> form_factors, image_factors;
    if (blockwise) {
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (rows_of_block[b].empty()) continue;
        RatMatrix local(rows_of_block[b].size(), blocks[b].size());
        for (std::size_t i = 0; i < rows_of_block[b].size(); ++i)
          for (std::size_t j = 0; j < blocks[b].size(); ++j)
            local(i, j) = rows(rows_of_block[b][i], blocks[b][j]);
        BlockEigen be = block_eigen(v, e, f, blocks[b]);
        BlockIndexData bd =
            image_index_data(ZModule::from_rows(local), be.involution);
        sd.span_preserved = sd.span_preserved && bd.span_preserved;
        form_factors.insert(form_factors.end(), bd.form_factors.begin(),
                            bd.form_factors.end());
        image_factors.insert(image_factors.end(), bd.image_factors.begin(),
                             bd.image_factors.end());
      }
    } else {
      MiyamotoData md = miyamoto(v, e, gf.degree);
      BlockIndexData bd = image_index_data(gf.module, md.involution);
      sd.span_preserved = bd.span_preserved;
      form_factors = bd.form_factors;
      image_factors = bd.image_factors;
    }
    sd.form_over_meet = merge_invariants(std::move(form_factors));
    sd.image_over_meet = merge_invariants(std::move(image_factors));
    rep.degrees.push_back(std::move(sd));
  }
  return rep;
}

}  // namespace latvoa
