#include "latvoa/symmetry.hpp"

#include <algorithm>

#include "latvoa/error.hpp"

namespace latvoa {

namespace {

void check_signs(const std::vector<int>& signs, std::size_t d) {
  if (signs.size() != d) throw invalid_input("lift signs: size mismatch");
  for (int s : signs)
    if (s != 1 && s != -1) throw invalid_input("lift signs must be +1 or -1");
}

LatticeVector basis_vector(std::size_t d, std::size_t i) {
  LatticeVector e(d, 0);
  e[i] = 1;
  return e;
}

bool odd(int64_t x) { return (x % 2) != 0; }

// mu(gamma_j, gamma_i) = eps(sigma gamma_j, sigma gamma_i) eps(gamma_j,
// gamma_i): the symmetric obstruction table for the sign extension.
std::vector<std::vector<int>> mu_table(const Voa& v, const LiftedIsometry& g) {
  std::size_t d = v.rank();
  std::vector<LatticeVector> img(d);
  for (std::size_t i = 0; i < d; ++i)
    img[i] = isometry_image(g, basis_vector(d, i));
  const Cocycle& eps = v.cocycle();
  std::vector<std::vector<int>> mu(d, std::vector<int>(d, 1));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i)
      mu[j][i] = eps.sign(img[j], img[i]) *
                 eps.sign(basis_vector(d, j), basis_vector(d, i));
  return mu;
}

int lift_sign_with(const LiftedIsometry& g,
                   const std::vector<std::vector<int>>& mu,
                   const LatticeVector& a) {
  int s = 1;
  std::size_t d = a.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (odd(a[i]) && g.signs[i] < 0) s = -s;
    if (odd(a[i] * (a[i] - 1) / 2) && mu[i][i] < 0) s = -s;
    for (std::size_t j = 0; j < i; ++j)
      if (odd(a[j] * a[i]) && mu[j][i] < 0) s = -s;
  }
  return s;
}

}  // namespace

LiftedIsometry theta(const Voa& v) {
  std::size_t d = v.rank();
  IntMatrix sigma(d, d);
  for (std::size_t i = 0; i < d; ++i) sigma(i, i) = -1;
  return LiftedIsometry{std::move(sigma), std::vector<int>(d, 1)};
}

LiftedIsometry lift_identity(const Voa& v) {
  return LiftedIsometry{IntMatrix::identity(v.rank()),
                        std::vector<int>(v.rank(), 1)};
}

LiftedIsometry lift_isometry(const Voa& v, IntMatrix sigma,
                             std::vector<int> signs) {
  std::size_t d = v.rank();
  if (sigma.rows() != d || sigma.cols() != d)
    throw invalid_input("lift_isometry: matrix shape mismatch");
  check_signs(signs, d);
  const IntMatrix& gram = v.lattice().gram();
  if (sigma.transpose() * gram * sigma != gram)
    throw invalid_input("lift_isometry: not an isometry of the lattice");
  return LiftedIsometry{std::move(sigma), std::move(signs)};
}

LatticeVector isometry_image(const LiftedIsometry& g, const LatticeVector& a) {
  std::size_t d = a.size();
  LatticeVector out(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    int64_t x = 0;
    for (std::size_t i = 0; i < d; ++i)
      x += g.sigma(j, i).get_si() * a[i];
    out[j] = x;
  }
  return out;
}

int lift_sign(const Voa& v, const LiftedIsometry& g,
              const LatticeVector& alpha) {
  return lift_sign_with(g, mu_table(v, g), alpha);
}

VoaElement apply_isometry(const Voa& v, const LiftedIsometry& g,
                          const VoaElement& u) {
  auto mu = mu_table(v, g);
  VoaElement out;
  for (const auto& [key, c] : u.terms) {
    FockPolynomial p = fock_apply_linear(key.mono, g.sigma);
    LatticeVector img = isometry_image(g, key.charge);
    Rat cc = c * Rat(lift_sign_with(g, mu, key.charge));
    for (const auto& [m, pc] : p.terms)
      out.add_term(VoaKey{m, img}, cc * pc);
  }
  return out;
}

LiftedIsometry compose(const Voa& v, const LiftedIsometry& g,
                       const LiftedIsometry& h) {
  std::size_t d = v.rank();
  auto mu_g = mu_table(v, g);
  LiftedIsometry out;
  out.sigma = g.sigma * h.sigma;
  out.signs.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    LatticeVector hi = isometry_image(h, basis_vector(d, i));
    out.signs[i] = h.signs[i] * lift_sign_with(g, mu_g, hi);
  }
  return out;
}

LiftedIsometry inverse_isometry(const Voa& v, const LiftedIsometry& g) {
  std::size_t d = v.rank();
  RatMatrix inv = inverse(to_rational(g.sigma));
  IntMatrix si(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (inv(i, j).get_den() != 1)
        throw invalid_input("isometry inverse is not integral");
      si(i, j) = inv(i, j).get_num();
    }
  LiftedIsometry out{std::move(si), std::vector<int>(d, 1)};
  auto mu_g = mu_table(v, g);
  for (std::size_t i = 0; i < d; ++i)
    out.signs[i] =
        lift_sign_with(g, mu_g, isometry_image(out, basis_vector(d, i)));
  return out;
}

bool same_isometry(const LiftedIsometry& a, const LiftedIsometry& b) {
  return a.sigma == b.sigma && a.signs == b.signs;
}

std::vector<LiftedIsometry> isometry_group(
    const Voa& v, const std::vector<LiftedIsometry>& gens,
    std::size_t max_size) {
  std::vector<LiftedIsometry> elems{lift_identity(v)};
  auto known = [&](const LiftedIsometry& g) {
    for (const auto& e : elems)
      if (same_isometry(e, g)) return true;
    return false;
  };
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      LiftedIsometry next = compose(v, g, elems[head]);
      if (!known(next)) {
        if (elems.size() >= max_size)
          throw invalid_input("isometry group exceeds the size bound");
        elems.push_back(std::move(next));
      }
    }
  }
  return elems;
}

RatMatrix isometry_matrix(const Voa& v, const LiftedIsometry& g,
                          const DegreeFrame& f) {
  RatMatrix m(f.keys.size(), f.keys.size());
  for (std::size_t i = 0; i < f.keys.size(); ++i) {
    VoaElement x;
    x.terms[f.keys[i]] = 1;
    m.set_row(i, coordinatize(f, apply_isometry(v, g, x)));
  }
  return m;
}

std::vector<GradedZForm> fixed_form(const Voa& v,
                                    const std::vector<GradedZForm>& r,
                                    const std::vector<LiftedIsometry>& gs) {
  std::vector<GradedZForm> out;
  out.reserve(r.size());
  for (const auto& piece : r) {
    DegreeFrame f = degree_frame(v, piece.degree);
    std::vector<RatMatrix> actions;
    actions.reserve(gs.size());
    for (const auto& g : gs) actions.push_back(isometry_matrix(v, g, f));
    out.push_back(GradedZForm{piece.degree,
                              fixed_submodule(piece.module, actions)});
  }
  return out;
}

GradedZForm intersect_forms(const std::vector<GradedZForm>& forms) {
  if (forms.empty()) throw invalid_input("intersect_forms: empty input");
  GradedZForm out = forms[0];
  for (std::size_t i = 1; i < forms.size(); ++i) {
    if (forms[i].degree != out.degree ||
        forms[i].module.ambient_dim() != out.module.ambient_dim())
      throw invalid_input("intersect_forms: ambient mismatch");
    out.module = intersect(out.module, forms[i].module);
  }
  return out;
}

GradedZForm sum_forms(const std::vector<GradedZForm>& forms) {
  if (forms.empty()) throw invalid_input("sum_forms: empty input");
  GradedZForm out = forms[0];
  for (std::size_t i = 1; i < forms.size(); ++i) {
    if (forms[i].degree != out.degree ||
        forms[i].module.ambient_dim() != out.module.ambient_dim())
      throw invalid_input("sum_forms: ambient mismatch");
    out.module = sum(out.module, forms[i].module);
  }
  return out;
}

std::vector<GradedZForm> module_product_span(const Voa& v,
                                             const std::vector<GradedZForm>& x,
                                             const std::vector<GradedZForm>& y,
                                             int64_t max_degree) {
  if (max_degree < 0) throw invalid_input("negative degree bound");
  std::vector<DegreeFrame> frames;
  std::vector<RatMatrix> rows(static_cast<std::size_t>(max_degree) + 1);
  for (int64_t n = 0; n <= max_degree; ++n) {
    frames.push_back(degree_frame(v, n));
    rows[n] = RatMatrix(0, frames.back().keys.size());
  }
  for (const auto& xg : x) {
    DegreeFrame fx = degree_frame(v, xg.degree);
    RatMatrix bx = xg.module.basis_rows();
    for (const auto& yg : y) {
      DegreeFrame fy = degree_frame(v, yg.degree);
      RatMatrix by = yg.module.basis_rows();
      for (std::size_t i = 0; i < bx.rows(); ++i) {
        VoaElement xe = element_from_coords(fx, bx.row(i));
        for (std::size_t j = 0; j < by.rows(); ++j) {
          VoaElement ye = element_from_coords(fy, by.row(j));
          for (int64_t t = 0; t <= max_degree; ++t) {
            int64_t k = xg.degree + yg.degree - 1 - t;
            VoaElement prod = vertex_mode(v, xe, k, ye);
            if (prod.is_zero()) continue;
            rows[t].append_row(coordinatize(frames[t], prod));
          }
        }
      }
    }
  }
  std::vector<GradedZForm> out;
  for (int64_t n = 0; n <= max_degree; ++n)
    out.push_back(GradedZForm{n, ZModule::from_rows(rows[n])});
  return out;
}

std::vector<GradedZForm> tensor_form(const std::vector<GradedZForm>& a,
                                     const std::vector<GradedZForm>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].degree != static_cast<int64_t>(i))
      throw invalid_input("tensor_form: degrees must be 0..n in order");
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j].degree != static_cast<int64_t>(j))
      throw invalid_input("tensor_form: degrees must be 0..n in order");
  if (a.empty() || b.empty()) return {};
  std::size_t nmax = a.size() + b.size() - 2;
  std::vector<GradedZForm> out;
  for (std::size_t n = 0; n <= nmax; ++n) {
    std::size_t ambient = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (n < i || n - i >= b.size()) continue;
      ambient += a[i].module.ambient_dim() * b[n - i].module.ambient_dim();
    }
    RatMatrix rows(0, ambient);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (n < i || n - i >= b.size()) continue;
      const ZModule& ma = a[i].module;
      const ZModule& mb = b[n - i].module;
      RatMatrix ra = ma.basis_rows(), rb = mb.basis_rows();
      for (std::size_t p = 0; p < ra.rows(); ++p) {
        for (std::size_t q = 0; q < rb.rows(); ++q) {
          std::vector<Rat> row(ambient, Rat(0));
          for (std::size_t s = 0; s < ma.ambient_dim(); ++s)
            for (std::size_t u = 0; u < mb.ambient_dim(); ++u)
              row[offset + s * mb.ambient_dim() + u] = ra(p, s) * rb(q, u);
          rows.append_row(row);
        }
      }
      offset += ma.ambient_dim() * mb.ambient_dim();
    }
    out.push_back(GradedZForm{static_cast<int64_t>(n),
                              ZModule::from_rows(rows)});
  }
  return out;
}

RatMatrix tensor_swap(const std::vector<GradedZForm>& a, int64_t degree) {
  if (degree < 0) throw invalid_input("tensor_swap: negative degree");
  const std::size_t n = static_cast<std::size_t>(degree);
  std::vector<std::size_t> dim(n + 1, 0), off(n + 2, 0);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i < a.size() && n - i < a.size())
      dim[i] = a[i].module.ambient_dim();
    off[i + 1] = off[i] + (i < a.size() && n - i < a.size()
                               ? dim[i] * a[n - i].module.ambient_dim()
                               : 0);
  }
  RatMatrix m(off[n + 1], off[n + 1]);
  for (std::size_t i = 0; i <= n; ++i) {
    if (!(i < a.size() && n - i < a.size())) continue;
    const std::size_t d1 = dim[i], d2 = dim[n - i];
    for (std::size_t p = 0; p < d1; ++p)
      for (std::size_t q = 0; q < d2; ++q)
        m(off[i] + p * d2 + q, off[n - i] + q * d1 + p) = Rat(1);
  }
  return m;
}

CharacterSplit eigen_split(const ZModule& a, const std::vector<RatMatrix>& t) {
  std::size_t amb = a.ambient_dim();
  for (const auto& m : t) {
    if (m.rows() != amb || m.cols() != amb)
      throw invalid_input("eigen_split: action shape mismatch");
    if (m * m != RatMatrix::identity(amb))
      throw invalid_input("eigen_split: action is not an involution");
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] * t[j] != t[j] * t[i])
        throw invalid_input("eigen_split: actions do not commute");

  CharacterSplit out;
  std::size_t k = t.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    std::vector<int> signs(k);
    for (std::size_t j = 0; j < k; ++j)
      signs[j] = (mask & (std::size_t(1) << j)) ? -1 : 1;
    out.characters.push_back(signs);
    out.eigenmodules.push_back(eigen_submodule(a, t, signs));
  }
  ZModule tel = ZModule::zero(amb);
  for (const auto& m : out.eigenmodules) tel = sum(tel, m);
  out.quotient = quotient_invariants(tel, a);
  if (k == 1) {
    IntMatrix restricted = restrict_action(a, t[0]);
    for (std::size_t i = 0; i < restricted.rows(); ++i)
      restricted(i, i) -= 1;
    out.jordan_rank = static_cast<int64_t>(f2_rank(restricted));
  }
  return out;
}

std::size_t f2_rank(const IntMatrix& m) {
  std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(m.rows(),
                                          std::vector<uint64_t>(words, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (mpz_odd_p(m(i, j).get_mpz_t())) rows[i][j / 64] |= uint64_t(1)
                                                             << (j % 64);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t w = col / 64;
    uint64_t bit = uint64_t(1) << (col % 64);
    std::size_t pivot = rank;
    while (pivot < m.rows() && !(rows[pivot][w] & bit)) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || !(rows[i][w] & bit)) continue;
      for (std::size_t x = 0; x < words; ++x) rows[i][x] ^= rows[rank][x];
    }
    ++rank;
  }
  return rank;
}

}  // namespace latvoa
