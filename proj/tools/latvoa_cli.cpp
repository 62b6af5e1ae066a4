// Batch command-line surface for the exact lattice vertex algebra library:
// basis and Gram reports, structure audits, duality and closure checks, form
// surgery under lifted isometry groups, tensor and eigen splits, conformal
// vector verification, and machine-readable output.
//
// Exit codes: 0 success, 1 invalid input, 2 a library-level invariant failed.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latvoa/audit.hpp"
#include "latvoa/cvcc.hpp"
#include "latvoa/error.hpp"
#include "latvoa/svp.hpp"
#include "latvoa/symmetry.hpp"

using namespace latvoa;
using nlohmann::json;

namespace {

int exit_code = 0;  // raised to 2 by failed invariant checks

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string parity_str(bool odd, const Int& scale) {
  if (scale != 1) return "n/a";
  return odd ? "odd" : "even";
}

std::string invariants_str(const AbelianInvariants& inv) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (i) os << ",";
    os << inv[i];
  }
  os << "]";
  return os.str();
}

Int invariants_index(const AbelianInvariants& inv) {
  Int p(1);
  for (const auto& d : inv) p *= d;
  return p;
}

json json_invariants(const AbelianInvariants& inv) {
  json a = json::array();
  for (const auto& d : inv) a.push_back(d.get_str());
  return a;
}

json json_matrix(const RatMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(rat_str(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

json json_charge(const LatticeVector& a) {
  json r = json::array();
  for (auto x : a) r.push_back(x);
  return r;
}

void print_matrix(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) std::cout << " ";
      std::cout << rat_str(m(i, j));
    }
    std::cout << "\n";
  }
}

bool integral_entries(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

json base_doc(const std::string& command) {
  return json{{"schema_version", 1},
              {"command", command},
              {"inputs", json::object()},
              {"per_degree", json::array()}};
}

void emit(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open json output file: " + path);
  out << doc.dump(2) << "\n";
}

const char* form_name(PairKind k) {
  return k == PairKind::HERMITIAN ? "hermitian" : "bilinear";
}

const char* variant_name(BasisVariant v) {
  switch (v) {
    case BasisVariant::STANDARD_H: return "standard";
    case BasisVariant::SCHUR_PRIMAL: return "schur";
    case BasisVariant::SCHUR_DUAL_HERMITIAN: return "dual-hermitian";
    case BasisVariant::SCHUR_DUAL_BILINEAR: return "dual-bilinear";
  }
  return "?";
}

Voa make_voa(const std::string& name) {
  return Voa(resolve_lattice(LatticeSpec{name}));
}

std::vector<GradedZForm> standard_grades(const Voa& v, int64_t max_degree) {
  std::vector<GradedZForm> out;
  for (int64_t n = 0; n <= max_degree; ++n)
    out.push_back(standard_form(v, n));
  return out;
}

// Block label for minimum-norm requests: J is the zero-charge block, Q<m>
// the blocks of charge norm m.
Int parse_block_label(const std::string& s) {
  if (s == "J") return Int(0);
  if (s.size() > 1 && s[0] == 'Q') {
    try {
      return Int(std::stol(s.substr(1)));
    } catch (const std::exception&) {
    }
  }
  throw invalid_input("unknown block label '" + s + "' (use J or Q<norm>)");
}

IntMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read matrix file: " + path);
  std::size_t r = 0, c = 0;
  if (!(in >> r >> c) || r == 0 || c == 0)
    throw invalid_input("matrix file: first line must be 'rows cols'");
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      long x;
      if (!(in >> x)) throw invalid_input("matrix file: entries missing");
      m(i, j) = x;
    }
  return m;
}

// Isometry file: rank, then the rank x rank lattice map by rows (columns are
// the images of the basis vectors), then one row of +-1 signs.
LiftedIsometry load_isometry_file(const Voa& v, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read isometry file: " + path);
  std::size_t d = 0;
  if (!(in >> d) || d != v.rank())
    throw invalid_input("isometry file: first line must be the lattice rank");
  IntMatrix sigma(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long x;
      if (!(in >> x)) throw invalid_input("isometry file: matrix entries missing");
      sigma(i, j) = x;
    }
  std::vector<int> signs(d);
  for (std::size_t i = 0; i < d; ++i) {
    int s;
    if (!(in >> s)) throw invalid_input("isometry file: sign row missing");
    signs[i] = s;
  }
  return lift_isometry(v, std::move(sigma), std::move(signs));
}

LiftedIsometry load_gen(const Voa& v, const std::string& spec) {
  if (spec == "theta") return theta(v);
  if (spec == "identity") return lift_identity(v);
  if (!spec.empty() && spec[0] == '@')
    return load_isometry_file(v, spec.substr(1));
  throw invalid_input("generator spec must be theta, identity, or @file");
}

void print_degree_audit(const DegreeAudit& da) {
  std::cout << "degree " << da.degree << ": rank " << da.rank << ", det "
            << rat_str(da.det) << ", parity "
            << parity_str(da.odd, da.denominator_scale) << ", d("
            << da.degree << ") = " << da.denominator_scale << ", invariants "
            << invariants_str(da.invariants) << "\n";
  for (const SectorClass& c : da.classes) {
    std::cout << "  charge norm " << c.charge_norm << ": " << c.sectors
              << " sector(s) of rank " << c.sector_rank << ", uniform "
              << yn(c.uniform) << ", det " << rat_str(c.det) << ", parity "
              << (c.odd ? "odd" : "even") << "\n";
  }
  if (da.min_norm_value)
    std::cout << "  minimum norm: " << rat_str(*da.min_norm_value) << " ("
              << *da.min_norm_count << " vectors)\n";
}

json degree_audit_json(const DegreeAudit& da) {
  json classes = json::array();
  for (const SectorClass& c : da.classes)
    classes.push_back({{"charge_norm", c.charge_norm.get_str()},
                       {"sectors", c.sectors},
                       {"sector_rank", c.sector_rank},
                       {"uniform", c.uniform},
                       {"det", rat_str(c.det)},
                       {"odd", c.odd}});
  json entry{{"degree", da.degree},
             {"rank", da.rank},
             {"det", rat_str(da.det)},
             {"odd", da.odd},
             {"denominator_scale", da.denominator_scale.get_str()},
             {"invariants", json_invariants(da.invariants)},
             {"classes", classes}};
  if (da.min_norm_value) {
    entry["min_norm"] = rat_str(*da.min_norm_value);
    entry["min_norm_count"] = *da.min_norm_count;
  }
  return entry;
}

void print_zero_split(const WeightTwoZeroSplit& z) {
  std::cout << "  zero-charge block: rank " << z.rank << ", det "
            << rat_str(z.det) << ", parity " << (z.odd ? "odd" : "even")
            << "\n"
            << "    two-factor intersection: rank " << z.pair_rank << ", det "
            << rat_str(z.pair_det) << "\n"
            << "    one-factor intersection: rank " << z.single_rank
            << ", det " << rat_str(z.single_det) << "\n"
            << "    glue quotient " << invariants_str(z.glue) << ", index "
            << invariants_index(z.glue) << ", split det "
            << rat_str(z.pair_det * z.single_det) << "\n"
            << "    minimum norm: " << rat_str(z.min) << " (" << z.min_count
            << " vectors)\n";
}

json zero_split_json(const WeightTwoZeroSplit& z) {
  return json{{"rank", z.rank},
              {"det", rat_str(z.det)},
              {"odd", z.odd},
              {"pair_rank", z.pair_rank},
              {"pair_det", rat_str(z.pair_det)},
              {"single_rank", z.single_rank},
              {"single_det", rat_str(z.single_det)},
              {"glue", json_invariants(z.glue)},
              {"glue_index", invariants_index(z.glue).get_str()},
              {"min_norm", rat_str(z.min)},
              {"min_norm_count", z.min_count}};
}

// ---- basis ----

struct BasisOpts {
  std::string lattice, json_path;
  int64_t degree = 0;
  bool count_only = false;
  BasisVariant variant = BasisVariant::STANDARD_H;
};
BasisOpts basis_opts;

void run_basis() {
  const BasisOpts& o = basis_opts;
  Voa v = make_voa(o.lattice);
  json doc = base_doc("basis");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"degree", o.degree},
                   {"count_only", o.count_only},
                   {"variant", variant_name(o.variant)}};
  if (o.count_only) {
    Int n = graded_dimension(v, o.degree);
    std::cout << n << "\n";
    doc["per_degree"].push_back({{"degree", o.degree}, {"count", n.get_str()}});
  } else {
    std::vector<BasisElement> basis = degree_basis(v, o.degree, o.variant);
    json elems = json::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::cout << i << "  " << basis[i].desc << "\n";
      elems.push_back({{"index", i},
                       {"desc", basis[i].desc},
                       {"charge", json_charge(basis[i].charge)}});
    }
    std::cout << "count " << basis.size() << "\n";
    doc["per_degree"].push_back({{"degree", o.degree},
                                 {"count", std::to_string(basis.size())},
                                 {"elements", elems}});
  }
  emit(o.json_path, doc);
}

// ---- gram ----

struct GramOpts {
  std::string lattice, json_path;
  int64_t degree = 1;
  PairKind kind = PairKind::HERMITIAN;
  BasisVariant variant = BasisVariant::STANDARD_H;
  int threads = 1;
};
GramOpts gram_opts;

void run_gram() {
  const GramOpts& o = gram_opts;
  Voa v = make_voa(o.lattice);
  std::vector<BasisElement> basis = degree_basis(v, o.degree, o.variant);
  RatMatrix g = graded_gram(v, basis, o.kind, o.threads);
  print_matrix(g);
  json doc = base_doc("gram");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"degree", o.degree},
                   {"form", form_name(o.kind)},
                   {"variant", variant_name(o.variant)}};
  doc["per_degree"].push_back({{"degree", o.degree},
                               {"rank", g.rows()},
                               {"entries", json_matrix(g)}});
  emit(o.json_path, doc);
}

// ---- audit ----

struct AuditOpts {
  std::string lattice, json_path, min_block;
  std::vector<int64_t> degrees;
  PairKind kind = PairKind::HERMITIAN;
  int threads = 1;
};
AuditOpts audit_opts;

void run_audit() {
  const AuditOpts& o = audit_opts;
  Voa v = make_voa(o.lattice);
  json doc = base_doc("audit");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"degrees", o.degrees},
                   {"form", form_name(o.kind)},
                   {"min_norm_block", o.min_block}};
  for (int64_t n : o.degrees) {
    Int cls(-1);
    bool want_split = false;
    if (!o.min_block.empty()) {
      Int m = parse_block_label(o.min_block);
      if (m == 0 && n == 2)
        want_split = true;  // the split reports the minimum norm itself
      else
        cls = m;
    }
    DegreeAudit da = audit_degree(v, n, o.kind, cls, o.threads);
    print_degree_audit(da);
    json entry = degree_audit_json(da);
    if (want_split) {
      WeightTwoZeroSplit z = weight_two_zero_split(v, o.kind);
      print_zero_split(z);
      entry["zero_split"] = zero_split_json(z);
    }
    doc["per_degree"].push_back(std::move(entry));
  }
  emit(o.json_path, doc);
}

// ---- dual-check ----

struct DualOpts {
  std::string lattice, json_path;
  int64_t max_degree = 3;
  PairKind kind = PairKind::HERMITIAN;
  int threads = 1;
};
DualOpts dual_opts;

void run_dual_check() {
  const DualOpts& o = dual_opts;
  Voa v = make_voa(o.lattice);
  BasisVariant dv = o.kind == PairKind::HERMITIAN
                        ? BasisVariant::SCHUR_DUAL_HERMITIAN
                        : BasisVariant::SCHUR_DUAL_BILINEAR;
  json doc = base_doc("dual-check");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"max_degree", o.max_degree},
                   {"form", form_name(o.kind)}};
  bool all_ok = true;
  for (int64_t n = 0; n <= o.max_degree; ++n) {
    std::vector<BasisElement> primal =
        degree_basis(v, n, BasisVariant::SCHUR_PRIMAL);
    std::vector<BasisElement> dual = degree_basis(v, n, dv);
    RatMatrix g = graded_gram(v, primal, dual, o.kind, o.threads);
    bool id_ok = g == RatMatrix::identity(g.rows());
    GradedZForm r = standard_form(v, n);
    GradedZForm u = variant_form(v, n, dv);
    bool contained = u.module.contains(r.module);
    AbelianInvariants inv;
    if (contained && u.module.rank() == r.module.rank())
      inv = quotient_invariants(r.module, u.module);
    std::cout << "degree " << n << ": dual pairing identity: " << yn(id_ok)
              << ", dual span contains standard: " << yn(contained)
              << ", quotient invariants " << invariants_str(inv) << "\n";
    all_ok = all_ok && id_ok && contained;
    doc["per_degree"].push_back({{"degree", n},
                                 {"pairing_identity", id_ok},
                                 {"contains_standard", contained},
                                 {"quotient_invariants", json_invariants(inv)}});
  }
  std::cout << "dual check: " << (all_ok ? "pass" : "FAIL") << "\n";
  doc["pass"] = all_ok;
  if (!all_ok) exit_code = 2;
  emit(o.json_path, doc);
}

// ---- product ----

struct ProductOpts {
  std::string lattice, json_path;
  int64_t left_degree = 1, left_index = 0;
  int64_t right_degree = 1, right_index = 0;
  int64_t k = 0;
  BasisVariant variant = BasisVariant::STANDARD_H;
};
ProductOpts product_opts;

void run_product() {
  const ProductOpts& o = product_opts;
  Voa v = make_voa(o.lattice);
  std::vector<BasisElement> lb = degree_basis(v, o.left_degree, o.variant);
  std::vector<BasisElement> rb = degree_basis(v, o.right_degree, o.variant);
  if (o.left_index < 0 || static_cast<std::size_t>(o.left_index) >= lb.size())
    throw invalid_input("product: left index out of range");
  if (o.right_index < 0 ||
      static_cast<std::size_t>(o.right_index) >= rb.size())
    throw invalid_input("product: right index out of range");
  const BasisElement& l = lb[o.left_index];
  const BasisElement& r = rb[o.right_index];
  VoaElement p = vertex_mode(v, l.element, o.k, r.element);
  int64_t wt = o.left_degree + o.right_degree - o.k - 1;
  std::cout << "left  " << l.desc << "\n"
            << "right " << r.desc << "\n"
            << "product (k = " << o.k << ", weight " << wt
            << "): " << p.str() << "\n";

  bool integral = true;
  if (!p.is_zero()) {
    DegreeFrame f = degree_frame(v, wt);
    GradedZForm s = standard_form(v, wt);
    integral = s.module.coordinates(coordinatize(f, p)).has_value();
  }
  std::cout << "integral coordinates in the standard span: " << yn(integral)
            << "\n";
  if (o.variant == BasisVariant::STANDARD_H && !integral) exit_code = 2;

  json doc = base_doc("product");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"left_degree", o.left_degree},
                   {"left_index", o.left_index},
                   {"right_degree", o.right_degree},
                   {"right_index", o.right_index},
                   {"k", o.k},
                   {"variant", variant_name(o.variant)}};
  json terms = json::array();
  for (const auto& [key, c] : p.terms)
    terms.push_back({{"mono", key.mono.str()},
                     {"charge", json_charge(key.charge)},
                     {"coeff", rat_str(c)}});
  doc["per_degree"].push_back({{"degree", wt},
                               {"terms", terms},
                               {"integral", integral}});
  emit(o.json_path, doc);
}

// ---- generate ----

struct GenerateOpts {
  std::string lattice, json_path;
  int64_t max_degree = 3;
};
GenerateOpts generate_opts;

void run_generate() {
  const GenerateOpts& o = generate_opts;
  Voa v = make_voa(o.lattice);
  std::vector<VoaElement> gens;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    LatticeVector a(v.rank(), 0);
    a[i] = 1;
    gens.push_back(VoaElement::charge_vector(a));
    a[i] = -1;
    gens.push_back(VoaElement::charge_vector(a));
  }
  std::vector<GradedZForm> gf = generated_form(v, gens, o.max_degree);
  json doc = base_doc("generate");
  doc["inputs"] = {{"lattice", o.lattice}, {"max_degree", o.max_degree}};
  bool all_ok = true;
  for (int64_t n = 0; n <= o.max_degree; ++n) {
    GradedZForm s = standard_form(v, n);
    bool eq = gf[n].module == s.module;
    std::cout << "degree " << n << ": rank " << gf[n].module.rank()
              << ", equals standard span: " << yn(eq) << "\n";
    all_ok = all_ok && eq;
    doc["per_degree"].push_back({{"degree", n},
                                 {"rank", gf[n].module.rank()},
                                 {"equals_standard", eq}});
  }
  std::cout << "generated span: " << (all_ok ? "pass" : "FAIL") << "\n";
  doc["pass"] = all_ok;
  if (!all_ok) exit_code = 2;
  emit(o.json_path, doc);
}

// ---- intersect / sum / fix ----

struct SurgeryOpts {
  std::string lattice, json_path;
  std::vector<std::string> gens;
  int64_t max_degree = 3;
};
SurgeryOpts intersect_opts, sum_opts, fix_opts;

std::vector<LiftedIsometry> surgery_group(const Voa& v,
                                          const std::vector<std::string>& specs) {
  std::vector<LiftedIsometry> gens;
  for (const std::string& s : specs) gens.push_back(load_gen(v, s));
  return isometry_group(v, gens);
}

void run_surgery(const SurgeryOpts& o, bool meet) {
  Voa v = make_voa(o.lattice);
  std::vector<LiftedIsometry> group = surgery_group(v, o.gens);
  std::cout << "group order " << group.size() << "\n";
  json doc = base_doc(meet ? "intersect" : "sum");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"max_degree", o.max_degree},
                   {"generators", o.gens},
                   {"group_order", group.size()}};
  bool invariant_ok = true;
  for (int64_t n = 0; n <= o.max_degree; ++n) {
    GradedZForm r = standard_form(v, n);
    DegreeFrame f = degree_frame(v, n);
    std::vector<RatMatrix> mats;
    mats.reserve(group.size());
    for (const LiftedIsometry& g : group)
      mats.push_back(isometry_matrix(v, g, f));
    ZModule result = r.module;
    for (const RatMatrix& m : mats) {
      ZModule img = image_module(r.module, m);
      result = meet ? intersect(result, img) : sum(result, img);
    }
    bool inv_ok = true;
    for (const RatMatrix& m : mats)
      inv_ok = inv_ok && image_module(result, m) == result;
    AbelianInvariants q = meet ? quotient_invariants(result, r.module)
                               : quotient_invariants(r.module, result);
    std::cout << "degree " << n << ": rank " << result.rank() << ", index "
              << invariants_index(q) << ", invariants " << invariants_str(q)
              << ", group-invariant: " << yn(inv_ok) << "\n";
    invariant_ok = invariant_ok && inv_ok;
    doc["per_degree"].push_back({{"degree", n},
                                 {"rank", result.rank()},
                                 {"index", invariants_index(q).get_str()},
                                 {"invariants", json_invariants(q)},
                                 {"group_invariant", inv_ok}});
  }
  doc["pass"] = invariant_ok;
  if (!invariant_ok) {
    std::cout << "group invariance: FAIL\n";
    exit_code = 2;
  }
  emit(o.json_path, doc);
}

void run_fix() {
  const SurgeryOpts& o = fix_opts;
  Voa v = make_voa(o.lattice);
  std::vector<LiftedIsometry> group = surgery_group(v, o.gens);
  std::cout << "group order " << group.size() << "\n";
  std::vector<GradedZForm> grades = standard_grades(v, o.max_degree);
  std::vector<GradedZForm> fixed = fixed_form(v, grades, group);
  json doc = base_doc("fix");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"max_degree", o.max_degree},
                   {"generators", o.gens},
                   {"group_order", group.size()}};
  for (const GradedZForm& g : fixed) {
    std::cout << "degree " << g.degree << ": fixed rank " << g.module.rank()
              << "\n";
    doc["per_degree"].push_back(
        {{"degree", g.degree}, {"rank", g.module.rank()}});
  }
  emit(o.json_path, doc);
}

// ---- eigen-split ----

struct EigenOpts {
  std::string lattice, json_path;
  std::vector<std::string> gens;
  int64_t degree = 2;
};
EigenOpts eigen_opts;

void run_eigen_split() {
  const EigenOpts& o = eigen_opts;
  Voa v = make_voa(o.lattice);
  DegreeFrame f = degree_frame(v, o.degree);
  GradedZForm r = standard_form(v, o.degree);
  std::vector<RatMatrix> mats;
  for (const std::string& s : o.gens) {
    RatMatrix m = isometry_matrix(v, load_gen(v, s), f);
    if (m * m != RatMatrix::identity(m.rows()))
      throw invalid_input("eigen-split: generator '" + s +
                          "' is not an involution");
    mats.push_back(std::move(m));
  }
  if (mats.empty()) throw invalid_input("eigen-split: no generators given");
  CharacterSplit cs = eigen_split(r.module, mats);
  json doc = base_doc("eigen-split");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"degree", o.degree},
                   {"generators", o.gens}};
  json chars = json::array();
  for (std::size_t i = 0; i < cs.characters.size(); ++i) {
    std::cout << "character (";
    for (std::size_t j = 0; j < cs.characters[i].size(); ++j) {
      if (j) std::cout << ",";
      std::cout << (cs.characters[i][j] > 0 ? "+" : "-");
    }
    std::cout << "): rank " << cs.eigenmodules[i].rank() << "\n";
    chars.push_back({{"signs", cs.characters[i]},
                     {"rank", cs.eigenmodules[i].rank()}});
  }
  std::cout << "quotient invariants " << invariants_str(cs.quotient) << "\n";
  bool ok = true;
  if (mats.size() == 1) {
    std::cout << "jordan rank " << cs.jordan_rank << "\n";
    ok = static_cast<int64_t>(cs.quotient.size()) == cs.jordan_rank;
    for (const Int& q : cs.quotient) ok = ok && q == 2;
    std::cout << "two-power quotient of the expected rank: " << yn(ok) << "\n";
  }
  doc["per_degree"].push_back({{"degree", o.degree},
                               {"characters", chars},
                               {"quotient", json_invariants(cs.quotient)},
                               {"jordan_rank", cs.jordan_rank}});
  doc["pass"] = ok;
  if (!ok) exit_code = 2;
  emit(o.json_path, doc);
}

// ---- tensor ----

struct TensorOpts {
  std::string lattice, with_lattice, json_path;
  int64_t max_degree = 2;
  bool swap_split = false;
};
TensorOpts tensor_opts;

void run_tensor() {
  const TensorOpts& o = tensor_opts;
  std::string with = o.with_lattice.empty() ? o.lattice : o.with_lattice;
  Voa va = make_voa(o.lattice);
  Voa vb = make_voa(with);
  std::vector<GradedZForm> a = standard_grades(va, o.max_degree);
  std::vector<GradedZForm> b = standard_grades(vb, o.max_degree);
  std::vector<GradedZForm> t = tensor_form(a, b);
  if (o.swap_split && with != o.lattice)
    throw invalid_input("tensor: swap split needs identical factors");
  json doc = base_doc("tensor");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"with", with},
                   {"max_degree", o.max_degree},
                   {"swap_split", o.swap_split}};
  bool ok = true;
  for (int64_t n = 0; n <= o.max_degree; ++n) {
    std::cout << "degree " << n << ": rank " << t[n].module.rank() << "\n";
    json entry{{"degree", n}, {"rank", t[n].module.rank()}};
    if (o.swap_split) {
      RatMatrix sw = tensor_swap(a, n);
      CharacterSplit cs = eigen_split(t[n].module, {sw});
      bool deg_ok = static_cast<int64_t>(cs.quotient.size()) == cs.jordan_rank;
      for (const Int& q : cs.quotient) deg_ok = deg_ok && q == 2;
      std::cout << "  symmetric rank " << cs.eigenmodules[0].rank()
                << ", antisymmetric rank " << cs.eigenmodules[1].rank()
                << ", quotient " << invariants_str(cs.quotient) << "\n";
      entry["swap"] = {{"symmetric_rank", cs.eigenmodules[0].rank()},
                       {"antisymmetric_rank", cs.eigenmodules[1].rank()},
                       {"quotient", json_invariants(cs.quotient)},
                       {"jordan_rank", cs.jordan_rank}};
      ok = ok && deg_ok;
    }
    doc["per_degree"].push_back(std::move(entry));
  }
  if (o.swap_split) {
    std::cout << "two-power quotients of the expected ranks: " << yn(ok)
              << "\n";
    doc["pass"] = ok;
    if (!ok) exit_code = 2;
  }
  emit(o.json_path, doc);
}

// ---- ising ----

struct IsingOpts {
  std::string lattice, json_path;
  std::string type = "AA1";
  std::string sign = "+";
  std::vector<int64_t> alpha;
  std::string embedding;
  std::vector<int> phi;
  bool check = false;
  int64_t bracket_degree = 3, bracket_samples = 0;
  int64_t miyamoto_through = 0;
  int64_t stabilize_through = -1;
};
IsingOpts ising_opts;

LatticeVector first_norm_four(const Voa& v) {
  for (const ShortVector& s : short_vectors(v.lattice().gram(), Int(4)))
    if (s.norm == 4) return s.coords;
  throw invalid_input("ising: the lattice has no vector of norm four");
}

void run_ising() {
  const IsingOpts& o = ising_opts;
  Voa v = make_voa(o.lattice);
  IsingVector iv;
  if (o.type == "AA1") {
    LatticeVector a = o.alpha.empty() ? first_norm_four(v) : o.alpha;
    iv = cvcc_aa1(v, a, o.sign == "+" ? 1 : -1);
  } else {
    IntMatrix emb = o.embedding.empty()
                        ? IntMatrix::identity(v.rank())
                        : load_matrix_file(o.embedding);
    std::vector<int> phi = o.phi.empty() ? std::vector<int>(8, 1) : o.phi;
    iv = cvcc_ee8(v, emb, phi);
  }
  std::cout << "conformal vector (" << o.type << "): " << iv.e.terms.size()
            << " terms\n";
  if (iv.e.terms.size() <= 8) std::cout << "  " << iv.e.str() << "\n";

  json doc = base_doc("ising");
  doc["inputs"] = {{"lattice", o.lattice},
                   {"type", o.type},
                   {"sign", o.sign},
                   {"check", o.check},
                   {"bracket_degree", o.bracket_degree},
                   {"bracket_samples", o.bracket_samples},
                   {"miyamoto_through", o.miyamoto_through}};
  bool ok = true;

  if (o.check) {
    IsingCheckOptions co;
    co.bracket_degree = o.bracket_degree;
    co.bracket_samples = o.bracket_samples;
    IsingReport rep = ising_check(v, iv.e, co);
    std::cout << "mode equations: " << (rep.modes_ok ? "ok" : "FAIL") << "\n"
              << "virasoro bracket through degree " << o.bracket_degree
              << ": " << (rep.bracket_ok ? "ok" : "FAIL") << "\n";
    for (const std::string& fmsg : rep.failures)
      std::cout << "  " << fmsg << "\n";
    ok = ok && rep.ok();
    doc["check"] = {{"modes_ok", rep.modes_ok},
                    {"bracket_ok", rep.bracket_ok},
                    {"failures", rep.failures}};
  }

  if (o.miyamoto_through > 0) {
    json mj = json::array();
    for (int64_t n = 1; n <= o.miyamoto_through; ++n) {
      MiyamotoData md = miyamoto(v, iv.e, n);
      bool square_ok =
          md.involution * md.involution ==
          RatMatrix::identity(md.involution.rows());
      std::cout << "miyamoto degree " << n << ": dim "
                << md.involution.rows() << ", spectrum {";
      json spec = json::array();
      for (std::size_t i = 0; i < md.spectrum.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << rat_str(md.spectrum[i].first) << ":"
                  << md.spectrum[i].second;
        spec.push_back({{"eigenvalue", rat_str(md.spectrum[i].first)},
                        {"multiplicity", md.spectrum[i].second}});
      }
      std::cout << "}, sixteenth " << yn(md.has_sixteenth)
                << ", squares to one: " << yn(square_ok) << "\n";
      ok = ok && square_ok;
      mj.push_back({{"degree", n},
                    {"dim", md.involution.rows()},
                    {"spectrum", spec},
                    {"sixteenth", md.has_sixteenth},
                    {"squares_to_one", square_ok}});
    }
    doc["miyamoto"] = mj;

    int64_t st =
        o.stabilize_through >= 0 ? o.stabilize_through : o.miyamoto_through;
    if (st >= 2) {
      std::vector<GradedZForm> grades = standard_grades(v, st);
      StabilizationReport sr = stabilization_check(v, iv.e, grades, st);
      json sj = json::array();
      for (const StabilizationDegree& d : sr.degrees) {
        std::cout << "standard span degree " << d.degree
                  << " preserved: " << yn(d.span_preserved) << "\n";
        sj.push_back({{"degree", d.degree},
                      {"span_preserved", d.span_preserved}});
      }
      ok = ok && sr.ok();
      doc["stabilization"] = sj;
    }
  }

  std::cout << (ok ? "pass" : "FAIL") << "\n";
  doc["pass"] = ok;
  if (!ok) exit_code = 2;
  emit(o.json_path, doc);
}

// ---- trace-form ----

struct TraceOpts {
  std::string lattice, json_path;
  int64_t degree = 2;
};
TraceOpts trace_opts;

void run_trace_form() {
  const TraceOpts& o = trace_opts;
  Voa v = make_voa(o.lattice);
  RatMatrix tm = trace_form_matrix(v, o.degree);
  std::size_t r = rank(tm);
  bool integral = integral_entries(tm);
  std::cout << "weight " << o.degree << ": size " << tm.rows() << ", rank "
            << r << ", integer entries: " << yn(integral) << "\n";
  print_matrix(tm);
  json doc = base_doc("trace-form");
  doc["inputs"] = {{"lattice", o.lattice}, {"degree", o.degree}};
  doc["per_degree"].push_back({{"degree", o.degree},
                               {"size", tm.rows()},
                               {"rank", r},
                               {"integral", integral},
                               {"entries", json_matrix(tm)}});
  doc["pass"] = integral;
  if (!integral) exit_code = 2;
  emit(o.json_path, doc);
}

// ---- e8-audit ----

struct E8AuditOpts {
  std::string json_path;
  int threads = 1;
};
E8AuditOpts e8_opts;

void run_e8_audit() {
  const E8AuditOpts& o = e8_opts;
  Voa v = make_voa("E8");
  bool ok = true;

  WeightOneAudit w1 = weight_one_audit(v, PairKind::HERMITIAN, o.threads);
  std::cout << "degree 1: rank " << w1.rank << ", det " << rat_str(w1.det)
            << ", parity " << (w1.odd ? "odd" : "even")
            << ", gram = lattice + identity: " << yn(w1.lattice_plus_identity)
            << "\n";
  ok = ok && w1.rank == 248 && w1.det == Rat(1) && w1.odd &&
       w1.lattice_plus_identity && w1.invariants.empty();

  DegreeAudit d2 = audit_degree(v, 2, PairKind::HERMITIAN, Int(-1), o.threads);
  print_degree_audit(d2);
  ok = ok && d2.rank == 4124 && d2.det == Rat(1) && d2.odd &&
       d2.denominator_scale == 1 && d2.invariants.empty() &&
       d2.classes.size() == 3;
  if (d2.classes.size() == 3) {
    const SectorClass& j = d2.classes[0];
    const SectorClass& mid = d2.classes[1];
    const SectorClass& s = d2.classes[2];
    ok = ok && j.charge_norm == 0 && j.sectors == 1 && j.sector_rank == 44 &&
         j.det == Rat(1) && j.odd;
    ok = ok && mid.charge_norm == 2 && mid.sectors == 240 &&
         mid.sector_rank == 8 && mid.uniform &&
         mid.gram == to_rational(v.lattice().gram()) && mid.det == Rat(1);
    ok = ok && s.charge_norm == 4 && s.sectors == 2160 &&
         s.sector_rank == 1 && s.uniform &&
         s.gram == RatMatrix(1, 1, {Rat(1)}) && s.det == Rat(1) && s.odd;
  }

  WeightTwoZeroSplit z = weight_two_zero_split(v, PairKind::HERMITIAN);
  print_zero_split(z);
  ok = ok && z.rank == 44 && z.det == Rat(1) && z.odd && z.pair_rank == 36 &&
       z.pair_det == Rat(256) && z.single_rank == 8 &&
       z.single_det == Rat(256) && z.glue == AbelianInvariants(8, Int(2)) &&
       z.min == Rat(3) && z.min_count == 480;

  std::cout << "structure checks: " << (ok ? "pass" : "FAIL") << "\n";
  json doc = base_doc("e8-audit");
  doc["inputs"] = {{"lattice", "E8"}, {"form", "hermitian"}};
  doc["per_degree"].push_back({{"degree", 1},
                               {"rank", w1.rank},
                               {"det", rat_str(w1.det)},
                               {"odd", w1.odd},
                               {"lattice_plus_identity",
                                w1.lattice_plus_identity},
                               {"invariants", json_invariants(w1.invariants)}});
  json d2j = degree_audit_json(d2);
  d2j["zero_split"] = zero_split_json(z);
  doc["per_degree"].push_back(std::move(d2j));
  doc["pass"] = ok;
  if (!ok) exit_code = 2;
  emit(o.json_path, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact integral structure tool for lattice vertex algebras"};
  app.require_subcommand(1);

  const std::map<std::string, PairKind> form_map{
      {"hermitian", PairKind::HERMITIAN}, {"bilinear", PairKind::BILINEAR}};
  const std::map<std::string, BasisVariant> variant_map{
      {"standard", BasisVariant::STANDARD_H},
      {"schur", BasisVariant::SCHUR_PRIMAL},
      {"dual-hermitian", BasisVariant::SCHUR_DUAL_HERMITIAN},
      {"dual-bilinear", BasisVariant::SCHUR_DUAL_BILINEAR}};

  auto* basis = app.add_subcommand("basis", "list a degree basis");
  basis->add_option("--lattice", basis_opts.lattice, "lattice name or @file")
      ->required();
  basis->add_option("--degree", basis_opts.degree, "weight")->required();
  basis->add_flag("--count-only", basis_opts.count_only,
                  "print only the element count");
  basis->add_option("--variant", basis_opts.variant, "basis family")
      ->transform(CLI::CheckedTransformer(variant_map));
  basis->add_option("--json", basis_opts.json_path, "json output file");
  basis->callback(run_basis);

  auto* gram = app.add_subcommand("gram", "Gram matrix of a degree basis");
  gram->add_option("--lattice", gram_opts.lattice, "lattice name or @file")
      ->required();
  gram->add_option("--degree", gram_opts.degree, "weight")->required();
  gram->add_option("--form", gram_opts.kind, "pairing")
      ->transform(CLI::CheckedTransformer(form_map));
  gram->add_option("--variant", gram_opts.variant, "basis family")
      ->transform(CLI::CheckedTransformer(variant_map));
  gram->add_option("--threads", gram_opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  gram->add_option("--json", gram_opts.json_path, "json output file");
  gram->callback(run_gram);

  auto* audit = app.add_subcommand(
      "audit", "blockwise structure audit of the standard span");
  audit->add_option("--lattice", audit_opts.lattice, "lattice name or @file")
      ->required();
  audit
      ->add_option("--degree", audit_opts.degrees,
                   "weights to audit (repeatable)")
      ->required();
  audit->add_option("--form", audit_opts.kind, "pairing")
      ->transform(CLI::CheckedTransformer(form_map));
  audit->add_option(
      "--min-norm-block", audit_opts.min_block,
      "block to enumerate: J (zero charge; at degree 2 with the glue "
      "analysis) or Q<norm>");
  audit->add_option("--threads", audit_opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  audit->add_option("--json", audit_opts.json_path, "json output file");
  audit->callback(run_audit);

  auto* dual = app.add_subcommand(
      "dual-check", "dual basis pairing and span comparison per degree");
  dual->add_option("--lattice", dual_opts.lattice, "lattice name or @file")
      ->required();
  dual->add_option("--max-degree", dual_opts.max_degree, "top weight");
  dual->add_option("--form", dual_opts.kind, "pairing")
      ->transform(CLI::CheckedTransformer(form_map));
  dual->add_option("--threads", dual_opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  dual->add_option("--json", dual_opts.json_path, "json output file");
  dual->callback(run_dual_check);

  auto* product =
      app.add_subcommand("product", "mode product of two basis elements");
  product
      ->add_option("--lattice", product_opts.lattice, "lattice name or @file")
      ->required();
  product->add_option("--left-degree", product_opts.left_degree, "left weight")
      ->required();
  product->add_option("--left-index", product_opts.left_index, "left index")
      ->required();
  product
      ->add_option("--right-degree", product_opts.right_degree,
                   "right weight")
      ->required();
  product->add_option("--right-index", product_opts.right_index, "right index")
      ->required();
  product->add_option("-k,--mode", product_opts.k, "product mode k")
      ->required();
  product->add_option("--variant", product_opts.variant, "basis family")
      ->transform(CLI::CheckedTransformer(variant_map));
  product->add_option("--json", product_opts.json_path, "json output file");
  product->callback(run_product);

  auto* generate = app.add_subcommand(
      "generate", "span generated by the basis charge vectors");
  generate
      ->add_option("--lattice", generate_opts.lattice, "lattice name or @file")
      ->required();
  generate->add_option("--max-degree", generate_opts.max_degree, "top weight");
  generate->add_option("--json", generate_opts.json_path, "json output file");
  generate->callback(run_generate);

  auto add_surgery = [&](const char* name, const char* help,
                         SurgeryOpts& opts) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--lattice", opts.lattice, "lattice name or @file")
        ->required();
    cmd->add_option("--gen", opts.gens,
                    "group generator: theta, identity, or @file (repeatable)")
        ->required();
    cmd->add_option("--max-degree", opts.max_degree, "top weight");
    cmd->add_option("--json", opts.json_path, "json output file");
    return cmd;
  };
  add_surgery("intersect",
              "intersection of the standard span over a lifted isometry group",
              intersect_opts)
      ->callback([] { run_surgery(intersect_opts, true); });
  add_surgery("sum", "sum of the standard span over a lifted isometry group",
              sum_opts)
      ->callback([] { run_surgery(sum_opts, false); });
  add_surgery("fix", "fixed points of the standard span under a group",
              fix_opts)
      ->callback(run_fix);

  auto* eigen = app.add_subcommand(
      "eigen-split", "character decomposition under commuting involutions");
  eigen->add_option("--lattice", eigen_opts.lattice, "lattice name or @file")
      ->required();
  eigen->add_option("--degree", eigen_opts.degree, "weight")->required();
  eigen
      ->add_option("--gen", eigen_opts.gens,
                   "involution: theta, identity, or @file (repeatable)")
      ->required();
  eigen->add_option("--json", eigen_opts.json_path, "json output file");
  eigen->callback(run_eigen_split);

  auto* tensor = app.add_subcommand("tensor", "tensor form of two spans");
  tensor->add_option("--lattice", tensor_opts.lattice, "lattice name or @file")
      ->required();
  tensor->add_option("--with", tensor_opts.with_lattice,
                     "second factor (defaults to --lattice)");
  tensor->add_option("--max-degree", tensor_opts.max_degree, "top weight");
  tensor->add_flag("--swap-split", tensor_opts.swap_split,
                   "eigen split under the factor swap");
  tensor->add_option("--json", tensor_opts.json_path, "json output file");
  tensor->callback(run_tensor);

  auto* ising = app.add_subcommand(
      "ising", "conformal vectors of half central charge and their checks");
  ising->add_option("--lattice", ising_opts.lattice, "lattice name or @file")
      ->required();
  ising->add_option("--type", ising_opts.type, "construction type")
      ->check(CLI::IsMember({"AA1", "EE8"}));
  ising->add_option("--sign", ising_opts.sign, "charge-term sign (AA1)")
      ->check(CLI::IsMember({"+", "-"}));
  ising->add_option("--alpha", ising_opts.alpha,
                    "norm-four vector coordinates (AA1; default: first)");
  ising->add_option("--embedding", ising_opts.embedding,
                    "matrix file: rows cols, then entries (EE8)");
  ising->add_option("--phi", ising_opts.phi, "eight signs (EE8)");
  ising->add_flag("--check", ising_opts.check,
                  "verify the mode equations and the virasoro bracket");
  ising->add_option("--bracket-degree", ising_opts.bracket_degree,
                    "bracket check top weight");
  ising->add_option("--bracket-samples", ising_opts.bracket_samples,
                    "sampled bracket checks per degree (0: all)");
  ising->add_option("--miyamoto-through", ising_opts.miyamoto_through,
                    "involution matrices for degrees 1..N");
  ising->add_option("--stabilize-through", ising_opts.stabilize_through,
                    "standard span stabilization top weight");
  ising->add_option("--json", ising_opts.json_path, "json output file");
  ising->callback(run_ising);

  auto* trace = app.add_subcommand("trace-form", "graded trace pairing");
  trace->add_option("--lattice", trace_opts.lattice, "lattice name or @file")
      ->required();
  trace->add_option("--degree", trace_opts.degree, "weight")->required();
  trace->add_option("--json", trace_opts.json_path, "json output file");
  trace->callback(run_trace_form);

  auto* e8 = app.add_subcommand(
      "e8-audit", "full rank-eight unimodular degree one and two audit");
  e8->add_option("--threads", e8_opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  e8->add_option("--json", e8_opts.json_path, "json output file");
  e8->callback(run_e8_audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
