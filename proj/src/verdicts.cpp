#include "pinch/verdicts.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pinch {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::strict: return "strict";
    case Verdict::equality: return "equality";
    case Verdict::violated: return "violated";
    case Verdict::boundary_indeterminate: return "boundary-indeterminate";
    case Verdict::yamabe_unavailable: return "yamabe-unavailable";
  }
  return "?";
}

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::Gallot: return "Gallot";
    case TheoremId::degre1compactnorm: return "degre1compactnorm";
    case TheoremId::degre3compact: return "degre3compact";
    case TheoremId::NormPinch: return "NormPinch";
    case TheoremId::gursky1: return "gursky1";
    case TheoremId::gursky2: return "gursky2";
    case TheoremId::wplus4D: return "wplus4D";
    case TheoremId::pinchingchang: return "pinchingchang";
    case TheoremId::degre1completeigen: return "degre1completeigen";
  }
  return "?";
}

TheoremId theorem_from_string(const std::string& name) {
  for (TheoremId id :
       {TheoremId::Gallot, TheoremId::degre1compactnorm, TheoremId::degre3compact,
        TheoremId::NormPinch, TheoremId::gursky1, TheoremId::gursky2, TheoremId::wplus4D,
        TheoremId::pinchingchang, TheoremId::degre1completeigen})
    if (name == to_string(id)) return id;
  throw std::invalid_argument("unknown theorem id: " + name);
}

bool BettiTable::poincare_dual() const {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != b[b.size() - 1 - i]) return false;
  return true;
}

BettiTable betti_of(const ModelSpace& m) {
  if (!m.closed()) throw std::invalid_argument("betti_of: closed product model required");
  BettiTable t;
  t.b = {1};
  auto convolve = [&](const std::vector<long long>& f) {
    std::vector<long long> out(t.b.size() + f.size() - 1, 0);
    for (std::size_t i = 0; i < t.b.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) out[i + j] += t.b[i] * f[j];
    t.b = std::move(out);
  };
  bool single_cp2 = m.factors.size() == 1;
  for (const auto& f : m.factors) {
    if (const auto* s = std::get_if<SphereFactor>(&f)) {
      std::vector<long long> v(s->dim + 1, 0);
      v.front() = v.back() = 1;
      convolve(v);
      single_cp2 = false;
    } else if (const auto* p = std::get_if<ComplexProjectiveFactor>(&f)) {
      std::vector<long long> v(2 * p->m + 1, 0);
      for (int j = 0; j <= p->m; ++j) v[2 * j] = 1;
      convolve(v);
      single_cp2 = single_cp2 && p->m == 2;
    } else {
      convolve({1, 1});
      single_cp2 = false;
    }
  }
  if (m.dimension() == 4) {
    // b2+ = (b2 + signature)/2; among the supported factors only CP^2 has
    // nonzero signature.
    long long signature = single_cp2 ? 1 : 0;
    t.b2_plus = static_cast<int>((t.b[2] + signature) / 2);
  }
  return t;
}

Verdict classify(double lhs, double rhs, double tol) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  double slack = (rhs - lhs) / scale;
  if (slack < -tol) return Verdict::violated;
  if (slack <= tol) return Verdict::equality;
  return Verdict::strict;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(15);
  os << x;
  return os.str();
}

struct PointwiseData {
  RicciDecomposition dec;
  double rho = 0;
  double r1 = 0;
};

PointwiseData pointwise_data(const ModelSpace& m) {
  PointwiseData p;
  AlgCurvature rm = curvature_of_model(m);
  p.dec = ricci_decompose(rm);
  p.rho = rho_of(rm);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.dec.ric0, Eigen::EigenvaluesOnly);
  p.r1 = -es.eigenvalues()(0);
  return p;
}

PinchReport cylinder_complete_eigen(const ModelSpace& m, double tol) {
  PinchReport r;
  r.theorem = to_string(TheoremId::degre1completeigen);
  r.model = m.describe();
  r.n = m.dimension();
  r.k = 1;
  CoshCylinderReport c = cosh_cylinder_C(m.base(), m.alpha);
  r.lhs = c.lhs;
  r.rhs = c.quarter_y;
  r.ratio = r.lhs / r.rhs;
  r.yamabe = 4.0 * c.quarter_y;
  r.yamabe_provenance = to_string(YamabeProvenance::cylinder_closed_form);
  r.verdict = classify(r.lhs, r.rhs, tol);
  r.betti = -1;
  r.notes.push_back("C = " + fmt(c.C) + (c.base_einstein ? " (Einstein base)"
                                                         : " (non-Einstein base, r1(h) = " +
                                                               fmt(c.r1_base) + ")"));
  r.notes.push_back("norms from the closed forms of the warped metric; Betti data not applicable");
  return r;
}

}  // namespace

double homogeneity_audit(const ModelSpace& m, std::uint64_t seed, int rotations) {
  AlgCurvature rm = curvature_of_model(m);
  const int n = rm.n;
  auto scalars = [&](const AlgCurvature& c) {
    RicciDecomposition dec = ricci_decompose(c);
    std::vector<double> v{dec.R, dec.ric0_norm2(), dec.weyl_norm2(), rho_of(c)};
    for (int k : {1, 2}) {
      if (k > n - 1) break;
      v.push_back(r_k_of(build_bw(dec, k)).r_k);
    }
    return v;
  };
  std::vector<double> ref = scalars(rm);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0;
  for (int rot = 0; rot < rotations; ++rot) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    AlgCurvature rotated{n, rotate_frame(rm.rm, q)};
    std::vector<double> got = scalars(rotated);
    for (std::size_t i = 0; i < ref.size(); ++i)
      worst = std::max(worst, std::abs(got[i] - ref[i]) / std::max(1.0, std::abs(ref[i])));
  }
  return worst;
}

PinchReport evaluate_theorem(TheoremId id, const ModelSpace& m, int k, double tol) {
  if (id == TheoremId::degre1completeigen && m.cosh_cylinder)
    return cylinder_complete_eigen(m, tol);
  if (!m.closed())
    throw std::invalid_argument("evaluate_theorem: only degre1completeigen supports cylinders");

  PinchReport r;
  r.theorem = to_string(id);
  r.model = m.describe();
  const int n = m.dimension();
  r.n = n;

  double audit = homogeneity_audit(m, 1234577);
  if (audit > 1e-12)
    throw std::logic_error("evaluate_theorem: pointwise quantities varied across frames");

  PointwiseData p = pointwise_data(m);
  const double vol = volume_of(m);
  const double v2n = std::pow(vol, 2.0 / n);
  auto y = yamabe_certified(m);

  bool needs_yamabe = true;
  switch (id) {
    case TheoremId::Gallot:
      if (k < 0 || k > n) throw std::invalid_argument("Gallot: degree out of range");
      r.k = k;
      r.lhs = p.rho * v2n;
      if (y) r.rhs = y->value / (n * (n - 1.0));
      break;
    case TheoremId::degre1compactnorm:
      r.k = 1;
      r.lhs = std::sqrt(p.dec.ric0_norm2()) * v2n;
      if (y) r.rhs = y->value / std::sqrt(n * (n - 1.0));
      break;
    case TheoremId::degre3compact: {
      if (n != 6) throw std::invalid_argument("degre3compact: n = 6 required");
      r.k = 3;
      r.lhs = std::sqrt(p.dec.weyl_norm2()) * v2n;
      if (y) r.rhs = y->value / (2.0 * std::sqrt(10.0));
      break;
    }
    case TheoremId::NormPinch: {
      if (k < 1 || 2 * k > n) throw std::invalid_argument("NormPinch: 1 <= k <= n/2 required");
      r.k = k;
      PinchConstants pc = pinch_constants(n, k);
      if (pc.theorem_excluded)
        r.notes.push_back("k = (n-1)/2 is excluded from the norm pinching theorem");
      double rhs2 = pc.middle ? pc.a_middle * p.dec.weyl_norm2()
                              : pc.a * p.dec.weyl_norm2() + pc.b * p.dec.ric0_norm2();
      r.lhs = std::sqrt(rhs2) * v2n;
      if (y) r.rhs = k * (n - k) / (n * (n - 1.0)) * y->value;
      if (k == 2 && n >= 7)
        r.notes.push_back(
            "equality model: S2(n-5) x S(n-2)(1) up to scale; the theorem's a(S^2 x "
            "1/(n-5) S^{n-2}) notation swaps the factor scalings");
      break;
    }
    case TheoremId::gursky1:
      if (n != 4) throw std::invalid_argument("gursky1: n = 4 required");
      r.k = 1;
      r.lhs = p.dec.ric0_norm2() * vol;
      if (y) r.rhs = y->value * y->value / 12.0;
      break;
    case TheoremId::gursky2:
      if (n != 4) throw std::invalid_argument("gursky2: n = 4 required");
      r.k = 2;
      r.lhs = p.dec.weyl_norm2() * vol;
      if (y) r.rhs = y->value * y->value / 24.0;
      break;
    case TheoremId::wplus4D: {
      if (n != 4) throw std::invalid_argument("wplus4D: n = 4 required");
      r.k = 2;
      BWOperator op = build_bw(p.dec, 2);
      MiddleSplit split = middle_degree_split(op, p.dec);
      r.lhs = std::abs(split.w_plus) * std::sqrt(vol);
      if (y) r.rhs = y->value / 6.0;
      r.notes.push_back("r2+ = " + fmt(split.r_plus) + ", 2 w+ = " + fmt(2.0 * split.w_plus));
      break;
    }
    case TheoremId::pinchingchang:
      if (n != 4) throw std::invalid_argument("pinchingchang: n = 4 required");
      r.k = 2;
      r.lhs = (p.dec.weyl_norm2() + 0.5 * p.dec.ric0_norm2()) * vol;
      r.rhs = p.dec.R * p.dec.R * vol / 24.0;
      needs_yamabe = false;
      break;
    case TheoremId::degre1completeigen:
      r.k = 1;
      r.lhs = (p.r1 + (n - 4.0) / (4.0 * n) * p.dec.R) * v2n;
      if (y) r.rhs = y->value / 4.0;
      break;
  }

  if (needs_yamabe && !y) {
    r.verdict = Verdict::yamabe_unavailable;
    r.ratio = 0;
    r.notes.push_back("no Yamabe minimizer certificate; pointwise data only");
    if (id == TheoremId::NormPinch) {
      RkLemmaReport lem = lemma_rk_check(curvature_of_model(m), k);
      r.notes.push_back("pointwise lemma slack (rhs2-lhs2)/scale = " + fmt(lem.slack_rel) +
                        ", r_k = " + fmt(lem.r_k));
    }
  } else {
    if (needs_yamabe) {
      r.yamabe = y->value;
      r.yamabe_provenance = to_string(y->provenance);
    }
    r.verdict = classify(r.lhs, r.rhs, tol);
    r.ratio = r.rhs != 0 ? r.lhs / r.rhs : 0;
  }

  BettiTable bt = betti_of(m);
  if (id == TheoremId::wplus4D) {
    r.betti = bt.b2_plus;
    r.betti_consistent = !(r.verdict == Verdict::strict && bt.b2_plus != 0);
  } else if (id == TheoremId::pinchingchang) {
    r.betti = bt[1] + bt[2];
    r.betti_consistent = !(r.verdict == Verdict::strict && (bt[1] != 0 || bt[2] != 0));
    r.notes.push_back("b1 = " + std::to_string(bt[1]) + ", b2 = " + std::to_string(bt[2]));
  } else if (id == TheoremId::Gallot && k == 0) {
    // degree left open: the conclusion concerns every admissible k
    long long worst = 0;
    r.betti_consistent = true;
    for (int kk = 1; 2 * kk <= n; ++kk) {
      if (2 * kk != n && 2 * kk > n - 3) continue;
      worst = std::max(worst, bt[kk]);
      if (r.verdict == Verdict::strict && bt[kk] != 0) r.betti_consistent = false;
    }
    r.betti = worst;
  } else {
    int kk = std::max(1, r.k);
    r.betti = bt[kk];
    r.betti_consistent = !(r.verdict == Verdict::strict && bt[kk] != 0);
  }
  return r;
}

std::vector<PinchReport> sweep_equality_family(int n, int k, double tol) {
  if (n < 4 || n > kDefaultMaxDim || k < 1 || k >= n)
    throw std::invalid_argument("sweep_equality_family: need 4 <= n <= 12, 1 <= k < n");
  // typed partitions: spheres of dim >= 2, projective factors of complex
  // dim >= 2; canonical non-increasing (dim, type) order avoids duplicates
  std::vector<PinchReport> out;
  std::vector<Factor> current;
  const double lambda_e = n - 1.0;  // shared Einstein constant

  auto emit = [&]() {
    // partial dimension sums: spheres all-or-nothing, CP factors in even steps
    std::vector<char> reachable(n + 1, 0);
    reachable[0] = 1;
    for (const auto& f : current) {
      std::vector<char> next = reachable;
      if (const auto* s = std::get_if<SphereFactor>(&f)) {
        for (int v = 0; v + s->dim <= n; ++v)
          if (reachable[v]) next[v + s->dim] = 1;
      } else if (const auto* p = std::get_if<ComplexProjectiveFactor>(&f)) {
        for (int j = 1; j <= p->m; ++j)
          for (int v = 0; v + 2 * j <= n; ++v)
            if (reachable[v]) next[v + 2 * j] = 1;
      }
      reachable = std::move(next);
    }
    if (!reachable[k]) return;
    ModelSpace m;
    m.factors = current;
    out.push_back(evaluate_theorem(TheoremId::Gallot, m, k, tol));
    // eq:degrekcompact on the same model: ||r_k|| vs k(n-k)/(n(n-1)) Y
    RicciDecomposition dec = ricci_decompose(curvature_of_model(m));
    double r_k = r_k_of(build_bw(dec, k)).r_k;
    double lhs = r_k * std::pow(volume_of(m), 2.0 / n);
    double rhs = k * (n - k) / (n * (n - 1.0)) * yamabe_einstein(m).value;
    out.back().notes.push_back("degrekcompact verdict: " +
                               std::string(to_string(classify(lhs, rhs, tol))) +
                               " (lhs = " + fmt(lhs) + ", rhs = " + fmt(rhs) + ")");
  };

  // enumerate (dim, is_cp) parts, non-increasing
  auto rec = [&](auto&& self, int remaining, int max_dim, bool cp_allowed_at_max) -> void {
    if (remaining == 0) {
      if (current.size() >= 1) emit();
      return;
    }
    for (int d = std::min(remaining, max_dim); d >= 2; --d) {
      // sphere of dimension d
      current.push_back(SphereFactor{d, lambda_e / (d - 1.0)});
      self(self, remaining - d, d, true);
      current.pop_back();
      if (d % 2 == 0 && d >= 4 && (d < max_dim || cp_allowed_at_max)) {
        int mm = d / 2;
        current.push_back(ComplexProjectiveFactor{mm, 2.0 * lambda_e / (mm + 1.0)});
        self(self, remaining - d, d, false);
        current.pop_back();
      }
    }
  };
  rec(rec, n, n, true);
  return out;
}

std::string to_json(const PinchReport& r) {
  nlohmann::json j;
  j["schema"] = r.schema;
  j["theorem"] = r.theorem;
  j["model"] = r.model;
  j["n"] = r.n;
  j["k"] = r.k;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["verdict"] = to_string(r.verdict);
  j["yamabe"] = r.yamabe;
  j["yamabe_provenance"] = r.yamabe_provenance;
  j["betti"] = r.betti;
  j["betti_consistent"] = r.betti_consistent;
  j["notes"] = r.notes;
  return j.dump();
}

PinchReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PinchReport r;
  r.schema = j.at("schema").get<int>();
  r.theorem = j.at("theorem").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.ratio = j.at("ratio").get<double>();
  std::string v = j.at("verdict").get<std::string>();
  for (Verdict cand : {Verdict::strict, Verdict::equality, Verdict::violated,
                       Verdict::boundary_indeterminate, Verdict::yamabe_unavailable})
    if (v == to_string(cand)) r.verdict = cand;
  r.yamabe = j.at("yamabe").get<double>();
  r.yamabe_provenance = j.at("yamabe_provenance").get<std::string>();
  r.betti = j.at("betti").get<long long>();
  r.betti_consistent = j.at("betti_consistent").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

std::string to_markdown(const PinchReport& r) {
  std::ostringstream os;
  os << "| " << r.theorem << " | " << r.model << " | " << fmt(r.lhs) << " | " << fmt(r.rhs)
     << " | " << fmt(r.ratio) << " | " << to_string(r.verdict) << " | "
     << (r.yamabe_provenance.empty() ? "-" : r.yamabe_provenance) << " | "
     << (r.betti >= 0 ? std::to_string(r.betti) : "-") << " |";
  for (const auto& nmsg : r.notes) os << "\n  - " << nmsg;
  return os.str();
}

std::string csv_header() {
  return "schema,theorem,model,n,k,lhs,rhs,ratio,verdict,yamabe,yamabe_provenance,betti,"
         "betti_consistent";
}

std::string to_csv_row(const PinchReport& r) {
  std::ostringstream os;
  os << r.schema << ',' << r.theorem << ",\"" << r.model << "\"," << r.n << ',' << r.k << ','
     << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.ratio) << ',' << to_string(r.verdict)
     << ',' << fmt(r.yamabe) << ',' << r.yamabe_provenance << ',' << r.betti << ','
     << (r.betti_consistent ? "true" : "false");
  return os.str();
}

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ModelParseError{pos, msg}; }
  bool consume(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!consume(tok)) fail("expected '" + tok + "'");
  }
  int parse_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an integer");
    return std::stoi(text.substr(start, pos - start));
  }
  double parse_float() {
    skip_ws();
    std::size_t consumed = 0;
    double v = 0;
    try {
      v = std::stod(text.substr(pos), &consumed);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    pos += consumed;
    return v;
  }

  Factor parse_factor() {
    skip_ws();
    if (consume("S(")) {
      int d = parse_int();
      expect(",");
      double kappa = parse_float();
      expect(")");
      return SphereFactor{d, kappa};
    }
    if (consume("CP(")) {
      int m = parse_int();
      expect(",");
      double c = parse_float();
      expect(")");
      return ComplexProjectiveFactor{m, c};
    }
    if (consume("Circ(")) {
      double t = parse_float();
      expect(")");
      return CircleFactor{t};
    }
    fail("expected a factor: S(m,kappa), CP(m,c) or Circ(T)");
  }

  ModelSpace parse_model() {
    skip_ws();
    if (consume("CoshCyl(")) {
      ModelSpace base = parse_model();
      expect(",");
      expect("alpha=");
      double alpha = parse_float();
      expect(")");
      if (base.cosh_cylinder) fail("nested cylinders are not supported");
      base.cosh_cylinder = true;
      base.alpha = alpha;
      return base;
    }
    ModelSpace m;
    m.factors.push_back(parse_factor());
    while (true) {
      std::size_t save = pos;
      skip_ws();
      if (pos < text.size() && text[pos] == 'x') {
        ++pos;
        m.factors.push_back(parse_factor());
      } else {
        pos = save;
        break;
      }
    }
    return m;
  }
};

}  // namespace

ModelSpace parse_model(const std::string& text) {
  Parser p{text};
  ModelSpace m = p.parse_model();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return m;
}

}  // namespace pinch
