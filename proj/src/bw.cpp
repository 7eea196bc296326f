#include "pinch/bw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pinch/exterior.hpp"

namespace pinch {

BWOperator build_bw(const RicciDecomposition& dec, int k) {
  const int n = dec.n;
  if (k < 1 || k > n - 1) throw std::invalid_argument("build_bw: 1 <= k <= n-1 required");
  BWOperator op;
  op.n = n;
  op.k = k;
  op.R = dec.R;
  op.ric0_norm2 = dec.ric0_norm2();
  op.weyl_norm2 = dec.weyl_norm2();
  const int d = static_cast<int>(binomial(n, k));
  op.mat = (k * (n - k) / (n * (n - 1.0)) * dec.R) * Eigen::MatrixXd::Identity(d, d);
  DoubleForm ric0_form = DoubleForm::zero(n, 1, 1);
  ric0_form.m = dec.ric0;
  ric0_form.symmetric = true;
  if (n != 2 * k)  // the Ricci term drops at middle degree
    op.mat += ((n - 2.0 * k) / (n - 2.0)) * mul_metric_power(k - 1, ric0_form).m;
  if (k >= 2)  // on 1-forms the operator is the Ricci curvature: no Weyl term
    op.mat += -2.0 * mul_metric_power(k - 2, dec.weyl).m;
  op.mat = 0.5 * (op.mat + op.mat.transpose());
  return op;
}

std::vector<EigCluster> cluster_spectrum(const Eigen::VectorXd& eigs, double rel_tol) {
  std::vector<EigCluster> out;
  if (eigs.size() == 0) return out;
  double radius = std::max(std::abs(eigs(0)), std::abs(eigs(eigs.size() - 1)));
  double gap = rel_tol * std::max(radius, 1e-300);
  double sum = eigs(0);
  int count = 1;
  for (int i = 1; i < eigs.size(); ++i) {
    if (eigs(i) - eigs(i - 1) > gap) {
      out.push_back({sum / count, count});
      sum = 0;
      count = 0;
    }
    sum += eigs(i);
    ++count;
  }
  out.push_back({sum / count, count});
  return out;
}

RkData r_k_of(const BWOperator& op) {
  RkData out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.mat, Eigen::EigenvaluesOnly);
  out.eigenvalues = es.eigenvalues();
  out.trace_mean = op.trace_mean();
  out.r_k = -(out.eigenvalues(0) - out.trace_mean);
  out.clusters = cluster_spectrum(out.eigenvalues);
  return out;
}

PinchConstants pinch_constants(int n, int k) {
  if (n < 4 || k < 1 || 2 * k > n)
    throw std::invalid_argument("pinch_constants: need n >= 4 and 1 <= k <= n/2");
  PinchConstants pc;
  pc.n = n;
  pc.k = k;
  pc.theorem_excluded = (2 * k == n - 1);
  pc.middle = (2 * k == n);
  const double d = static_cast<double>(binomial(n, k));
  if (!pc.middle) {
    pc.a = (d - 1.0) * (k * (n - k) / (n * (n - 1.0))) *
           (4.0 * (k - 1.0) * (n - k - 1.0) / ((n - 2.0) * (n - 3.0)));
    pc.b = (d - 1.0) * (k * (n - k) / (n * (n - 1.0))) *
           ((n - 2.0 * k) * (n - 2.0 * k) / ((n - 2.0) * (n - 2.0)));
  } else {
    double base = n * (n - 2.0) / (4.0 * (n - 1.0) * (n - 3.0)) * (d - 2.0);
    pc.a_middle = (k % 2 == 0) ? base : 0.5 * base;
  }
  return pc;
}

EigenEndoReport lemma_eigenendo_check(int d, int trials, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("lemma_eigenendo_check: d >= 2 required");
  EigenEndoReport rep;
  rep.d = d;
  rep.trials = trials;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(d, d);
  for (int trial = 0; trial < trials; ++trial) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
    Eigen::MatrixXd s = 0.5 * (a + a.transpose());
    s -= (s.trace() / d) * Eigen::MatrixXd::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
    double low = es.eigenvalues()(0);
    double excess = low * low - (d - 1.0) / d * s.squaredNorm();
    rep.max_violation = std::max(rep.max_violation, excess);
    if (excess > 1e-9 * std::max(1.0, s.squaredNorm())) ++rep.violations;
  }
  // two-level matrix diag(-nu, nu/(d-1), ..., nu/(d-1)) attains equality
  const double nu = 1.0;
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(d, nu / (d - 1.0));
  diag(0) = -nu;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(diag.asDiagonal()),
                                                    Eigen::EigenvaluesOnly);
  double low = es.eigenvalues()(0);
  rep.equality_slack = std::abs(low * low - (d - 1.0) / d * diag.squaredNorm());
  return rep;
}

RkLemmaReport lemma_rk_check(const AlgCurvature& rm, int k) {
  const int n = rm.n;
  if (k < 1 || 2 * k > n)
    throw std::invalid_argument("lemma_rk_check: 1 <= k <= n/2 required");
  RicciDecomposition dec = ricci_decompose(rm);
  BWOperator op = build_bw(dec, k);
  RkData rk = r_k_of(op);
  PinchConstants pc = pinch_constants(n, k);
  RkLemmaReport rep;
  rep.n = n;
  rep.k = k;
  rep.r_k = rk.r_k;
  rep.lhs2 = rk.r_k * rk.r_k;
  rep.rhs2 = pc.middle ? pc.a_middle * op.weyl_norm2
                       : pc.a * op.weyl_norm2 + pc.b * op.ric0_norm2;
  double scale = std::max({1e-300, rep.lhs2, rep.rhs2});
  rep.slack_rel = (rep.rhs2 - rep.lhs2) / scale;
  rep.equality = std::abs(rep.slack_rel) <= 1e-8;
  rep.rho = rho_of(rm);
  double gm_scale = std::max({1e-300, rep.r_k, k * (n - k) * rep.rho});
  rep.gm_slack_rel = (k * (n - k) * rep.rho - rep.r_k) / gm_scale;
  return rep;
}

EqualitySpectrumReport equality_spectrum_check(double alpha, double beta, double gamma, int n,
                                               int k) {
  if (k < 1 || 2 * k > n - 1)
    throw std::invalid_argument("equality_spectrum_check: 1 <= k <= (n-1)/2 required");
  // curvature alpha g_V^2/2 + beta g_{V^perp}^2/2 + gamma g^2/2, dim V = k
  DoubleForm rm = DoubleForm::zero(n, 2, 2);
  const auto& lb = LexBasis::get(n);
  const std::uint32_t vmask = (1u << k) - 1;
  for (int r = 0; r < lb.dim(2); ++r) {
    std::uint32_t m = lb.mask(2, r);
    if ((m & vmask) == m)
      rm.m(r, r) += alpha;
    else if ((m & vmask) == 0)
      rm.m(r, r) += beta;
    rm.m(r, r) += gamma;
  }
  rm.symmetric = true;
  RicciDecomposition dec = ricci_decompose(make_curvature(std::move(rm)));
  BWOperator op = build_bw(dec, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.mat, Eigen::EigenvaluesOnly);
  Eigen::VectorXd eigs = es.eigenvalues();

  // predicted: alpha j(k-j) + beta j(n-k-j) + gamma k(n-k), multiplicity
  // binom(k,j) binom(n-k,j)
  std::vector<std::pair<double, int>> predicted;
  for (int j = 0; j <= k; ++j)
    predicted.emplace_back(alpha * j * (k - j) + beta * j * (n - k - j) + gamma * k * (n - k),
                           static_cast<int>(binomial(k, j) * binomial(n - k, j)));
  std::sort(predicted.begin(), predicted.end());
  Eigen::VectorXd expected(eigs.size());
  int at = 0;
  for (auto [v, mult] : predicted)
    for (int i = 0; i < mult; ++i) expected(at++) = v;
  if (at != eigs.size()) throw std::logic_error("equality_spectrum_check: multiplicity count");

  EqualitySpectrumReport rep;
  rep.n = n;
  rep.k = k;
  double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());
  rep.max_eigenvalue_error = (eigs - expected).cwiseAbs().maxCoeff() / scale;

  auto clusters = cluster_spectrum(eigs);
  rep.distinct = static_cast<int>(clusters.size());
  rep.lowest_simple = !clusters.empty() && clusters.front().multiplicity == 1;
  rep.two_level = (rep.distinct == 2) && rep.lowest_simple;
  // aggregate the predicted list with the same clustering rule
  std::vector<std::pair<double, int>> agg;
  for (auto [v, mult] : predicted) {
    if (!agg.empty() && std::abs(v - agg.back().first) <= 1e-7 * scale)
      agg.back().second += mult;
    else
      agg.emplace_back(v, mult);
  }
  rep.multiplicities_match = agg.size() == clusters.size();
  if (rep.multiplicities_match)
    for (std::size_t i = 0; i < agg.size(); ++i)
      if (agg[i].second != clusters[i].multiplicity) rep.multiplicities_match = false;
  return rep;
}

MiddleSplit middle_degree_split(const BWOperator& op, const RicciDecomposition& dec) {
  const int n = op.n;
  if (2 * op.k != n) throw std::invalid_argument("middle_degree_split: k = n/2 required");
  MiddleSplit out;
  const int half = n / 2;
  Eigen::MatrixXd traceless =
      op.mat - op.trace_mean() * Eigen::MatrixXd::Identity(op.dim(), op.dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_full(traceless, Eigen::EigenvaluesOnly);
  out.r_mid = -es_full.eigenvalues()(0);
  if (half % 2 == 1) {
    out.even_half = false;
    for (const auto& c : cluster_spectrum(es_full.eigenvalues()))
      if (c.multiplicity % 2 != 0) out.even_multiplicities = false;
    return out;
  }
  out.even_half = true;
  Eigen::MatrixXd bplus = half_degree_eigenbasis(n, +1);
  Eigen::MatrixXd bminus = half_degree_eigenbasis(n, -1);
  Eigen::MatrixXd tp = bplus.transpose() * traceless * bplus;
  Eigen::MatrixXd tm = bminus.transpose() * traceless * bminus;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esp(tp, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(tm, Eigen::EigenvaluesOnly);
  out.plus = cluster_spectrum(esp.eigenvalues());
  out.minus = cluster_spectrum(esm.eigenvalues());
  out.r_plus = -esp.eigenvalues()(0);
  out.r_minus = -esm.eigenvalues()(0);
  if (n == 4) {
    Eigen::MatrixXd wop = as_operator(dec.weyl);
    Eigen::MatrixXd wplus = bplus.transpose() * wop * bplus;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esw(wplus, Eigen::EigenvaluesOnly);
    out.w_plus = esw.eigenvalues()(2);
  }
  return out;
}

}  // namespace pinch
