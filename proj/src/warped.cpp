#include "pinch/warped.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pinch {

double Warp::eta(double t) const {
  switch (kind) {
    case Kind::constant: return param;
    case Kind::two_plus_sin: return 2.0 + std::sin(t);
    case Kind::cosh: return std::cosh(t);
    case Kind::sqrt_alpha_plus_t2: return std::sqrt(param + t * t);
  }
  return 0;
}

double Warp::deta(double t) const {
  switch (kind) {
    case Kind::constant: return 0;
    case Kind::two_plus_sin: return std::cos(t);
    case Kind::cosh: return std::sinh(t);
    case Kind::sqrt_alpha_plus_t2: return t / std::sqrt(param + t * t);
  }
  return 0;
}

double Warp::d2eta(double t) const {
  switch (kind) {
    case Kind::constant: return 0;
    case Kind::two_plus_sin: return -std::sin(t);
    case Kind::cosh: return std::cosh(t);
    case Kind::sqrt_alpha_plus_t2: return param / std::pow(param + t * t, 1.5);
  }
  return 0;
}

WarpedCylinder WarpedCylinder::over_model(const ModelSpace& base, Warp warp) {
  WarpedCylinder w;
  w.n = base.dimension() + 1;
  w.warp = warp;
  Eigen::MatrixXd ric = ricci_of(curvature_of_model(base));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ric, Eigen::EigenvaluesOnly);
  w.base_ricci_eigs.assign(es.eigenvalues().data(), es.eigenvalues().data() + ric.rows());
  return w;
}

HessianData hessian_structure(const WarpedCylinder& w, const HarmonicRadialForm& f, double t) {
  HessianData h;
  h.a = f.c2 * w.warp.deta(t) * std::pow(w.warp.eta(t), -w.n);
  h.tangential_eig = h.a;
  h.radial_eig = -(w.n - 1) * h.a;
  h.trace = (w.n - 1) * h.tangential_eig + h.radial_eig;
  return h;
}

KatoReport kato_ratio(const WarpedCylinder& w, const HarmonicRadialForm& f, double t0, double t1,
                      int npts) {
  if (f.c2 == 0) throw std::invalid_argument("kato_ratio: c2 must be nonzero");
  KatoReport rep;
  rep.expected = (w.n - 1.0) / w.n;
  if (w.warp.is_constant()) {
    rep.defined = false;  // |d|xi|| and grad xi both vanish identically
    rep.skipped = npts;
    return rep;
  }
  rep.defined = true;
  const int n = w.n;
  for (int i = 0; i < npts; ++i) {
    double t = t0 + (t1 - t0) * i / (npts - 1.0);
    double ep = w.warp.deta(t);
    if (ep == 0.0) {
      ++rep.skipped;
      continue;
    }
    double eta = w.warp.eta(t);
    // |d|xi||^2 = c2^2 (n-1)^2 eta'^2 eta^{-2n}; |grad xi|^2 = n(n-1) a^2
    double num = f.c2 * f.c2 * (n - 1.0) * (n - 1.0) * ep * ep * std::pow(eta, -2.0 * n);
    double a = f.c2 * ep * std::pow(eta, -static_cast<double>(n));
    double den = n * (n - 1.0) * a * a;
    rep.max_deviation = std::max(rep.max_deviation, std::abs(num / den - rep.expected));
    ++rep.evaluated;
  }
  return rep;
}

double radial_scalar_curvature(const WarpedCylinder& w, double t) {
  const int n = w.n;
  double eta = w.warp.eta(t), ep = w.warp.deta(t), epp = w.warp.d2eta(t);
  double r_h = 0;
  for (double mu : w.base_ricci_eigs) r_h += mu;
  return -2.0 * (n - 1.0) * epp / eta + r_h / (eta * eta) -
         (n - 1.0) * (n - 2.0) * ep * ep / (eta * eta);
}

double radial_r1(const WarpedCylinder& w, double t) {
  const int n = w.n;
  double eta = w.warp.eta(t), ep = w.warp.deta(t), epp = w.warp.d2eta(t);
  double r = radial_scalar_curvature(w, t);
  double radial = -(n - 1.0) * epp / eta;
  double low = radial - r / n;
  for (double mu : w.base_ricci_eigs) {
    double body = mu / (eta * eta) - epp / eta - (n - 2.0) * ep * ep / (eta * eta);
    low = std::min(low, body - r / n);
  }
  return -low;
}

BasineqReport basineq_verify(const WarpedCylinder& w, const HarmonicRadialForm& f, double eps,
                             double t0, double t1, int npts) {
  if (eps <= 0) throw std::invalid_argument("basineq_verify: eps must be positive");
  if (npts < 16) throw std::invalid_argument("basineq_verify: grid too coarse");
  const int n = w.n;
  const double p = (n - 2.0) / (n - 1.0);
  const double h = (t1 - t0) / (npts - 1.0);
  auto xi_norm = [&](double t) {
    return std::abs(f.c2) * std::pow(w.warp.eta(t), 1.0 - n);
  };
  auto fe_p = [&](double t) {
    double x = xi_norm(t);
    return std::pow(std::sqrt(x * x + eps * eps), p);
  };
  BasineqReport rep;
  rep.eps = eps;
  rep.npts = npts;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.min_slack = std::numeric_limits<double>::infinity();
  std::vector<double> u(npts);
  for (int i = 0; i < npts; ++i) u[i] = fe_p(t0 + i * h);
  for (int i = 2; i < npts - 2; ++i) {
    double t = t0 + i * h;
    double up = (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) / (12.0 * h);
    double upp =
        (-u[i + 2] + 16.0 * u[i + 1] - 30.0 * u[i] + 16.0 * u[i - 1] - u[i - 2]) / (12.0 * h * h);
    // geometer's radial Laplacian on the warped product
    double lap = -upp - (n - 1.0) * (w.warp.deta(t) / w.warp.eta(t)) * up;
    double x = xi_norm(t);
    double fe = std::sqrt(x * x + eps * eps);
    double weight = std::pow(fe, p - 2.0) * x * x;
    double lhs = lap + (n - 2.0) / (n * (n - 1.0)) * radial_scalar_curvature(w, t) * weight;
    double rhs = (n - 2.0) / (n - 1.0) * radial_r1(w, t) * weight;
    double diff = lhs - rhs;
    rep.max_violation = std::max(rep.max_violation, diff);
    rep.min_slack = std::min(rep.min_slack, diff);
  }
  return rep;
}

}  // namespace pinch
