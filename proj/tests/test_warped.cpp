#include <doctest.h>

#include <cmath>
#include <vector>

#include "pinch/warped.hpp"

using namespace pinch;

namespace {

ModelSpace sphere(int d, double kappa = 1.0) {
  ModelSpace m;
  m.factors.push_back(SphereFactor{d, kappa});
  return m;
}

// cumulative primitive of eta^{1-n} by Simpson, for the harmonicity check
std::vector<double> integrate_phi(const WarpedCylinder& w, double c1, double c2, double t0,
                                  double h, int npts) {
  std::vector<double> phi(npts);
  auto f = [&](double t) { return c2 * std::pow(w.warp.eta(t), 1.0 - w.n); };
  double acc = c1;
  phi[0] = acc;
  for (int i = 1; i < npts; ++i) {
    double a = t0 + (i - 1) * h, b = t0 + i * h;
    acc += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    phi[i] = acc;
  }
  return phi;
}

}  // namespace

TEST_CASE("hessian eigenstructure of the radial harmonic form") {
  SUBCASE("flat cylinder: the primitive is linear") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::constant(1.0));
    HessianData h = hessian_structure(w, {0.0, 1.0}, 0.3);
    CHECK(h.a == 0.0);
    CHECK(h.trace == 0.0);
  }
  SUBCASE("cosh warp is critical at t = 0") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::cosh_warp());
    CHECK(hessian_structure(w, {0.0, 1.0}, 0.0).a == 0.0);
  }
  SUBCASE("2 + sin t warp, n = 5") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::two_plus_sin());
    CHECK(std::abs(hessian_structure(w, {0.0, 1.0}, 0.5 * std::acos(-1.0)).a) <= 1e-16);
    HessianData h0 = hessian_structure(w, {0.0, 1.0}, 0.0);
    CHECK(h0.a == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-15));  // eta(0) = 2
    CHECK(h0.radial_eig == doctest::Approx(-4.0 * h0.a).epsilon(1e-15));
    CHECK(h0.trace == 0.0);
  }
}

TEST_CASE("harmonicity of the radial primitive") {
  // eta^{n-1} Phi' is the constant c2 by construction; the finite-difference
  // Laplacian of the Simpson primitive must vanish to grid accuracy
  WarpedCylinder w = WarpedCylinder::over_model(sphere(3), Warp::two_plus_sin());
  const double c2 = 1.3;
  for (double t : {-1.0, 0.2, 2.4}) {
    double lhs = std::pow(w.warp.eta(t), w.n - 1.0) * c2 * std::pow(w.warp.eta(t), 1.0 - w.n);
    CHECK(lhs == doctest::Approx(c2).epsilon(1e-14));
  }
  const int npts = 4001;
  const double t0 = -2.0, h = 4.0 / (npts - 1);
  std::vector<double> phi = integrate_phi(w, 0.4, c2, t0, h, npts);
  double worst = 0;
  for (int i = 1; i + 1 < npts; ++i) {
    double t = t0 + i * h;
    double pp = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
    double pd = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
    double lap = -pp - (w.n - 1.0) * w.warp.deta(t) / w.warp.eta(t) * pd;
    worst = std::max(worst, std::abs(lap));
  }
  CHECK(worst <= 10.0 * h * h);
}

TEST_CASE("laplacian sign convention on the flat cylinder") {
  // positive-spectrum convention: constants map to zero, t^2 maps to -2
  WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::constant(1.0));
  const int npts = 2001;
  const double t0 = -1.0, h = 2.0 / (npts - 1);
  auto laplacian_at = [&](auto&& f, int i) {
    double t = t0 + i * h;
    double fpp = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    return -fpp - (w.n - 1.0) * w.warp.deta(t) / w.warp.eta(t) * fd;
  };
  CHECK(std::abs(laplacian_at([](double) { return 3.0; }, npts / 2)) <= 1e-12);
  CHECK(laplacian_at([](double t) { return t * t; }, npts / 2) ==
        doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("refined Kato ratio at degree one") {
  SUBCASE("2 + sin t in dimension 4: ratio 3/4") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(3), Warp::two_plus_sin());
    KatoReport rep = kato_ratio(w, {0.0, 1.0}, -3.0, 3.0, 1501);
    CHECK(rep.defined);
    CHECK(rep.expected == doctest::Approx(0.75));
    CHECK(rep.max_deviation <= 1e-10);
  }
  SUBCASE("dimension 10: ratio 9/10") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(9), Warp::cosh_warp());
    KatoReport rep = kato_ratio(w, {0.0, 2.0}, -3.0, 3.0, 1501);
    CHECK(rep.defined);
    CHECK(rep.expected == doctest::Approx(0.9));
    CHECK(rep.max_deviation <= 1e-10);
  }
  SUBCASE("constant warp leaves the ratio undefined") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::constant(2.0));
    KatoReport rep = kato_ratio(w, {0.0, 1.0}, -1.0, 1.0, 101);
    CHECK_FALSE(rep.defined);
    CHECK(rep.skipped == 101);
  }
}

TEST_CASE("warped curvature closed forms") {
  SUBCASE("flat cylinder keeps the base scalar curvature") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::constant(1.0));
    CHECK(radial_scalar_curvature(w, 0.7) == doctest::Approx(12.0).epsilon(1e-13));
    CHECK(radial_r1(w, 0.7) == doctest::Approx(12.0 / 5.0).epsilon(1e-13));
  }
  SUBCASE("cosh cylinder scalar matches the displayed decay") {
    const int n = 6;
    const double alpha = 1.4;
    WarpedCylinder w = WarpedCylinder::over_model(sphere(n - 1), Warp::cosh_cylinder(alpha));
    for (double u : {0.0, 0.9}) {
      double tau = std::sqrt(alpha) * std::sinh(u);
      double c4 = std::pow(std::cosh(u), 4);
      CHECK(radial_scalar_curvature(w, tau) ==
            doctest::Approx((n - 1.0) * (n - 4.0) / (alpha * c4)).epsilon(1e-12));
      CHECK(radial_r1(w, tau) ==
            doctest::Approx(2.0 * (n - 2.0) * (n - 1.0) / (n * alpha * c4)).epsilon(1e-12));
    }
  }
}

TEST_CASE("pointwise inequality on radial models") {
  SUBCASE("cosh cylinder near the equality case") {
    for (int n : {4, 6}) {
      WarpedCylinder w = WarpedCylinder::over_model(sphere(n - 1), Warp::cosh_cylinder(1.0));
      BasineqReport rep = basineq_verify(w, {0.0, 1.0}, 1e-3, -15.0, 15.0, 10000);
      CHECK(rep.max_violation <= 1e-6);
      CHECK(rep.max_violation >= -1e-3);  // near equality, not wildly slack
    }
  }
  SUBCASE("flat cylinder over a round base sits exactly on the equality") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(5), Warp::constant(1.0));
    BasineqReport rep = basineq_verify(w, {0.0, 1.0}, 1e-3, -4.0, 4.0, 4000);
    CHECK(std::abs(rep.max_violation) <= 1e-10);
    CHECK(std::abs(rep.min_slack) <= 1e-10);
  }
  SUBCASE("large epsilon keeps the inequality with strict slack") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(5), Warp::cosh_cylinder(1.0));
    BasineqReport rep = basineq_verify(w, {0.0, 1.0}, 0.5, -12.0, 12.0, 6000);
    CHECK(rep.max_violation <= 1e-9);
    CHECK(rep.min_slack < -1e-4);  // genuinely strict away from the limit
  }
  SUBCASE("epsilon far above sup|xi| trivializes the inequality") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(5), Warp::cosh_cylinder(1.0));
    // sup|xi| = 1 here; the weighted terms shrink like eps^{p-2}
    BasineqReport rep = basineq_verify(w, {0.0, 1.0}, 50.0, -12.0, 12.0, 4000);
    CHECK(rep.max_violation <= 1e-9);
  }
  SUBCASE("epsilon must be positive") {
    WarpedCylinder w = WarpedCylinder::over_model(sphere(4), Warp::constant(1.0));
    CHECK_THROWS_AS(basineq_verify(w, {0.0, 1.0}, 0.0, -1.0, 1.0, 100), std::invalid_argument);
  }
}
