#pragma once

#include <vector>

#include "pinch/curvature.hpp"

namespace pinch {

// Warp profiles with closed-form derivatives. sqrt_alpha_plus_t2 is the
// cosh cylinder alpha cosh^2(u)(h + du^2) written as a warped product
// eta^2(t) h + dt^2 with t = sqrt(alpha) sinh(u).
struct Warp {
  enum class Kind { constant, two_plus_sin, cosh, sqrt_alpha_plus_t2 };
  Kind kind = Kind::constant;
  double param = 1.0;  // the constant value, or alpha

  double eta(double t) const;
  double deta(double t) const;
  double d2eta(double t) const;
  bool is_constant() const { return kind == Kind::constant; }

  static Warp constant(double c) { return {Kind::constant, c}; }
  static Warp two_plus_sin() { return {Kind::two_plus_sin, 0}; }
  static Warp cosh_warp() { return {Kind::cosh, 0}; }
  static Warp cosh_cylinder(double alpha) { return {Kind::sqrt_alpha_plus_t2, alpha}; }
};

// N^{n-1} x R with metric eta^2(t) h + dt^2. The base enters through its
// Ricci endomorphism eigenvalues (constant over N for our models).
struct WarpedCylinder {
  int n = 0;  // total dimension
  Warp warp;
  std::vector<double> base_ricci_eigs;  // size n-1

  static WarpedCylinder over_model(const ModelSpace& base, Warp warp);
};

// Radial harmonic 1-form xi = d Phi, Phi = c1 + c2 \int_0^t eta^{1-n}.
struct HarmonicRadialForm {
  double c1 = 0;
  double c2 = 1;
};

struct HessianData {
  double a = 0;               // c2 eta' eta^{-n}
  double tangential_eig = 0;  // a, multiplicity n-1
  double radial_eig = 0;      // -(n-1) a
  double trace = 0;           // exactly zero
};
HessianData hessian_structure(const WarpedCylinder& w, const HarmonicRadialForm& f, double t);

// |d|xi||^2 / |grad xi|^2 at non-critical warp points; equals (n-1)/n.
struct KatoReport {
  bool defined = false;  // false iff eta is constant (every point critical)
  double expected = 0;   // (n-1)/n
  double max_deviation = 0;
  int evaluated = 0;
  int skipped = 0;  // critical points of eta
};
KatoReport kato_ratio(const WarpedCylinder& w, const HarmonicRadialForm& f, double t0, double t1,
                      int npts);

// Pointwise curvature of the warped metric in closed form.
double radial_scalar_curvature(const WarpedCylinder& w, double t);
double radial_r1(const WarpedCylinder& w, double t);

// Finite-difference check of the degree-1 pointwise inequality
//   Delta f_eps^p + (n-2)/(n(n-1)) R_g f_eps^{p-2}|xi|^2
//     <= (n-2)/(n-1) r_1 f_eps^{p-2}|xi|^2,
// p = (n-2)/(n-1), f_eps = sqrt(|xi|^2 + eps^2); geometer's Laplacian
// Delta u = -eta^{1-n} (eta^{n-1} u')'.
struct BasineqReport {
  double eps = 0;
  double max_violation = 0;  // max over interior grid of LHS - RHS
  double min_slack = 0;      // most negative LHS - RHS
  int npts = 0;
};
BasineqReport basineq_verify(const WarpedCylinder& w, const HarmonicRadialForm& f, double eps,
                             double t0, double t1, int npts);

}  // namespace pinch
