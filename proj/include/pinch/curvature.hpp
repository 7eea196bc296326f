#pragma once

#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pinch/double_form.hpp"

namespace pinch {

// Model factors are specified by curvature, never by radius or metric
// multiple: S(m, kappa) has sectional curvature kappa, CP(m, c) holomorphic
// sectional curvature c, Circ(T) length T.
struct SphereFactor {
  int dim = 2;
  double curvature = 1.0;
};
struct ComplexProjectiveFactor {
  int m = 1;  // complex dimension; real dimension 2m
  double c = 4.0;
};
struct CircleFactor {
  double length = 1.0;
};

using Factor = std::variant<SphereFactor, ComplexProjectiveFactor, CircleFactor>;

struct ModelSpace {
  std::vector<Factor> factors;
  bool cosh_cylinder = false;  // warped cylinder over the (Einstein) factors
  double alpha = 1.0;          // cylinder scale: alpha cosh^2(t) (h + dt^2)

  int dimension() const;
  bool closed() const { return !cosh_cylinder; }
  ModelSpace base() const;  // the cylinder base as a closed model
  std::string describe() const;
};

// Metric scaling g -> lambda2 * g expressed on the curvature parameters.
ModelSpace rescale_metric(const ModelSpace& m, double lambda2);

struct AlgCurvature {
  int n = 0;
  DoubleForm rm;  // symmetric (2,2) double form satisfying first Bianchi
};

// Validates pair symmetry and the Bianchi residual.
AlgCurvature make_curvature(DoubleForm rm, double sym_tol = 1e-12, double bianchi_tol = 1e-10);

struct RicciDecomposition {
  int n = 0;
  double R = 0;
  Eigen::MatrixXd ric0;  // traceless Ricci
  DoubleForm weyl;       // (2,2), zero Ricci contraction

  double ric0_norm2() const { return ric0.squaredNorm(); }
  double weyl_norm2() const { return weyl.m.squaredNorm(); }
};

AlgCurvature curvature_of_model(const ModelSpace& m);
AlgCurvature curvature_of_model(const ModelSpace& m, double t);  // cylinder at parameter t

RicciDecomposition ricci_decompose(const AlgCurvature& rm);
DoubleForm reassemble(const RicciDecomposition& dec);

Eigen::MatrixXd ricci_of(const AlgCurvature& rm);
double scalar_curvature(const AlgCurvature& rm);

// -lambda_min of the traceless curvature operator on Λ^2; the curvature
// operator is nonnegative iff rho <= R/(n(n-1)).
double rho_of(const AlgCurvature& rm);

double volume_of(const ModelSpace& m);  // closed models only

// Closed forms of the cosh cylinder over an Einstein base with
// R_h = (n-2)(n-1) (the base is rescaled internally; the scale is recorded).
struct CoshCylinderData {
  int n = 0;
  double scalar = 0;     // R_g(t)
  Eigen::MatrixXd ric0;  // displayed traceless-Ricci matrix, frame (base, dt)
  double r1 = 0;         // (r1(h) + 2(n-2)(n-1)/n) / (alpha cosh^4 t)
  double r1_base = 0;    // r1(h) of the normalized base
  double base_scale = 0; // lambda2 applied to the base metric
};
CoshCylinderData cosh_cylinder_curvature(const ModelSpace& base, double alpha, double t);

double bianchi_residual(const DoubleForm& rm);  // relative to max coefficient
DoubleForm bianchi_project(DoubleForm rm);      // orthogonal, idempotent
AlgCurvature random_curvature(int n, std::mt19937_64& rng);

bool is_einstein(const RicciDecomposition& dec, double tol = 1e-10);

// Rescale a closed model so its scalar curvature equals d(d-1) for d = dim
// (the unit-sphere value); returns the model and the metric factor lambda2.
std::pair<ModelSpace, double> normalize_unit_scalar(const ModelSpace& m);

// Induced action of an orthogonal frame change on Λ^k (minor determinants);
// used to audit frame independence of pointwise quantities.
Eigen::MatrixXd lambda_power_matrix(const Eigen::MatrixXd& q, int k);
DoubleForm rotate_frame(const DoubleForm& a, const Eigen::MatrixXd& q);

}  // namespace pinch
