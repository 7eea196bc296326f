#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pinch/combinatorics.hpp"

namespace pinch {

// (p,q) double form over an orthonormal frame: a dense matrix of
// coefficients over the pair of lexicographic bases. A symmetric (k,k)
// double form carries the same data as a symmetric operator on Λ^k; the
// Hilbert–Schmidt norm of that operator is norm2() below.
struct DoubleForm {
  int n = 0;
  int p = 0;
  int q = 0;
  Eigen::MatrixXd m;
  bool symmetric = false;

  static DoubleForm zero(int n, int p, int q);
  int rows() const { return static_cast<int>(m.rows()); }
  int cols() const { return static_cast<int>(m.cols()); }
};

DoubleForm metric(int n);               // g as a (1,1) form
DoubleForm metric_power(int n, int j);  // g^j / j!, the identity on Λ^j

// Kulkarni–Nomizu (double-form wedge) product.
DoubleForm kn_product(const DoubleForm& a, const DoubleForm& b);

// (g^j / j!) . t  -- same as kn_product(metric_power(n,j), t), computed by
// subset splitting instead of the generic pairing.
DoubleForm mul_metric_power(int j, const DoubleForm& t);

// Adjoint of multiplication by g: <ctr a, b> = <a, g.b>.
DoubleForm contraction(const DoubleForm& a);
DoubleForm contraction_power(DoubleForm a, int times);

double inner(const DoubleForm& a, const DoubleForm& b);
double norm2(const DoubleForm& a);

// The (k,k) form as a symmetric matrix on Λ^k; rejects inputs whose
// asymmetry exceeds sym_tol relative to scale.
Eigen::MatrixXd as_operator(const DoubleForm& a, double sym_tol = 1e-10);
double op_trace(const DoubleForm& a);

// Relative residual of <ctr^j (g^j/j! . t) | t>/j! = binom(n-2k, j) |t|^2
// for a traceless symmetric (k,k) form (ctr t = 0).
double norm_identity_residual(const DoubleForm& t, int j);

// Orthogonal projection onto ker(ctr), i.e. removal of the g.(−) image
// (conjugate gradient on the normal equations).
DoubleForm remove_metric_image(const DoubleForm& t, int max_iters = 400, double tol = 1e-14);

// Evaluation on (possibly unsorted) index tuples, 0 on repeats. 1-based.
double evaluate(const DoubleForm& a, std::vector<int> row_idx, std::vector<int> col_idx);

}  // namespace pinch
