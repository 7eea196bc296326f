#pragma once

#include <Eigen/Dense>
#include <initializer_list>

#include "pinch/combinatorics.hpp"

namespace pinch {

// Exterior k-form over an oriented n-dimensional Euclidean tangent space in
// an orthonormal coframe. Coefficients are dense over the lexicographic
// basis; basis forms are orthonormal.
struct KForm {
  int n = 0;
  int k = 0;
  Eigen::VectorXd c;

  static KForm zero(int n, int k);
  static KForm basis(int n, std::initializer_list<int> indices);
  static KForm basis_mask(int n, std::uint32_t mask);
};

// Graded-commutative wedge: wedge(a,b) = (-1)^{pq} wedge(b,a).
KForm wedge(const KForm& a, const KForm& b);

// Interior product v ⌟ a, the adjoint of wedging with the dual covector:
// <interior(v,a), b> = <a, v♭ ∧ b>.
KForm interior(const Eigen::VectorXd& v, const KForm& a);

// Hodge star for the orientation θ^1∧…∧θ^n; ** = (-1)^{k(n-k)}.
KForm hodge_star(const KForm& a);
Eigen::MatrixXd hodge_star_matrix(int n, int k);

double inner(const KForm& a, const KForm& b);

// Orthonormal basis (columns) of the ±1 eigenspace of * on Λ^{n/2} for
// n ≡ 0 (mod 4); each has dimension binom(n, n/2)/2.
Eigen::MatrixXd half_degree_eigenbasis(int n, int sign);

}  // namespace pinch
