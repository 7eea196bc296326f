#pragma once

#include <random>
#include <vector>

#include "pinch/curvature.hpp"

namespace pinch {

// The curvature term of the Weitzenböck formula on k-forms, assembled from
// the Ricci decomposition as a symmetric operator on Λ^k.
struct BWOperator {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd mat;
  double R = 0;
  double ric0_norm2 = 0;
  double weyl_norm2 = 0;

  int dim() const { return static_cast<int>(mat.rows()); }
  double trace_mean() const { return mat.trace() / dim(); }
};

BWOperator build_bw(const RicciDecomposition& dec, int k);

struct EigCluster {
  double value = 0;
  int multiplicity = 0;
};
// Groups an ascending eigenvalue list; gaps below rel_tol * spectral radius
// are treated as degenerate.
std::vector<EigCluster> cluster_spectrum(const Eigen::VectorXd& eigs, double rel_tol = 1e-7);

struct RkData {
  double r_k = 0;               // -lambda_min of the traceless part
  double trace_mean = 0;
  Eigen::VectorXd eigenvalues;  // ascending, of the full operator
  std::vector<EigCluster> clusters;
};
RkData r_k_of(const BWOperator& op);

struct PinchConstants {
  int n = 0, k = 0;
  double a = 0, b = 0;        // coefficients of r_k^2 <= a|W|^2 + b|Ric0|^2
  double a_middle = 0;        // refined coefficient for k = n/2
  bool middle = false;        // k == n/2
  bool theorem_excluded = false;  // k == (n-1)/2: excluded from the norm theorem
};
PinchConstants pinch_constants(int n, int k);

struct EigenEndoReport {
  int d = 0;
  int trials = 0;
  double max_violation = 0;   // max of a^2 - (d-1)/d |A|^2 over trials
  int violations = 0;         // count beyond the 1e-9-scaled numerical guard
  double equality_slack = 0;  // |a^2 - (d-1)/d |A|^2| for the two-level matrix
};
EigenEndoReport lemma_eigenendo_check(int d, int trials, std::mt19937_64& rng);

struct RkLemmaReport {
  int n = 0, k = 0;
  double lhs2 = 0;       // r_k^2
  double rhs2 = 0;       // a|W|^2 + b|Ric0|^2 (or a_middle |W|^2 at k = n/2)
  double slack_rel = 0;  // (rhs2 - lhs2)/scale
  bool equality = false;
  double r_k = 0;
  double rho = 0;            // of the same tensor, for the Gallot-Meyer bound
  double gm_slack_rel = 0;   // (k(n-k) rho - r_k)/scale
};
RkLemmaReport lemma_rk_check(const AlgCurvature& rm, int k);

struct EqualitySpectrumReport {
  int n = 0, k = 0;
  double max_eigenvalue_error = 0;  // vs alpha j(k-j) + beta j(n-k-j) + gamma k(n-k)
  bool multiplicities_match = false;
  int distinct = 0;
  bool lowest_simple = false;
  bool two_level = false;  // exactly two eigenvalues with simple lowest
};
EqualitySpectrumReport equality_spectrum_check(double alpha, double beta, double gamma, int n, int k);

struct MiddleSplit {
  bool even_half = false;  // n/2 even: the star splits Λ^{n/2}
  std::vector<EigCluster> plus, minus;
  double r_plus = 0, r_minus = 0, r_mid = 0;
  bool even_multiplicities = true;  // n/2 odd: traceless spectrum pairs up
  double w_plus = 0;                // n = 4: largest eigenvalue of W+ on Λ+
};
MiddleSplit middle_degree_split(const BWOperator& op, const RicciDecomposition& dec);

}  // namespace pinch
