#include <doctest.h>

#include <algorithm>
#include <random>

#include "pinch/curvature.hpp"
#include "pinch/double_form.hpp"

using namespace pinch;

namespace {

DoubleForm random_double_form(int n, int p, int q, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  DoubleForm d = DoubleForm::zero(n, p, q);
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) d.m(i, j) = gauss(rng);
  return d;
}

DoubleForm random_symmetric(int n, int k, std::mt19937_64& rng) {
  DoubleForm d = random_double_form(n, k, k, rng);
  d.m = 0.5 * (d.m + d.m.transpose()).eval();
  d.symmetric = true;
  return d;
}

// all index subsets of size t from the sorted list `from`
void tuples(const std::vector<int>& from, int t, std::vector<std::vector<int>>& out) {
  out.clear();
  std::vector<int> pick(t);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == t) {
      out.push_back(pick);
      return;
    }
    for (int i = start; i < static_cast<int>(from.size()); ++i) {
      pick[depth] = from[i];
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  if (t == 0) out.push_back({});
}

// Shuffle-sum oracle for the double-form product, written against tuple
// evaluation and insertion-sort parities, independent of the lexicographic
// pairing used by the implementation.
double kn_oracle_entry(const DoubleForm& a, const DoubleForm& b, const std::vector<int>& xs,
                       const std::vector<int>& ys) {
  std::vector<std::vector<int>> row_subsets, col_subsets;
  tuples(xs, a.p, row_subsets);
  tuples(ys, a.q, col_subsets);
  double total = 0;
  for (const auto& s : row_subsets) {
    std::vector<int> s_rest;
    for (int v : xs)
      if (std::find(s.begin(), s.end(), v) == s.end()) s_rest.push_back(v);
    std::vector<int> row_cat = s;
    row_cat.insert(row_cat.end(), s_rest.begin(), s_rest.end());
    int row_sign = sort_sign(row_cat);
    for (const auto& t : col_subsets) {
      std::vector<int> t_rest;
      for (int v : ys)
        if (std::find(t.begin(), t.end(), v) == t.end()) t_rest.push_back(v);
      std::vector<int> col_cat = t;
      col_cat.insert(col_cat.end(), t_rest.begin(), t_rest.end());
      int col_sign = sort_sign(col_cat);
      total += row_sign * col_sign * evaluate(a, s, t) * evaluate(b, s_rest, t_rest);
    }
  }
  return total;
}

void check_against_oracle(const DoubleForm& a, const DoubleForm& b, double tol) {
  DoubleForm prod = kn_product(a, b);
  const auto& lb = LexBasis::get(a.n);
  double scale = std::max(1.0, prod.m.cwiseAbs().maxCoeff());
  for (int i = 0; i < prod.rows(); ++i)
    for (int j = 0; j < prod.cols(); ++j) {
      double oracle = kn_oracle_entry(a, b, mask_indices(lb.mask(prod.p, i)),
                                      mask_indices(lb.mask(prod.q, j)));
      CHECK(std::abs(prod.m(i, j) - oracle) <= tol * scale);
    }
}

}  // namespace

TEST_CASE("g.g doubles the identity on two-forms") {
  for (int n : {4, 6}) {
    DoubleForm gg = kn_product(metric(n), metric(n));
    CHECK((gg.m - 2.0 * metric_power(n, 2).m).cwiseAbs().maxCoeff() <= 1e-14);
    Eigen::MatrixXd op = as_operator(gg);
    int d = static_cast<int>(binomial(n, 2));
    CHECK((op - 2.0 * Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("repeated metric products rebuild the metric powers") {
  for (int n : {5, 6}) {
    DoubleForm acc = metric(n);
    double factorial = 1.0;
    for (int j = 2; j <= 4; ++j) {
      acc = kn_product(acc, metric(n));
      factorial *= j;
      CHECK((acc.m / factorial - metric_power(n, j).m).cwiseAbs().maxCoeff() <= 1e-13);
    }
  }
}

TEST_CASE("product against the shuffle-sum oracle") {
  std::mt19937_64 rng(31);
  check_against_oracle(random_double_form(4, 1, 1, rng), random_double_form(4, 1, 1, rng), 1e-13);
  check_against_oracle(random_double_form(5, 2, 1, rng), random_double_form(5, 1, 2, rng), 1e-13);
  check_against_oracle(random_double_form(6, 2, 2, rng), random_double_form(6, 1, 1, rng), 1e-13);
}

TEST_CASE("fast metric-power path matches the generic product") {
  std::mt19937_64 rng(37);
  for (int n : {5, 6, 8}) {
    DoubleForm t = random_symmetric(n, 2, rng);
    for (int j = 1; j <= std::min(3, n - 2); ++j) {
      DoubleForm fast = mul_metric_power(j, t);
      DoubleForm slow = kn_product(metric_power(n, j), t);
      CHECK((fast.m - slow.m).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("product is associative on random small double forms") {
  std::mt19937_64 rng(41);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + static_cast<int>(rng() % 3);  // n <= 6
    DoubleForm a = random_double_form(n, 1, 1, rng);
    DoubleForm b = random_double_form(n, 1, 1, rng);
    DoubleForm c = random_double_form(n, 1, 1, rng);
    DoubleForm left = kn_product(kn_product(a, b), c);
    DoubleForm right = kn_product(a, kn_product(b, c));
    double scale = std::max(1.0, left.m.cwiseAbs().maxCoeff());
    worst = std::max(worst, (left.m - right.m).cwiseAbs().maxCoeff() / scale);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("product commutes on symmetric even-bidegree arguments") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 5 + static_cast<int>(rng() % 2);
    DoubleForm a = random_symmetric(n, 2, rng);
    DoubleForm b = random_symmetric(n, 1, rng);
    DoubleForm ab = kn_product(a, b), ba = kn_product(b, a);
    CHECK((ab.m - ba.m).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + ab.m.cwiseAbs().maxCoeff()));
  }
  DoubleForm a = random_symmetric(8, 2, rng);
  DoubleForm b = random_symmetric(8, 2, rng);
  DoubleForm ab = kn_product(a, b), ba = kn_product(b, a);
  CHECK((ab.m - ba.m).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + ab.m.cwiseAbs().maxCoeff()));
}

TEST_CASE("contraction of the squared metric") {
  for (int n : {4, 7, 10}) {
    DoubleForm half_g2 = metric_power(n, 2);  // g^2/2
    DoubleForm c = contraction(half_g2);
    CHECK((c.m - (n - 1.0) * metric(n).m).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("double contraction of a model curvature gives the scalar curvature") {
  // round-sphere calibration: operator kappa Id on two-forms, R = n(n-1) kappa
  for (int n : {4, 6}) {
    ModelSpace m;
    m.factors.push_back(SphereFactor{n, 1.0});
    AlgCurvature rm = curvature_of_model(m);
    double c2 = contraction_power(rm.rm, 2).m(0, 0);
    CHECK(c2 == doctest::Approx(n * (n - 1.0)).epsilon(1e-13));
  }
}

TEST_CASE("contraction is adjoint to multiplication by the metric") {
  std::mt19937_64 rng(47);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng() % 4);
    int p = 1 + static_cast<int>(rng() % 2);
    int q = 1 + static_cast<int>(rng() % 2);
    DoubleForm a = random_double_form(n, p, q, rng);
    DoubleForm b = random_double_form(n, p - 1, q - 1, rng);
    double lhs = inner(contraction(a), b);
    double rhs = inner(a, mul_metric_power(1, b));
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("norm identity for traceless forms") {
  std::mt19937_64 rng(53);

  SUBCASE("traceless (1,1) forms") {
    for (int n : {5, 6, 8, 10}) {
      DoubleForm t = random_symmetric(n, 1, rng);
      t.m -= (t.m.trace() / n) * Eigen::MatrixXd::Identity(n, n);
      for (int j = 0; j <= n - 2; ++j) CHECK(norm_identity_residual(t, j) <= 1e-10);
    }
  }

  SUBCASE("traceless (2,2) forms, factor binom(n-4, j)") {
    for (int n : {6, 8, 10}) {
      DoubleForm t = remove_metric_image(random_symmetric(n, 2, rng));
      CHECK(contraction(t).m.cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(norm_identity_residual(t, 1) <= 1e-10);  // n=6: factor binom(2,1) = 2
      if (n >= 8) CHECK(norm_identity_residual(t, 2) <= 1e-10);
    }
  }

  SUBCASE("traceless (3,3) forms, factor binom(4,4) = 1 at n = 10") {
    DoubleForm t = remove_metric_image(random_symmetric(10, 3, rng));
    CHECK(contraction(t).m.cwiseAbs().maxCoeff() <= 1e-11);
    CHECK(norm_identity_residual(t, 4) <= 1e-9);
  }

  SUBCASE("j = 0 is exact") {
    DoubleForm t = random_symmetric(6, 1, rng);
    t.m -= (t.m.trace() / 6) * Eigen::MatrixXd::Identity(6, 6);
    CHECK(norm_identity_residual(t, 0) <= 1e-15);
  }

  SUBCASE("the product with g^{n-2k+1} kills traceless forms") {
    for (int n : {5, 6}) {
      DoubleForm t = random_symmetric(n, 1, rng);
      t.m -= (t.m.trace() / n) * Eigen::MatrixXd::Identity(n, n);
      DoubleForm top = mul_metric_power(n - 1, t);
      CHECK(top.m.cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("norm identity over every admissible (n, k, j)") {
  std::mt19937_64 rng(101);
  for (int n : {6, 8, 10}) {
    for (int k = 1; 2 * k <= n; ++k) {
      DoubleForm t = remove_metric_image(random_symmetric(n, k, rng));
      REQUIRE(contraction(t).m.cwiseAbs().maxCoeff() <= 1e-10);
      for (int j = 0; j <= n - 2 * k; ++j) CHECK(norm_identity_residual(t, j) <= 1e-9);
    }
  }
  // invalid degrees are rejected
  DoubleForm t = random_symmetric(6, 2, rng);
  CHECK_THROWS_AS(norm_identity_residual(t, 3), std::invalid_argument);
  DoubleForm big = random_symmetric(6, 4, rng);
  CHECK_THROWS_AS(norm_identity_residual(big, 0), std::invalid_argument);
}

TEST_CASE("norm identity factor matches the explicit example values") {
  std::mt19937_64 rng(59);
  // n=6, k=2, j=1: <ctr(g.t)|t> = 2 |t|^2
  DoubleForm t = remove_metric_image(random_symmetric(6, 2, rng));
  double lhs = inner(contraction(mul_metric_power(1, t)), t);
  CHECK(lhs == doctest::Approx(2.0 * norm2(t)).epsilon(1e-10));
}

TEST_CASE("metric-power products of traceless matrices stay trace-free") {
  std::mt19937_64 rng(61);
  for (int n : {5, 6, 8}) {
    DoubleForm t = random_symmetric(n, 1, rng);
    t.m -= (t.m.trace() / n) * Eigen::MatrixXd::Identity(n, n);
    for (int k = 2; k <= 4 && k <= n - 1; ++k) {
      DoubleForm lifted = mul_metric_power(k - 1, t);
      CHECK(std::abs(op_trace(lifted)) <= 1e-11);
    }
  }
}

TEST_CASE("operator view keeps the tensor norm convention") {
  std::mt19937_64 rng(67);

  SUBCASE("round-sphere curvature is kappa Id on two-forms") {
    ModelSpace m;
    m.factors.push_back(SphereFactor{4, 2.5});
    Eigen::MatrixXd op = as_operator(curvature_of_model(m).rm);
    CHECK((op - 2.5 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-13);
  }

  SUBCASE("Hilbert-Schmidt norm equals the quarter index sum") {
    ModelSpace m;
    m.factors.push_back(ComplexProjectiveFactor{2, 4.0});
    RicciDecomposition dec = ricci_decompose(curvature_of_model(m));
    double index_sum = 0;
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k)
          for (int l = 1; l <= 4; ++l) {
            double v = evaluate(dec.weyl, {i, j}, {k, l});
            index_sum += v * v;
          }
    CHECK(dec.weyl_norm2() == doctest::Approx(0.25 * index_sum).epsilon(1e-10));
  }

  SUBCASE("asymmetric input is rejected") {
    DoubleForm bad = random_double_form(4, 2, 2, rng);
    bad.m(0, 1) += 1.0;
    CHECK_THROWS_AS(as_operator(bad), std::invalid_argument);
  }

  SUBCASE("symmetric random (2,2) forms give symmetric operators") {
    DoubleForm t = random_symmetric(6, 2, rng);
    Eigen::MatrixXd op = as_operator(t);
    CHECK((op - op.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
