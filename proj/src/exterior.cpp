#include "pinch/exterior.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pinch {

KForm KForm::zero(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("KForm: bad degree");
  KForm f;
  f.n = n;
  f.k = k;
  f.c = Eigen::VectorXd::Zero(static_cast<int>(binomial(n, k)));
  return f;
}

KForm KForm::basis(int n, std::initializer_list<int> indices) {
  return basis_mask(n, mask_of_indices(std::vector<int>(indices)));
}

KForm KForm::basis_mask(int n, std::uint32_t mask) {
  const auto& lb = LexBasis::get(n);
  KForm f = zero(n, std::popcount(mask));
  f.c[lb.rank(mask)] = 1.0;
  return f;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.n != b.n) throw std::invalid_argument("wedge: dimension mismatch");
  if (a.k + b.k > a.n) throw std::invalid_argument("wedge: degree overflow");
  const auto& lb = LexBasis::get(a.n);
  KForm out = KForm::zero(a.n, a.k + b.k);
  const auto& am = lb.masks(a.k);
  const auto& bm = lb.masks(b.k);
  for (int i = 0; i < static_cast<int>(am.size()); ++i) {
    double ai = a.c[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < static_cast<int>(bm.size()); ++j) {
      double bj = b.c[j];
      if (bj == 0.0) continue;
      int s = merge_sign(am[i], bm[j]);
      if (s == 0) continue;
      out.c[lb.rank(am[i] | bm[j])] += s * ai * bj;
    }
  }
  return out;
}

KForm interior(const Eigen::VectorXd& v, const KForm& a) {
  if (v.size() != a.n) throw std::invalid_argument("interior: dimension mismatch");
  if (a.k < 1) throw std::invalid_argument("interior: degree must be >= 1");
  const auto& lb = LexBasis::get(a.n);
  KForm out = KForm::zero(a.n, a.k - 1);
  const auto& am = lb.masks(a.k);
  for (int i = 0; i < static_cast<int>(am.size()); ++i) {
    double ai = a.c[i];
    if (ai == 0.0) continue;
    std::uint32_t m = am[i];
    std::uint32_t rest = m;
    while (rest) {
      int b = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint32_t sub = m & ~(1u << b);
      out.c[lb.rank(sub)] += insert_sign(b + 1, sub) * v[b] * ai;
    }
  }
  return out;
}

Eigen::MatrixXd hodge_star_matrix(int n, int k) {
  const auto& lb = LexBasis::get(n);
  int dk = lb.dim(k);
  int dc = lb.dim(n - k);
  std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dc, dk);
  for (int i = 0; i < dk; ++i) {
    std::uint32_t m = lb.mask(k, i);
    std::uint32_t comp = full & ~m;
    s(lb.rank(comp), i) = merge_sign(m, comp);
  }
  return s;
}

KForm hodge_star(const KForm& a) {
  KForm out = KForm::zero(a.n, a.n - a.k);
  out.c = hodge_star_matrix(a.n, a.k) * a.c;
  return out;
}

double inner(const KForm& a, const KForm& b) {
  if (a.n != b.n || a.k != b.k) throw std::invalid_argument("inner: mismatched forms");
  return a.c.dot(b.c);
}

Eigen::MatrixXd half_degree_eigenbasis(int n, int sign) {
  if (n % 2 != 0 || (n / 2) % 2 != 0)
    throw std::invalid_argument("half_degree_eigenbasis: requires n ≡ 0 (mod 4)");
  if (sign != 1 && sign != -1) throw std::invalid_argument("half_degree_eigenbasis: sign must be ±1");
  const int k = n / 2;
  const auto& lb = LexBasis::get(n);
  const int d = lb.dim(k);
  const std::uint32_t full = (1u << n) - 1;
  Eigen::MatrixXd basis(d, d / 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  int col = 0;
  for (int i = 0; i < d; ++i) {
    std::uint32_t m = lb.mask(k, i);
    if (!(m & 1u)) continue;  // one representative per dual pair {I, I^c}
    std::uint32_t comp = full & ~m;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v[i] = inv_sqrt2;
    v[lb.rank(comp)] = sign * merge_sign(m, comp) * inv_sqrt2;
    basis.col(col++) = v;
  }
  return basis;
}

}  // namespace pinch
