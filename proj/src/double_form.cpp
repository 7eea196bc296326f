#include "pinch/double_form.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pinch {

namespace {

// All masks of popcount t drawn from the set bits of `pool`; used by the
// metric-power fast path.
void subsets_of(std::uint32_t pool, int t, std::vector<std::uint32_t>& out) {
  out.clear();
  std::vector<int> bits = mask_indices(pool);
  int nb = static_cast<int>(bits.size());
  if (t > nb) return;
  std::vector<int> s(t);
  for (int i = 0; i < t; ++i) s[i] = i;
  while (true) {
    std::uint32_t m = 0;
    for (int v : s) m |= 1u << (bits[v] - 1);
    out.push_back(m);
    if (t == 0) break;
    int i = t - 1;
    while (i >= 0 && s[i] == nb - t + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < t; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace

DoubleForm DoubleForm::zero(int n, int p, int q) {
  if (n < 0 || p < 0 || q < 0 || p > n || q > n)
    throw std::invalid_argument("DoubleForm: bad bidegree");
  DoubleForm d;
  d.n = n;
  d.p = p;
  d.q = q;
  d.m = Eigen::MatrixXd::Zero(static_cast<int>(binomial(n, p)), static_cast<int>(binomial(n, q)));
  return d;
}

DoubleForm metric(int n) { return metric_power(n, 1); }

DoubleForm metric_power(int n, int j) {
  DoubleForm d = DoubleForm::zero(n, j, j);
  d.m.setIdentity();
  d.symmetric = true;
  return d;
}

DoubleForm kn_product(const DoubleForm& a, const DoubleForm& b) {
  if (a.n != b.n) throw std::invalid_argument("kn_product: dimension mismatch");
  if (a.p + b.p > a.n || a.q + b.q > a.n)
    throw std::invalid_argument("kn_product: bidegree overflow");
  const auto& lb = LexBasis::get(a.n);
  DoubleForm out = DoubleForm::zero(a.n, a.p + b.p, a.q + b.q);
  const auto& ra = lb.masks(a.p);
  const auto& rb = lb.masks(b.p);
  const auto& ca = lb.masks(a.q);
  const auto& cb = lb.masks(b.q);
  for (int i = 0; i < static_cast<int>(ra.size()); ++i)
    for (int i2 = 0; i2 < static_cast<int>(rb.size()); ++i2) {
      int sr = merge_sign(ra[i], rb[i2]);
      if (sr == 0) continue;
      int row = lb.rank(ra[i] | rb[i2]);
      for (int j = 0; j < static_cast<int>(ca.size()); ++j) {
        double aij = a.m(i, j);
        if (aij == 0.0) continue;
        for (int j2 = 0; j2 < static_cast<int>(cb.size()); ++j2) {
          double bij = b.m(i2, j2);
          if (bij == 0.0) continue;
          int sc = merge_sign(ca[j], cb[j2]);
          if (sc == 0) continue;
          out.m(row, lb.rank(ca[j] | cb[j2])) += sr * sc * aij * bij;
        }
      }
    }
  out.symmetric = a.symmetric && b.symmetric && out.p == out.q;
  return out;
}

DoubleForm mul_metric_power(int j, const DoubleForm& t) {
  if (j == 0) return t;
  const int n = t.n;
  if (t.p + j > n || t.q + j > n)
    throw std::invalid_argument("mul_metric_power: bidegree overflow");
  const auto& lb = LexBasis::get(n);
  DoubleForm out = DoubleForm::zero(n, t.p + j, t.q + j);
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> arows, acols;
  // out_{I∪A, I∪B} += sign(I,A) sign(I,B) t_{A,B} over j-sets I disjoint
  // from A and B.
  for (std::uint32_t i_mask : lb.masks(j)) {
    std::uint32_t pool = full & ~i_mask;
    subsets_of(pool, t.p, arows);
    subsets_of(pool, t.q, acols);
    for (std::uint32_t a : arows) {
      int sa = merge_sign(i_mask, a);
      int row = lb.rank(i_mask | a);
      int ta = lb.rank(a);
      for (std::uint32_t b : acols) {
        double v = t.m(ta, lb.rank(b));
        if (v == 0.0) continue;
        out.m(row, lb.rank(i_mask | b)) += sa * merge_sign(i_mask, b) * v;
      }
    }
  }
  out.symmetric = t.symmetric && out.p == out.q;
  return out;
}

DoubleForm contraction(const DoubleForm& a) {
  if (a.p < 1 || a.q < 1) throw std::invalid_argument("contraction: bidegree must be >= (1,1)");
  const auto& lb = LexBasis::get(a.n);
  DoubleForm out = DoubleForm::zero(a.n, a.p - 1, a.q - 1);
  const auto& rows = lb.masks(a.p - 1);
  const auto& cols = lb.masks(a.q - 1);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
      double s = 0;
      for (int mth = 0; mth < a.n; ++mth) {
        std::uint32_t bit = 1u << mth;
        if ((rows[i] & bit) || (cols[j] & bit)) continue;
        double v = a.m(lb.rank(rows[i] | bit), lb.rank(cols[j] | bit));
        s += insert_sign(mth + 1, rows[i]) * insert_sign(mth + 1, cols[j]) * v;
      }
      out.m(i, j) = s;
    }
  out.symmetric = a.symmetric && out.p == out.q;
  return out;
}

DoubleForm contraction_power(DoubleForm a, int times) {
  for (int i = 0; i < times; ++i) a = contraction(a);
  return a;
}

double inner(const DoubleForm& a, const DoubleForm& b) {
  if (a.n != b.n || a.p != b.p || a.q != b.q)
    throw std::invalid_argument("inner: mismatched double forms");
  return a.m.cwiseProduct(b.m).sum();
}

double norm2(const DoubleForm& a) { return a.m.squaredNorm(); }

Eigen::MatrixXd as_operator(const DoubleForm& a, double sym_tol) {
  if (a.p != a.q) throw std::invalid_argument("as_operator: bidegree must be (k,k)");
  double scale = a.m.cwiseAbs().maxCoeff();
  double asym = (a.m - a.m.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0 && asym > sym_tol * scale)
    throw std::invalid_argument("as_operator: input is not symmetric within tolerance");
  return 0.5 * (a.m + a.m.transpose());
}

double op_trace(const DoubleForm& a) {
  if (a.p != a.q) throw std::invalid_argument("op_trace: bidegree must be (k,k)");
  return a.m.trace();
}

double norm_identity_residual(const DoubleForm& t, int j) {
  if (t.p != t.q) throw std::invalid_argument("norm_identity_residual: (k,k) input required");
  const int k = t.p;
  if (j < 0 || t.n - 2 * k < 0 || j > t.n - 2 * k)
    throw std::invalid_argument("norm_identity_residual: need 0 <= j <= n-2k");
  double t2 = norm2(t);
  if (t2 == 0.0) return 0.0;
  DoubleForm gt = mul_metric_power(j, t);
  double lhs = inner(contraction_power(gt, j), t);
  for (int i = 2; i <= j; ++i) lhs /= i;  // /j!
  double factor = static_cast<double>(binomial(t.n - 2 * k, j));
  return std::abs(lhs - factor * t2) / t2;
}

DoubleForm remove_metric_image(const DoubleForm& t, int max_iters, double tol) {
  // Minimize |t - g.x|^2 over (p-1,q-1) forms x; the residual has ctr = 0.
  if (t.p < 1 || t.q < 1) return t;
  DoubleForm x = DoubleForm::zero(t.n, t.p - 1, t.q - 1);
  DoubleForm r = contraction(t);  // L* t - L*L x with x = 0
  DoubleForm d = r;
  double rs = norm2(r);
  double scale = std::max(1.0, norm2(t));
  for (int it = 0; it < max_iters && rs > tol * tol * scale; ++it) {
    DoubleForm ld = mul_metric_power(1, d);
    double denom = norm2(ld);  // <d, L*L d> = |g.d|^2
    if (denom <= 0) break;
    double alpha = rs / denom;
    x.m += alpha * d.m;
    r.m -= alpha * contraction(ld).m;
    double rs_new = norm2(r);
    d.m = r.m + (rs_new / rs) * d.m;
    rs = rs_new;
  }
  DoubleForm out = t;
  out.m -= mul_metric_power(1, x).m;
  return out;
}

double evaluate(const DoubleForm& a, std::vector<int> row_idx, std::vector<int> col_idx) {
  if (static_cast<int>(row_idx.size()) != a.p || static_cast<int>(col_idx.size()) != a.q)
    throw std::invalid_argument("evaluate: tuple lengths must match bidegree");
  int sr = sort_sign(row_idx);
  if (sr == 0) return 0.0;
  int sc = sort_sign(col_idx);
  if (sc == 0) return 0.0;
  const auto& lb = LexBasis::get(a.n);
  return sr * sc * a.m(lb.rank(mask_of_indices(row_idx)), lb.rank(mask_of_indices(col_idx)));
}

}  // namespace pinch
