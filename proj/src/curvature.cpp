#include "pinch/curvature.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace pinch {

namespace {

int factor_dim(const Factor& f) {
  if (const auto* s = std::get_if<SphereFactor>(&f)) return s->dim;
  if (const auto* p = std::get_if<ComplexProjectiveFactor>(&f)) return 2 * p->m;
  return 1;
}

std::string fmt_num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Riemann tensor of a complex space form with holomorphic sectional
// curvature c, on coordinates [off+1, off+2m], J pairing (off+2i-1, off+2i).
void add_complex_space_form(DoubleForm& rm, int off, int m, double c) {
  const int d = 2 * m;
  const auto& lb = LexBasis::get(rm.n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < m; ++i) {
    j(2 * i, 2 * i + 1) = -1.0;
    j(2 * i + 1, 2 * i) = 1.0;
  }
  auto entry = [&](int a, int b, int e, int f) {
    double del = (a == e && b == f ? 1.0 : 0.0) - (a == f && b == e ? 1.0 : 0.0);
    return 0.25 * c * (del + j(a, e) * j(b, f) - j(a, f) * j(b, e) + 2.0 * j(a, b) * j(e, f));
  };
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int e = 0; e < d; ++e)
        for (int f = e + 1; f < d; ++f) {
          double v = entry(a, b, e, f);
          if (v == 0.0) continue;
          std::uint32_t row = (1u << (off + a)) | (1u << (off + b));
          std::uint32_t col = (1u << (off + e)) | (1u << (off + f));
          rm.m(lb.rank(row), lb.rank(col)) += v;
        }
}

void add_constant_curvature_block(DoubleForm& rm, int off, int d, double kappa) {
  // kappa * g_V^2/2: identity on pairs inside the block
  const auto& lb = LexBasis::get(rm.n);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      std::uint32_t mk = (1u << (off + a)) | (1u << (off + b));
      int r = lb.rank(mk);
      rm.m(r, r) += kappa;
    }
}

}  // namespace

int ModelSpace::dimension() const {
  int n = 0;
  for (const auto& f : factors) n += factor_dim(f);
  return n + (cosh_cylinder ? 1 : 0);
}

ModelSpace ModelSpace::base() const {
  ModelSpace b;
  b.factors = factors;
  return b;
}

std::string ModelSpace::describe() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    const auto& f = factors[i];
    if (const auto* sp = std::get_if<SphereFactor>(&f))
      s += "S(" + std::to_string(sp->dim) + "," + fmt_num(sp->curvature) + ")";
    else if (const auto* cp = std::get_if<ComplexProjectiveFactor>(&f))
      s += "CP(" + std::to_string(cp->m) + "," + fmt_num(cp->c) + ")";
    else
      s += "Circ(" + fmt_num(std::get<CircleFactor>(f).length) + ")";
  }
  if (cosh_cylinder) s = "CoshCyl(" + s + ", alpha=" + fmt_num(alpha) + ")";
  return s;
}

ModelSpace rescale_metric(const ModelSpace& m, double lambda2) {
  if (lambda2 <= 0) throw std::invalid_argument("rescale_metric: lambda2 must be positive");
  ModelSpace out = m;
  for (auto& f : out.factors) {
    if (auto* s = std::get_if<SphereFactor>(&f))
      s->curvature /= lambda2;
    else if (auto* p = std::get_if<ComplexProjectiveFactor>(&f))
      p->c /= lambda2;
    else
      std::get<CircleFactor>(f).length *= std::sqrt(lambda2);
  }
  return out;
}

AlgCurvature make_curvature(DoubleForm rm, double sym_tol, double bianchi_tol) {
  if (rm.p != 2 || rm.q != 2) throw std::invalid_argument("make_curvature: bidegree (2,2) required");
  double scale = std::max(1.0, rm.m.cwiseAbs().maxCoeff());
  if ((rm.m - rm.m.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
    throw std::invalid_argument("make_curvature: pair symmetry violated");
  if (bianchi_residual(rm) > bianchi_tol)
    throw std::invalid_argument("make_curvature: first Bianchi identity violated");
  rm.symmetric = true;
  return AlgCurvature{rm.n, std::move(rm)};
}

AlgCurvature curvature_of_model(const ModelSpace& m) {
  if (m.cosh_cylinder)
    throw std::invalid_argument("curvature_of_model: cylinder requires a parameter value t");
  const int n = m.dimension();
  if (n < 2) throw std::invalid_argument("curvature_of_model: dimension too small");
  DoubleForm rm = DoubleForm::zero(n, 2, 2);
  int off = 0;
  for (const auto& f : m.factors) {
    if (const auto* s = std::get_if<SphereFactor>(&f)) {
      if (s->dim < 2 || s->curvature <= 0)
        throw std::invalid_argument("curvature_of_model: sphere factor needs dim >= 2, kappa > 0");
      add_constant_curvature_block(rm, off, s->dim, s->curvature);
    } else if (const auto* p = std::get_if<ComplexProjectiveFactor>(&f)) {
      if (p->m < 1 || p->c <= 0)
        throw std::invalid_argument("curvature_of_model: CP factor needs m >= 1, c > 0");
      add_complex_space_form(rm, off, p->m, p->c);
    } else if (std::get<CircleFactor>(f).length <= 0) {
      throw std::invalid_argument("curvature_of_model: circle length must be positive");
    }
    off += factor_dim(f);
  }
  return make_curvature(std::move(rm));
}

AlgCurvature curvature_of_model(const ModelSpace& m, double t) {
  if (!m.cosh_cylinder) return curvature_of_model(m);
  ModelSpace base = normalize_unit_scalar(m.base()).first;
  const int n = m.dimension();
  // curvature of the product cylinder h + dt^2 in the n-frame (base, dt)
  AlgCurvature base_rm = curvature_of_model(base);
  DoubleForm rm0 = DoubleForm::zero(n, 2, 2);
  {
    const auto& lb_small = LexBasis::get(n - 1);
    const auto& lb = LexBasis::get(n);
    for (int i = 0; i < base_rm.rm.rows(); ++i)
      for (int j = 0; j < base_rm.rm.cols(); ++j)
        rm0.m(lb.rank(lb_small.mask(2, i)), lb.rank(lb_small.mask(2, j))) = base_rm.rm.m(i, j);
  }
  // conformal change g = e^{2u} g0 with e^{2u} = alpha cosh^2 t:
  // op(g) = e^{-2u} (op(g0) - g0 . P), P = Hess u - du⊗du + |du|^2/2 g0
  const double up = std::tanh(t);
  const double upp = 1.0 / (std::cosh(t) * std::cosh(t));
  DoubleForm p = DoubleForm::zero(n, 1, 1);
  p.m.setIdentity();
  p.m *= 0.5 * up * up;
  p.m(n - 1, n - 1) += upp - up * up;
  p.symmetric = true;
  DoubleForm corr = kn_product(metric(n), p);
  double e2u = m.alpha * std::cosh(t) * std::cosh(t);
  DoubleForm rm = DoubleForm::zero(n, 2, 2);
  rm.m = (rm0.m - corr.m) / e2u;
  return make_curvature(std::move(rm));
}

RicciDecomposition ricci_decompose(const AlgCurvature& rm) {
  const int n = rm.n;
  if (n < 3) throw std::invalid_argument("ricci_decompose: n >= 3 required");
  RicciDecomposition dec;
  dec.n = n;
  Eigen::MatrixXd ric = ricci_of(rm);
  dec.R = ric.trace();
  dec.ric0 = ric - (dec.R / n) * Eigen::MatrixXd::Identity(n, n);
  DoubleForm ric0_form = DoubleForm::zero(n, 1, 1);
  ric0_form.m = dec.ric0;
  ric0_form.symmetric = true;
  dec.weyl = DoubleForm::zero(n, 2, 2);
  dec.weyl.m = rm.rm.m - (dec.R / (2.0 * n * (n - 1))) * metric_power(n, 2).m * 2.0 -
               mul_metric_power(1, ric0_form).m / (n - 2);
  dec.weyl.symmetric = true;
  return dec;
}

DoubleForm reassemble(const RicciDecomposition& dec) {
  const int n = dec.n;
  DoubleForm ric0_form = DoubleForm::zero(n, 1, 1);
  ric0_form.m = dec.ric0;
  DoubleForm out = DoubleForm::zero(n, 2, 2);
  out.m = dec.weyl.m + mul_metric_power(1, ric0_form).m / (n - 2) +
          (dec.R / (2.0 * n * (n - 1))) * 2.0 * metric_power(n, 2).m;
  out.symmetric = true;
  return out;
}

Eigen::MatrixXd ricci_of(const AlgCurvature& rm) { return contraction(rm.rm).m; }

double scalar_curvature(const AlgCurvature& rm) { return contraction_power(rm.rm, 2).m(0, 0); }

double rho_of(const AlgCurvature& rm) {
  const int n = rm.n;
  Eigen::MatrixXd op = as_operator(rm.rm);
  double mean = scalar_curvature(rm) / (n * (n - 1.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op, Eigen::EigenvaluesOnly);
  return -(es.eigenvalues()(0) - mean);
}

double volume_of(const ModelSpace& m) {
  if (m.cosh_cylinder) throw std::invalid_argument("volume_of: cylinder has infinite volume");
  const double pi = std::numbers::pi;
  double v = 1.0;
  for (const auto& f : m.factors) {
    if (const auto* s = std::get_if<SphereFactor>(&f)) {
      if (s->dim < 2 || s->curvature <= 0)
        throw std::invalid_argument("volume_of: sphere factor needs dim >= 2, kappa > 0");
      double unit = 2.0 * std::pow(pi, 0.5 * (s->dim + 1)) / std::tgamma(0.5 * (s->dim + 1));
      v *= std::pow(s->curvature, -0.5 * s->dim) * unit;
    } else if (const auto* p = std::get_if<ComplexProjectiveFactor>(&f)) {
      if (p->m < 1 || p->c <= 0)
        throw std::invalid_argument("volume_of: CP factor needs m >= 1, c > 0");
      v *= std::pow(4.0 / p->c, p->m) * std::pow(pi, p->m) / std::tgamma(p->m + 1.0);
    } else {
      if (std::get<CircleFactor>(f).length <= 0)
        throw std::invalid_argument("volume_of: circle length must be positive");
      v *= std::get<CircleFactor>(f).length;
    }
  }
  return v;
}

CoshCylinderData cosh_cylinder_curvature(const ModelSpace& base, double alpha, double t) {
  if (!base.closed()) throw std::invalid_argument("cosh_cylinder_curvature: base must be closed");
  if (alpha <= 0) throw std::invalid_argument("cosh_cylinder_curvature: alpha must be positive");
  auto [norm_base, lambda2] = normalize_unit_scalar(base);
  const int d = norm_base.dimension();
  const int n = d + 1;
  RicciDecomposition dec = ricci_decompose(curvature_of_model(norm_base));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dec.ric0, Eigen::EigenvaluesOnly);
  double r1_base = -es.eigenvalues()(0);

  CoshCylinderData out;
  out.n = n;
  out.base_scale = lambda2;
  out.r1_base = r1_base;
  double c4 = std::pow(std::cosh(t), 4);
  out.scalar = (n - 1.0) * (n - 4.0) / (alpha * c4);
  out.r1 = (r1_base + 2.0 * (n - 2.0) * (n - 1.0) / n) / (alpha * c4);
  out.ric0 = Eigen::MatrixXd::Zero(n, n);
  out.ric0.topLeftCorner(d, d) =
      dec.ric0 + (2.0 * (n - 2.0) / n) * Eigen::MatrixXd::Identity(d, d);
  out.ric0(n - 1, n - 1) = -2.0 * (n - 2.0) * (n - 1.0) / n;
  return out;
}

double bianchi_residual(const DoubleForm& rm) {
  if (rm.p != 2 || rm.q != 2) throw std::invalid_argument("bianchi_residual: (2,2) input required");
  const auto& lb = LexBasis::get(rm.n);
  auto pr = [&](int a, int b) { return lb.rank((1u << a) | (1u << b)); };
  double worst = 0;
  for (int i = 0; i < rm.n; ++i)
    for (int j = i + 1; j < rm.n; ++j)
      for (int k = j + 1; k < rm.n; ++k)
        for (int l = k + 1; l < rm.n; ++l) {
          double b = rm.m(pr(i, j), pr(k, l)) + rm.m(pr(j, k), pr(i, l)) - rm.m(pr(i, k), pr(j, l));
          worst = std::max(worst, std::abs(b));
        }
  double scale = std::max(1.0, rm.m.cwiseAbs().maxCoeff());
  return worst / scale;
}

DoubleForm bianchi_project(DoubleForm rm) {
  if (rm.p != 2 || rm.q != 2) throw std::invalid_argument("bianchi_project: (2,2) input required");
  const auto& lb = LexBasis::get(rm.n);
  auto pr = [&](int a, int b) { return lb.rank((1u << a) | (1u << b)); };
  for (int i = 0; i < rm.n; ++i)
    for (int j = i + 1; j < rm.n; ++j)
      for (int k = j + 1; k < rm.n; ++k)
        for (int l = k + 1; l < rm.n; ++l) {
          int ij = pr(i, j), kl = pr(k, l), jk = pr(j, k), il = pr(i, l), ik = pr(i, k),
              jl = pr(j, l);
          double b = (rm.m(ij, kl) + rm.m(jk, il) - rm.m(ik, jl)) / 3.0;
          rm.m(ij, kl) -= b;
          rm.m(kl, ij) -= b;
          rm.m(jk, il) -= b;
          rm.m(il, jk) -= b;
          rm.m(ik, jl) += b;
          rm.m(jl, ik) += b;
        }
  return rm;
}

AlgCurvature random_curvature(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  int d = static_cast<int>(binomial(n, 2));
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
  DoubleForm rm = DoubleForm::zero(n, 2, 2);
  rm.m = 0.5 * (a + a.transpose());
  rm = bianchi_project(std::move(rm));
  rm.symmetric = true;
  return AlgCurvature{n, std::move(rm)};
}

bool is_einstein(const RicciDecomposition& dec, double tol) {
  double scale = std::max(1.0, std::abs(dec.R) / dec.n);
  return dec.ric0.cwiseAbs().maxCoeff() <= tol * scale;
}

std::pair<ModelSpace, double> normalize_unit_scalar(const ModelSpace& m) {
  if (m.cosh_cylinder) throw std::invalid_argument("normalize_unit_scalar: closed model required");
  const int d = m.dimension();
  double r = scalar_curvature(curvature_of_model(m));
  if (r <= 0) throw std::invalid_argument("normalize_unit_scalar: scalar curvature must be positive");
  double target = static_cast<double>(d) * (d - 1);
  double lambda2 = r / target;  // g -> lambda2 g scales R by 1/lambda2
  return {rescale_metric(m, lambda2), lambda2};
}

Eigen::MatrixXd lambda_power_matrix(const Eigen::MatrixXd& q, int k) {
  const int n = static_cast<int>(q.rows());
  const auto& lb = LexBasis::get(n);
  const int d = lb.dim(k);
  Eigen::MatrixXd out(d, d);
  Eigen::MatrixXd sub(k, k);
  for (int i = 0; i < d; ++i) {
    auto ri = mask_indices(lb.mask(k, i));
    for (int j = 0; j < d; ++j) {
      auto cj = mask_indices(lb.mask(k, j));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = q(ri[a] - 1, cj[b] - 1);
      out(i, j) = sub.determinant();
    }
  }
  return out;
}

DoubleForm rotate_frame(const DoubleForm& a, const Eigen::MatrixXd& q) {
  DoubleForm out = a;
  Eigen::MatrixXd qr = lambda_power_matrix(q, a.p);
  Eigen::MatrixXd qc = (a.q == a.p) ? qr : lambda_power_matrix(q, a.q);
  out.m = qr.transpose() * a.m * qc;
  return out;
}

}  // namespace pinch
