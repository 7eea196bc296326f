#include "pinch/yamabe.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pinch/quadrature.hpp"

namespace pinch {

namespace {

constexpr double kPi = std::numbers::pi;

double conformal_energy_coeff(int n) { return 4.0 * (n - 1.0) / (n - 2.0); }

// S^{n-1}(1) x Circ(T) pattern; returns (n, T) if matched.
std::optional<std::pair<int, double>> sphere_circle_pattern(const ModelSpace& m) {
  if (!m.closed() || m.factors.size() != 2) return std::nullopt;
  const SphereFactor* s = nullptr;
  const CircleFactor* c = nullptr;
  for (const auto& f : m.factors) {
    if (const auto* sp = std::get_if<SphereFactor>(&f)) s = sp;
    if (const auto* cp = std::get_if<CircleFactor>(&f)) c = cp;
  }
  if (!s || !c) return std::nullopt;
  // rescale so the sphere factor has curvature 1
  double lambda2 = 1.0 / s->curvature;
  return std::make_pair(s->dim + 1, c->length / std::sqrt(lambda2));
}

// Minimum of the normalized 1-D cylinder functional over the cosh family,
// by quadrature; R_h = (n-2)(n-1).
struct RadialMin {
  double value;
  double lambda;
};
RadialMin radial_family_minimum(int n) {
  const double cn = conformal_energy_coeff(n);
  const double rh = (n - 2.0) * (n - 1.0);
  const double p_exp = 2.0 * n / (n - 2.0);
  auto functional = [&](double lambda) {
    double s_max = 48.0 / ((n - 2.0) * lambda) + 4.0;
    auto phi = [&](double s) { return std::pow(std::cosh(lambda * s), -0.5 * (n - 2.0)); };
    auto dphi = [&](double s) {
      return -0.5 * (n - 2.0) * lambda * std::tanh(lambda * s) * phi(s);
    };
    double num = 2.0 * integrate(
                           [&](double s) {
                             double d = dphi(s), v = phi(s);
                             return cn * d * d + rh * v * v;
                           },
                           0.0, s_max, 96);
    double den = 2.0 * integrate([&](double s) { return std::pow(phi(s), p_exp); }, 0.0, s_max, 96);
    return num / std::pow(den, (n - 2.0) / n);
  };
  double lam = golden_min(functional, 0.25, 4.0, 1e-12, 300);
  return {functional(lam), lam};
}

}  // namespace

const char* to_string(YamabeProvenance p) {
  switch (p) {
    case YamabeProvenance::einstein_closed_form: return "einstein_closed_form";
    case YamabeProvenance::csc_minimizer_closed_form: return "csc_minimizer_closed_form";
    case YamabeProvenance::cylinder_closed_form: return "cylinder_closed_form";
    case YamabeProvenance::test_function_upper_bound: return "test_function_upper_bound";
  }
  return "?";
}

double unit_sphere_volume(int n) {
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double sphere_yamabe(int n) {
  return n * (n - 1.0) * std::pow(unit_sphere_volume(n), 2.0 / n);
}

YamabeValue yamabe_einstein(const ModelSpace& m) {
  if (!m.closed()) throw std::invalid_argument("yamabe_einstein: closed model required");
  const int n = m.dimension();
  RicciDecomposition dec = ricci_decompose(curvature_of_model(m));
  if (!is_einstein(dec))
    throw std::invalid_argument("yamabe_einstein: model is not Einstein; no minimizer certificate");
  YamabeValue y;
  y.value = dec.R * std::pow(volume_of(m), 2.0 / n);
  y.provenance = YamabeProvenance::einstein_closed_form;
  y.model = m.describe();
  return y;
}

YamabeValue yamabe_csc_minimizer(const ModelSpace& m) {
  auto pat = sphere_circle_pattern(m);
  if (!pat)
    throw std::invalid_argument("yamabe_csc_minimizer: model must be S^{n-1}(kappa) x Circ(T)");
  auto [n, t_norm] = *pat;
  if (t_norm * t_norm > 4.0 * kPi * kPi / (n - 2.0))
    throw std::domain_error(
        "yamabe_csc_minimizer: translation length above threshold; minimizer certificate "
        "unavailable");
  double r = (n - 1.0) * (n - 2.0);
  double vol = unit_sphere_volume(n - 1) * t_norm;
  YamabeValue y;
  y.value = r * std::pow(vol, 2.0 / n);
  y.provenance = YamabeProvenance::csc_minimizer_closed_form;
  y.model = m.describe();
  return y;
}

std::optional<YamabeValue> yamabe_certified(const ModelSpace& m) {
  if (!m.closed()) return std::nullopt;
  RicciDecomposition dec = ricci_decompose(curvature_of_model(m));
  if (is_einstein(dec)) return yamabe_einstein(m);
  if (auto pat = sphere_circle_pattern(m)) {
    auto [n, t_norm] = *pat;
    if (t_norm * t_norm <= 4.0 * kPi * kPi / (n - 2.0)) return yamabe_csc_minimizer(m);
  }
  return std::nullopt;
}

CylinderYamabe cylinder_yamabe_quadrature(const ModelSpace& base) {
  auto [norm_base, lambda2] = normalize_unit_scalar(base);
  RicciDecomposition dec = ricci_decompose(curvature_of_model(norm_base));
  if (!is_einstein(dec))
    throw std::invalid_argument("cylinder_yamabe_quadrature: Einstein base required");
  CylinderYamabe out;
  out.n = norm_base.dimension() + 1;
  out.base_volume = volume_of(norm_base);
  RadialMin rm = radial_family_minimum(out.n);
  out.lambda_min = rm.lambda;
  out.quadrature = std::pow(out.base_volume, 2.0 / out.n) * rm.value;
  out.closed_form =
      sphere_yamabe(out.n) *
      std::pow(out.base_volume / unit_sphere_volume(out.n - 1), 2.0 / out.n);
  out.rel_err = std::abs(out.quadrature - out.closed_form) / out.closed_form;
  // the minimizing conformal factor sech^2(s) turns the cylinder into the
  // suspension sin^2(r) h + dr^2 under r = gd(s) + pi/2; cos(gd(s)) = sech(s)
  double worst = 0;
  for (int i = 0; i <= 200; ++i) {
    double s = -8.0 + 16.0 * i / 200.0;
    double gd = 2.0 * std::atan(std::tanh(0.5 * s));
    worst = std::max(worst, std::abs(std::cos(gd) - 1.0 / std::cosh(s)));
  }
  out.suspension_residual = worst;
  return out;
}

namespace {

struct ZonalSetup {
  int a = 0;            // leading sphere factor dimension
  double kappa = 1.0;   // its curvature
  double vol_rest = 1;  // product of the other factor volumes
  int n = 0;
  double r_total = 0;
};

ZonalSetup zonal_setup(const ModelSpace& m) {
  if (!m.closed() || m.factors.empty())
    throw std::invalid_argument("modified_yamabe_probe: closed product model required");
  const auto* s = std::get_if<SphereFactor>(&m.factors.front());
  if (!s)
    throw std::invalid_argument("modified_yamabe_probe: leading factor must be a sphere");
  ZonalSetup z;
  z.a = s->dim;
  z.kappa = s->curvature;
  z.n = m.dimension();
  ModelSpace rest = m;
  rest.factors.erase(rest.factors.begin());
  z.vol_rest = rest.factors.empty() ? 1.0 : volume_of(rest);
  z.r_total = ricci_decompose(curvature_of_model(m)).R;
  return z;
}

double eval_poly(const std::vector<double>& coeffs, double x) {
  double acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double eval_poly_derivative(const std::vector<double>& coeffs, double x) {
  double acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * x + i * coeffs[i];
  return acc;
}

// beta-weighted conformal functional at phi(theta) = p(cos theta), zonal on
// the leading sphere factor.
double zonal_functional(const ZonalSetup& z, double beta, const std::vector<double>& poly) {
  const double cn = conformal_energy_coeff(z.n);
  const double p_exp = 2.0 * z.n / (z.n - 2.0);
  auto weight = [&](double th) { return std::pow(std::sin(th), z.a - 1); };
  double i1 = integrate(
      [&](double th) {
        double x = std::cos(th);
        double phi = eval_poly(poly, x);
        double dphi = -std::sin(th) * eval_poly_derivative(poly, x);  // d/dtheta
        return (cn * z.kappa * dphi * dphi + beta * z.r_total * phi * phi) * weight(th);
      },
      0.0, kPi, 64);
  double i2 = integrate(
      [&](double th) {
        double phi = eval_poly(poly, std::cos(th));
        return std::pow(phi * phi, 0.5 * p_exp) * weight(th);
      },
      0.0, kPi, 64);
  double shell = unit_sphere_volume(z.a - 1) * std::pow(z.kappa, -0.5 * z.a);
  double num = z.vol_rest * shell * i1;
  double den = std::pow(z.vol_rest * shell * i2, (z.n - 2.0) / z.n);
  return num / den;
}

}  // namespace

ModifiedYamabeProbe modified_yamabe_probe(const ModelSpace& m, double beta, int trials,
                                          std::uint64_t seed) {
  if (beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("modified_yamabe_probe: beta in [0,1] required");
  if (trials < 0) throw std::invalid_argument("modified_yamabe_probe: empty family");
  ZonalSetup z = zonal_setup(m);
  auto y = yamabe_certified(m);
  if (!y) throw std::invalid_argument("modified_yamabe_probe: no Yamabe certificate for model");
  ModifiedYamabeProbe rep;
  rep.beta = beta;
  rep.beta_y = beta * y->value;
  rep.trials = trials;
  rep.constant_value = zonal_functional(z, beta, {1.0});
  rep.sampled_min = rep.constant_value;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> poly{1.0, unif(rng), unif(rng), unif(rng), unif(rng)};
    rep.sampled_min = std::min(rep.sampled_min, zonal_functional(z, beta, poly));
  }
  return rep;
}

RadialProfile cosh_power_profile(double s_max, int npts, double exponent) {
  RadialProfile p;
  p.s = Eigen::VectorXd::LinSpaced(npts, -s_max, s_max);
  p.w.resize(npts);
  Eigen::VectorXd dw(npts);
  for (int i = 0; i < npts; ++i) {
    double c = std::cosh(p.s[i]);
    p.w[i] = std::pow(c, exponent);
    dw[i] = exponent * std::tanh(p.s[i]) * p.w[i];
  }
  p.dw = dw;
  return p;
}

YamabeOdeCheck yamabe_ode_check(const RadialProfile& profile, int n, double r_h, double mu) {
  const int npts = static_cast<int>(profile.s.size());
  if (npts < 7) throw std::invalid_argument("yamabe_ode_check: grid too coarse");
  const double h = profile.s[1] - profile.s[0];
  const double cn = conformal_energy_coeff(n);
  const double pw = (n + 2.0) / (n - 2.0);
  const auto& w = profile.w;
  YamabeOdeCheck out;
  double scale = 1.0;
  for (int i = 2; i < npts - 2; ++i)
    scale = std::max(scale, std::abs(mu * std::pow(w[i], pw)) + std::abs(r_h * w[i]));
  for (int i = 2; i < npts - 2; ++i) {
    double wpp =
        (-w[i + 2] + 16.0 * w[i + 1] - 30.0 * w[i] + 16.0 * w[i - 1] - w[i - 2]) / (12.0 * h * h);
    double res = -cn * wpp + r_h * w[i] - mu * std::pow(w[i], pw);
    out.ode_residual = std::max(out.ode_residual, std::abs(res) / scale);
  }
  auto wprime = [&](int i) {
    if (profile.dw) return (*profile.dw)[i];
    return (-w[i + 2] + 8.0 * w[i + 1] - 8.0 * w[i - 1] + w[i - 2]) / (12.0 * h);
  };
  auto energy = [&](int i) {
    double wp = wprime(i);
    return -cn * wp * wp + r_h * w[i] * w[i] -
           (n - 2.0) / n * mu * std::pow(w[i], 2.0 * n / (n - 2.0));
  };
  out.constant_estimate = energy(npts / 2);
  double escale = 1.0;
  for (int i = 2; i < npts - 2; ++i) escale = std::max(escale, std::abs(r_h * w[i] * w[i]));
  for (int i = 2; i < npts - 2; ++i)
    out.first_integral_drift =
        std::max(out.first_integral_drift, std::abs(energy(i) - out.constant_estimate) / escale);
  return out;
}

double cosh_first_integral_residual(double mu, int n, double s0, int samples) {
  double amp2 = mu / (4.0 * n * (n - 1.0));
  double amp = std::sqrt(amp2);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    double s = -6.0 + 12.0 * i / (samples - 1.0);
    double phi = amp * std::cosh(s - s0);
    double dphi = amp * std::sinh(s - s0);
    // relative to the local magnitude; the difference cancels catastrophically
    // in absolute terms once cosh^2 dwarfs the constant
    double scale = std::max({amp2, phi * phi, dphi * dphi});
    worst = std::max(worst, std::abs(phi * phi - dphi * dphi - amp2) / scale);
  }
  return worst;
}

double sech_power_integral(int n) {
  if (n < 1) throw std::invalid_argument("sech_power_integral: n >= 1 required");
  double even = 2.0, odd = kPi;  // I_2, I_1
  if (n == 1) return odd;
  if (n == 2) return even;
  double val = (n % 2 == 0) ? even : odd;
  for (int m = (n % 2 == 0) ? 4 : 3; m <= n; m += 2) val *= (m - 2.0) / (m - 1.0);
  return val;
}

CoshCylinderReport cosh_cylinder_C(const ModelSpace& base, double alpha) {
  if (alpha <= 0) throw std::invalid_argument("cosh_cylinder_C: alpha must be positive");
  auto [norm_base, lambda2] = normalize_unit_scalar(base);
  const int d = norm_base.dimension();
  const int n = d + 1;
  CoshCylinderReport out;
  out.n = n;
  RicciDecomposition dec = ricci_decompose(curvature_of_model(norm_base));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dec.ric0, Eigen::EigenvaluesOnly);
  out.r1_base = -es.eigenvalues()(0);
  out.base_einstein = is_einstein(dec);

  double vol_n = volume_of(norm_base);
  RadialMin rm = radial_family_minimum(n);
  double y_cyl = std::pow(vol_n, 2.0 / n) * rm.value;

  // quadrature of \int sech^n, cross-checked against the Gamma-ratio recurrence
  double s_max = 40.0 / n + 6.0;
  double i_n = 2.0 * integrate([&](double t) { return std::pow(1.0 / std::cosh(t), n); }, 0.0,
                               s_max, 96);
  out.sech_integral_rel_err = std::abs(i_n - sech_power_integral(n)) / sech_power_integral(n);

  // L^{n/2} norms over the cylinder from the closed forms; alpha cancels.
  double k_r1 = out.r1_base + 2.0 * (n - 2.0) * (n - 1.0) / n;
  double norm_factor = std::pow(vol_n * i_n, 2.0 / n);
  double lhs = (k_r1 + (n - 4.0) / (4.0 * n) * (n - 1.0) * (n - 4.0)) * norm_factor;
  out.lhs = lhs;
  out.quarter_y = 0.25 * y_cyl;
  out.C = lhs / out.quarter_y;
  return out;
}

}  // namespace pinch
