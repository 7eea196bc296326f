#include "pinch/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pinch {

namespace {

constexpr int kOrder = 16;

struct GaussNodes {
  std::array<double, kOrder> x{}, w{};
  GaussNodes() {
    // Newton iteration on Legendre polynomials
    for (int i = 0; i < kOrder; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int j = 2; j <= kOrder; ++j) {
          double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        double dp = kOrder * (t * p1 - p0) / (t * t - 1.0);
        double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= kOrder; ++j) {
        double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = kOrder * (t * p1 - p0) / (t * t - 1.0);
      x[i] = t;
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussNodes& nodes() {
  static const GaussNodes g;
  return g;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
  const auto& g = nodes();
  double h = (b - a) / panels;
  double total = 0;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    double acc = 0;
    for (int i = 0; i < kOrder; ++i) acc += g.w[i] * f(mid + 0.5 * h * g.x[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol,
                  int max_iters) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iters && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace pinch
