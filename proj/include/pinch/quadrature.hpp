#pragma once

#include <functional>

namespace pinch {

// Composite Gauss-Legendre integration; order-16 nodes per panel.
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 48);

// Golden-section minimization of a unimodal function; returns the argmin.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-10, int max_iters = 200);

}  // namespace pinch
