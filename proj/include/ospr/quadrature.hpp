#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ospr/errors.hpp"

namespace ospr {

/// Adaptive Simpson integration to an absolute tolerance. Throws
/// ConvergenceError if the recursion cap is hit before the tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 48);

/// Nodes and weights for n-point Gauss-Legendre on [a, b].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n, double a, double b);

} // namespace ospr
