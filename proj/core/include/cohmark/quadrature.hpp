// quadrature.hpp: adaptive Gauss-Kronrod integration with an absolute error target

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace cohmark {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

struct QuadratureOptions {
    double abs_tol = 1e-9;
    // Termination criterion handed to the adaptive driver (relative to the
    // L1 norm of the integrand); the absolute target is checked afterwards.
    double rel_tol = 1e-12;
    unsigned max_depth = 18;
};

struct QuadratureResult {
    double value;
    double error;
};

/// Integrates f over [a, b]. Throws QuadratureError when the error estimate
/// misses both abs_tol and rel_tol * |value|.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Fixed 20-point Gauss-Legendre rule on [a, b] for smooth integrands.
double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Finds a root of f in [a, b] (f(a), f(b) of opposite sign) by bisection.
double bisect_root(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

}  // namespace cohmark
