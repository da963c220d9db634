#include "cohmark/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cohmark {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
    if (a == b) return {0.0, 0.0};
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, opts.max_depth, opts.rel_tol, &error, &l1);
    if (!std::isfinite(value)) throw QuadratureError("quadrature produced a non-finite value", error);
    if (error > opts.abs_tol && error > opts.rel_tol * std::abs(value)) {
        std::ostringstream os;
        os << "adaptive quadrature on [" << a << ", " << b << "] did not converge: error estimate " << error
           << " exceeds " << opts.abs_tol;
        throw QuadratureError(os.str(), error);
    }
    return {value, error};
}

double integrate_gauss_legendre(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    if (fa == 0.0) return a;
    const double fb = f(b);
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0)) throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace cohmark
