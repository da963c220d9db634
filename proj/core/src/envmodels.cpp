#include "cohmark/envmodels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "cohmark/quadrature.hpp"

namespace cohmark {

namespace {

constexpr double kPoleDenominatorTol = 1e-8;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be positive and finite");
    }
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be non-negative and finite");
}

// sinh(z)/z, continuous at z = 0.
Complex sinhc(Complex z) {
    if (std::abs(z) < 1e-3) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

}  // namespace

double spectral_density(const SpectralDensity& j, double omega) {
    return std::visit(
        [omega](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, OhmicDensity>) {
                require_positive(d.s, "Ohmicity s");
                require_positive(d.cutoff, "cutoff frequency");
                if (omega <= 0.0) return 0.0;
                return std::pow(omega, d.s) / std::pow(d.cutoff, d.s - 1.0) * std::exp(-omega / d.cutoff);
            } else {
                require_positive(d.coupling, "coupling gamma0");
                require_positive(d.width, "spectral width lambda");
                const double dw = omega - d.center;
                return d.coupling * d.width * d.width / (2.0 * M_PI * (dw * dw + d.width * d.width));
            }
        },
        j);
}

double gamma_dephasing_zero_t(double t, double s) {
    require_positive(s, "Ohmicity s");
    require_time(t);
    return std::pow(1.0 + t * t, -0.5 * s) * std::tgamma(s) * std::sin(s * std::atan(t));
}

double gamma_dephasing_quadrature(double t, const SpectralDensity& j, double temperature) {
    const auto* ohmic = std::get_if<OhmicDensity>(&j);
    if (ohmic == nullptr) throw std::invalid_argument("dephasing rate quadrature requires an Ohmic density");
    require_positive(ohmic->s, "Ohmicity s");
    require_positive(ohmic->cutoff, "cutoff frequency");
    require_time(t);
    if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be non-negative");
    if (t == 0.0) return 0.0;

    const double wc = ohmic->cutoff;
    auto integrand = [&](double w) -> double {
        if (w <= 0.0) return 0.0;
        const double thermal = temperature > 0.0 ? 1.0 / std::tanh(w / (2.0 * temperature)) : 1.0;
        return spectral_density(j, w) * thermal * std::sin(w * t) / w;
    };
    // Integrand decays as exp(-w/wc) and oscillates with period 2 pi / t.
    const double w_split = 50.0 * wc;
    const double w_max = std::max(w_split, 50.0 / t);
    QuadratureOptions opts;
    opts.max_depth = 20;
    double value = integrate_adaptive(integrand, 0.0, w_split, opts).value;
    if (w_max > w_split) value += integrate_adaptive(integrand, w_split, w_max, opts).value;
    return value;
}

double integrated_dephasing_rate(double t0, double t1, double s) {
    require_positive(s, "Ohmicity s");
    require_time(t0);
    require_time(t1);
    const double gs = std::tgamma(s);
    auto rate = [s, gs](double t) { return std::pow(1.0 + t * t, -0.5 * s) * gs * std::sin(s * std::atan(t)); };
    return integrate_adaptive(rate, t0, t1).value;
}

double big_gamma(double t, double s) { return std::exp(-2.0 * integrated_dephasing_rate(0.0, t, s)); }

std::vector<double> big_gamma_on_grid(std::span<const double> times, double s) {
    require_positive(s, "Ohmicity s");
    const double gs = std::tgamma(s);
    auto rate = [s, gs](double t) { return std::pow(1.0 + t * t, -0.5 * s) * gs * std::sin(s * std::atan(t)); };
    std::vector<double> out;
    out.reserve(times.size());
    double integral = 0.0;
    double prev = 0.0;
    for (double t : times) {
        require_time(t);
        if (t < prev) throw std::invalid_argument("big_gamma_on_grid: times must be ascending");
        if (t > prev) integral += boost::math::quadrature::gauss<double, 10>::integrate(rate, prev, t);
        out.push_back(std::exp(-2.0 * integral));
        prev = t;
    }
    return out;
}

Complex DissipativeKernel::eta() const {
    const Complex a(1.0, -detuning);
    return std::sqrt(a * a - 2.0 * ratio);
}

Complex g_lorentzian(double t, double ratio, double detuning) {
    require_positive(ratio, "ratio gamma0/lambda");
    require_time(t);
    const Complex a(1.0, -detuning);
    const Complex z = DissipativeKernel{ratio, detuning}.eta() * (0.5 * t);
    return std::exp(-a * (0.5 * t)) * (std::cosh(z) + a * (0.5 * t) * sinhc(z));
}

Complex g_lorentzian_derivative(double t, double ratio, double detuning) {
    require_positive(ratio, "ratio gamma0/lambda");
    require_time(t);
    const Complex a(1.0, -detuning);
    const Complex z = DissipativeKernel{ratio, detuning}.eta() * (0.5 * t);
    return -ratio * std::exp(-a * (0.5 * t)) * (0.5 * t) * sinhc(z);
}

double TwoQubitDecay::power(double alpha) const { return std::pow(e_minus_lambda, alpha); }

Complex eta_prime(double ratio) {
    require_positive(ratio, "ratio gamma0/lambda");
    return std::sqrt(Complex(1.0 - 2.0 * ratio, 0.0));
}

double twoqubit_rate_denominator(double t, double ratio) {
    require_time(t);
    const Complex z = eta_prime(ratio) * (0.5 * t);
    return (std::cosh(z) + (0.5 * t) * sinhc(z)).real();
}

double gamma_twoqubit_diss(double t, double ratio) {
    require_time(t);
    const Complex z = eta_prime(ratio) * (0.5 * t);
    const Complex den = std::cosh(z) + (0.5 * t) * sinhc(z);
    if (std::abs(den) < kPoleDenominatorTol) {
        std::ostringstream os;
        os << "two-qubit dissipation rate has a pole near t = " << t << " (R = " << ratio << ")";
        throw PoleError(os.str(), t);
    }
    const Complex num = 2.0 * ratio * (0.5 * t) * sinhc(z);
    return (num / den).real();
}

TwoQubitDecay g_and_lambda_twoqubit(double t, double ratio) {
    const double den = twoqubit_rate_denominator(t, ratio);
    const double g = std::exp(-0.5 * t) * den;
    return {g, g * g};
}

}  // namespace cohmark
