// envmodels.hpp: spectral densities and the time-dependent rates built from them
//
// Units: the dephasing family measures time in 1/omega_c (omega_c = 1); the
// dissipative families measure time in 1/lambda (lambda = 1) and are
// parametrized by the ratio R = gamma0/lambda and a detuning in units of lambda.

#pragma once

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cohmark/qmat.hpp"

namespace cohmark {

struct OhmicDensity {
    double s = 1.0;       // Ohmicity
    double cutoff = 1.0;  // omega_c
};

struct LorentzianDensity {
    double coupling = 1.0;  // gamma0
    double width = 1.0;     // lambda
    double center = 0.0;    // central frequency
};

using SpectralDensity = std::variant<OhmicDensity, LorentzianDensity>;

/// J(omega). Throws std::invalid_argument on non-positive parameters.
double spectral_density(const SpectralDensity& j, double omega);

class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, double t) : std::domain_error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

// --- dephasing ---------------------------------------------------------

/// Zero-temperature dephasing rate for the Ohmic family,
/// (1+t^2)^(-s/2) Gamma(s) sin(s atan t).
double gamma_dephasing_zero_t(double t, double s);

/// Dephasing rate from its spectral integral,
/// int_0^inf J(w) coth(w / 2T) sin(w t) / w dw, with coth := 1 at T = 0.
/// Only the Ohmic density is supported; temperature is k_B T in units of omega_c.
double gamma_dephasing_quadrature(double t, const SpectralDensity& j, double temperature);

/// int_t0^t1 gamma_dephasing_zero_t(t', s) dt' by adaptive quadrature.
double integrated_dephasing_rate(double t0, double t1, double s);

/// Decoherence envelope exp(-2 int_0^t gamma).
double big_gamma(double t, double s);

/// big_gamma at each (ascending, non-negative) time, accumulated step by step.
std::vector<double> big_gamma_on_grid(std::span<const double> times, double s);

// --- single-qubit dissipative (Lorentzian) -----------------------------

struct DissipativeKernel {
    double ratio;     // gamma0 / lambda
    double detuning;  // delta in units of lambda

    /// Principal root of (1 - i delta)^2 - 2 R.
    Complex eta() const;
};

/// Amplitude G(t) of the excited level for the Lorentzian bath.
Complex g_lorentzian(double t, double ratio, double detuning);

/// dG/dt, closed form -R exp(-(1-i delta)t/2) sinh(eta t/2)/eta.
Complex g_lorentzian_derivative(double t, double ratio, double detuning);

// --- two-qubit dissipative ---------------------------------------------

struct TwoQubitDecay {
    double g;               // real amplitude g(t)
    double e_minus_lambda;  // exp(-Lambda(t)) = g^2

    /// exp(-alpha Lambda) as (g^2)^alpha; well defined through zeros of g.
    double power(double alpha) const;
};

/// Principal root of 1 - 2R (the eta' of the collective decay rate).
Complex eta_prime(double ratio);

/// Normalized rate denominator cosh(eta' t/2) + sinh(eta' t/2)/eta', real.
/// Its zeros are the poles of gamma_twoqubit_diss and the zeros of g.
double twoqubit_rate_denominator(double t, double ratio);

/// 2 R sinh(eta' t/2) / (eta' cosh(eta' t/2) + sinh(eta' t/2)).
/// Throws PoleError when the normalized denominator is below 1e-8.
double gamma_twoqubit_diss(double t, double ratio);

TwoQubitDecay g_and_lambda_twoqubit(double t, double ratio);

}  // namespace cohmark
