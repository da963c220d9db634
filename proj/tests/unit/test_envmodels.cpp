#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <cohmark/envmodels.hpp>
#include <cohmark/quadrature.hpp>

using namespace cohmark;

// Reference values below were computed once with 30-digit arbitrary precision.

TEST(Quadrature, PolynomialAndOscillatory) {
    EXPECT_NEAR(integrate_adaptive([](double x) { return x * x; }, 0.0, 3.0).value, 9.0, 1e-12);
    EXPECT_NEAR(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-12);
    EXPECT_NEAR(integrate_gauss_legendre([](double x) { return std::exp(x); }, 0.0, 1.0), std::numbers::e - 1.0,
                1e-14);
}

TEST(Quadrature, BisectionFindsRoot) {
    const double r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13);
    EXPECT_NEAR(r, std::numbers::sqrt2, 1e-12);
    EXPECT_THROW(bisect_root([](double x) { return x * x + 1.0; }, 0.0, 2.0), std::invalid_argument);
}

TEST(SpectralDensity, OhmicAndLorentzian) {
    EXPECT_NEAR(spectral_density(OhmicDensity{1.0, 1.0}, 1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(spectral_density(OhmicDensity{3.0, 2.0}, 2.0), 8.0 / std::pow(2.0, 2.0) * std::exp(-1.0), 1e-12);
    EXPECT_GT(spectral_density(LorentzianDensity{1.0, 1.0, 0.0}, 0.0), 0.0);
    EXPECT_THROW(spectral_density(OhmicDensity{-1.0, 1.0}, 1.0), std::invalid_argument);
}

TEST(DephasingRate, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(gamma_dephasing_zero_t(0.0, 3.5), 0.0);
    // s = 1: t / (1 + t^2)
    EXPECT_NEAR(gamma_dephasing_zero_t(2.0, 1.0), 0.4, 1e-15);
    EXPECT_NEAR(gamma_dephasing_zero_t(1.0, 3.5), 0.378105832435112896, 1e-14);
}

TEST(DephasingRate, SpectralIntegralMatchesClosedForm) {
    for (double s : {1.0, 2.5, 3.5}) {
        for (double t : {0.3, 1.0, 2.5}) {
            EXPECT_NEAR(gamma_dephasing_quadrature(t, OhmicDensity{s, 1.0}, 0.0), gamma_dephasing_zero_t(t, s), 1e-8)
                << "s=" << s << " t=" << t;
        }
    }
}

TEST(DephasingRate, NegativeOnlyAboveTwo) {
    for (double t = 0.05; t < 20.0; t += 0.05) {
        EXPECT_GE(gamma_dephasing_zero_t(t, 1.5), 0.0);
        EXPECT_GE(gamma_dephasing_zero_t(t, 2.0), -1e-15);
    }
    EXPECT_LT(gamma_dephasing_zero_t(3.0, 3.5), 0.0);
}

TEST(Envelope, OhmicOneIsLorentzianInTime) {
    for (double t : {0.5, 2.0, 7.0}) EXPECT_NEAR(big_gamma(t, 1.0), 1.0 / (1.0 + t * t), 1e-12);
    EXPECT_NEAR(big_gamma(2.0, 3.5), 0.0503010426278477364, 1e-12);
}

TEST(Envelope, GridAccumulationMatchesPointwise) {
    std::vector<double> times;
    for (int k = 0; k <= 200; ++k) times.push_back(0.05 * k);
    const auto grid = big_gamma_on_grid(times, 3.5);
    for (std::size_t k = 0; k < times.size(); k += 37) EXPECT_NEAR(grid[k], big_gamma(times[k], 3.5), 1e-12);
}

TEST(Lorentzian, AmplitudeValues) {
    EXPECT_NEAR(std::abs(g_lorentzian(1.0, 0.4, 0.0) - Complex(0.927556078369880122, 0.0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(g_lorentzian(2.0, 4.0, 0.0) - Complex(-0.257421388283667214, 0.0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(g_lorentzian(2.0, 4.0, 0.004) - Complex(-0.257418747317234072, -0.00178161511549640868)),
                0.0, 1e-13);
    EXPECT_DOUBLE_EQ(g_lorentzian(0.0, 4.0, 0.004).real(), 1.0);
}

TEST(Lorentzian, FirstZeroAtStrongCoupling) {
    // G = exp(-t/2) (cos(sqrt7 t/2) + sin(sqrt7 t/2)/sqrt7) at R = 4, delta = 0
    const double t0 = 2.0 * (std::numbers::pi - std::atan(std::sqrt(7.0))) / std::sqrt(7.0);
    EXPECT_NEAR(std::abs(g_lorentzian(t0, 4.0, 0.0)), 0.0, 1e-14);
}

TEST(Lorentzian, DerivativeMatchesFiniteDifference) {
    const double h = 1e-6;
    for (double t : {0.4, 1.3, 3.0}) {
        const Complex fd = (g_lorentzian(t + h, 4.0, 0.004) - g_lorentzian(t - h, 4.0, 0.004)) / (2 * h);
        EXPECT_NEAR(std::abs(g_lorentzian_derivative(t, 4.0, 0.004) - fd), 0.0, 1e-8);
    }
}

TEST(TwoQubitDecay, SquaredAmplitudeAndRate) {
    // exp(-Lambda) = g^2 and d/dt(-ln g^2) = gamma away from poles
    const double h = 1e-6;
    for (double ratio : {0.4, 4.0}) {
        for (double t : {0.3, 1.1, 2.2}) {
            const auto d = g_and_lambda_twoqubit(t, ratio);
            EXPECT_NEAR(d.e_minus_lambda, d.g * d.g, 1e-15);
            const double lp = -std::log(g_and_lambda_twoqubit(t + h, ratio).e_minus_lambda);
            const double lm = -std::log(g_and_lambda_twoqubit(t - h, ratio).e_minus_lambda);
            EXPECT_NEAR(gamma_twoqubit_diss(t, ratio), (lp - lm) / (2 * h), 1e-6) << ratio << ' ' << t;
        }
    }
}

TEST(TwoQubitDecay, PoleRaises) {
    // g(t) = exp(-t/2)(cos(w t) + sin(w t)/(2w)) with w = sqrt(2R-1)/2; first zero is a pole of gamma
    const double w = std::sqrt(7.0) / 2.0;
    const double pole = (std::numbers::pi - std::atan(2.0 * w)) / w;
    EXPECT_NEAR(twoqubit_rate_denominator(pole, 4.0), 0.0, 1e-12);
    EXPECT_THROW(gamma_twoqubit_diss(pole, 4.0), PoleError);
    EXPECT_NEAR(g_and_lambda_twoqubit(pole, 4.0).power(0.5), 0.0, 1e-7);
}
