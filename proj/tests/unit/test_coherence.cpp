#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <cohmark/coherence.hpp>

using namespace cohmark;

TEST(Coherence, PlusStateHasUnitCoherence) {
    const std::vector<double> phases{0.0, 0.0};
    const DensityOperator plus = max_coherent_state(2, phases);
    const auto basis = PreferredBasis::computational(2);
    EXPECT_NEAR(c_l1(plus, basis).value, 1.0, 1e-15);
    EXPECT_NEAR(c_re(plus, basis).value, 1.0, 1e-12);
}

TEST(Coherence, MaximallyCoherentReachesBounds) {
    const std::vector<double> phases{0.0, 0.3, -1.2, 2.0};
    const auto basis = PreferredBasis::computational(4);
    const DensityOperator rho = max_coherent_state(4, phases);
    EXPECT_NEAR(c_l1(rho, basis).value, 3.0, 1e-14);
    EXPECT_NEAR(c_re(rho, basis).value, 2.0, 1e-10);
}

TEST(Coherence, DiagonalStatesAreIncoherent) {
    const auto basis = PreferredBasis::computational(2);
    const DensityOperator rho = validate_density(SquareMatrix::diagonal(std::vector<double>{0.3, 0.7}));
    EXPECT_EQ(c_l1(rho, basis).value, 0.0);
    EXPECT_NEAR(c_re(rho, basis).value, 0.0, 1e-12);
    EXPECT_TRUE(is_incoherent(rho, basis));
}

TEST(Coherence, MaximallyMixedHasNoCoherence) {
    const auto basis = PreferredBasis::rotated_bell();
    const DensityOperator mixed = validate_density(SquareMatrix::identity(4) * Complex(0.25));
    EXPECT_NEAR(c_l1(mixed, basis).value, 0.0, 1e-15);
    EXPECT_NEAR(c_re(mixed, basis).value, 0.0, 1e-12);
}

TEST(Coherence, BellStateDependsOnBasis) {
    // (|01> - |10>)/sqrt2 is coherent computationally but a basis vector of the rotated basis.
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> psi{0.0, h, -h, 0.0};
    const DensityOperator singlet = validate_density(outer(psi));
    EXPECT_NEAR(c_l1(singlet, PreferredBasis::computational(4)).value, 1.0, 1e-14);
    EXPECT_NEAR(c_l1(singlet, PreferredBasis::rotated_bell()).value, 0.0, 1e-14);
    EXPECT_TRUE(is_incoherent(singlet, PreferredBasis::rotated_bell()));
}

TEST(Coherence, RotatedBellRowOrder) {
    const SquareMatrix& v = rotated_bell_unitary();
    const double h = 1.0 / std::numbers::sqrt2;
    EXPECT_DOUBLE_EQ(v(0, 0).real(), 1.0);
    EXPECT_NEAR(v(1, 1).real(), h, 1e-15);
    EXPECT_NEAR(v(1, 2).real(), -h, 1e-15);
    EXPECT_NEAR(v(2, 1).real(), h, 1e-15);
    EXPECT_NEAR(v(2, 2).real(), h, 1e-15);
    EXPECT_DOUBLE_EQ(v(3, 3).real(), 1.0);
    EXPECT_TRUE(is_unitary(v));
}

TEST(Coherence, BasisCoordinatesRoundTrip) {
    const std::vector<double> phases{0.0, 0.4, 1.1, -0.7};
    const DensityOperator rho = max_coherent_state(4, phases);
    const auto basis = PreferredBasis::rotated_bell();
    const SquareMatrix back = from_basis_coordinates(to_basis_coordinates(rho.matrix(), basis), basis);
    EXPECT_LT(max_abs_diff(back, rho.matrix()), 1e-15);
}

TEST(Coherence, MaxCoherentOverRotatedBasis) {
    const std::vector<double> phases{0.0, 1.0, 2.0, 3.0};
    const auto basis = PreferredBasis::rotated_bell();
    const DensityOperator rho = max_coherent_state(basis, phases);
    const SquareMatrix native = to_basis_coordinates(rho.matrix(), basis);
    EXPECT_NEAR(l1_offdiagonal(native), 3.0, 1e-14);
    // <b1|rho|b2> = exp(i(phi1 - phi2)) / 4
    EXPECT_NEAR(std::arg(native(1, 2)), -1.0, 1e-14);
}

TEST(Coherence, RelativeEntropyBelowL1ForQubits) {
    // C_RE <= C_l1 holds for every qubit state
    for (double theta = 0.1; theta < 3.1; theta += 0.3) {
        const std::vector<Complex> psi{std::cos(theta / 2), std::sin(theta / 2)};
        const DensityOperator rho = validate_density(outer(psi));
        const auto basis = PreferredBasis::computational(2);
        EXPECT_LE(c_re(rho, basis).value, c_l1(rho, basis).value + 1e-12) << theta;
    }
}

TEST(Coherence, EntropyBits) {
    EXPECT_DOUBLE_EQ(entropy_bits(std::vector<double>{0.5, 0.5}), 1.0);
    EXPECT_DOUBLE_EQ(entropy_bits(std::vector<double>{1.0, 0.0}), 0.0);
    EXPECT_NEAR(entropy_bits(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 2.0, 1e-15);
}

TEST(Coherence, DimensionMismatchThrows) {
    const std::vector<double> phases{0.0, 0.0};
    const DensityOperator plus = max_coherent_state(2, phases);
    EXPECT_THROW(c_l1(plus, PreferredBasis::rotated_bell()), std::invalid_argument);
    EXPECT_THROW(PreferredBasis(2, BasisLabel::rotated_bell), std::invalid_argument);
}
