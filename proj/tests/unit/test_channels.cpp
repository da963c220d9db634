#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <cohmark/channels.hpp>
#include <cohmark/coherence.hpp>
#include <cohmark/envmodels.hpp>

using namespace cohmark;

namespace {

DensityOperator plus() {
    const std::vector<double> zero{0.0, 0.0};
    return max_coherent_state(2, zero);
}

DensityOperator random_state(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> n;
    std::vector<Complex> psi(d);
    double norm = 0.0;
    for (auto& c : psi) {
        c = Complex(n(rng), n(rng));
        norm += std::norm(c);
    }
    for (auto& c : psi) c /= std::sqrt(norm);
    return validate_density(outer(psi));
}

}  // namespace

TEST(ChannelSpec, ValidatesRanges) {
    EXPECT_NO_THROW(ChannelSpec::deph1q(3.5).validate());
    EXPECT_THROW(ChannelSpec::deph1q(0.0).validate(), std::invalid_argument);
    EXPECT_THROW(ChannelSpec::diss1q(-1.0).validate(), std::invalid_argument);
    EXPECT_THROW(ChannelSpec::diss2q(4.0, 1.5).validate(), std::invalid_argument);
    EXPECT_THROW(ChannelSpec::diss2q(4.0, -0.5).validate(), std::invalid_argument);
    EXPECT_NO_THROW(ChannelSpec::diss2q(4.0, kMinSpatialCorrelation).validate());
}

TEST(ChannelSpec, NamesRoundTrip) {
    for (auto k : {ChannelKind::deph1q, ChannelKind::diss1q, ChannelKind::deph2q_common,
                   ChannelKind::deph2q_independent, ChannelKind::diss2q_common}) {
        EXPECT_EQ(parse_channel_kind(to_string(k)), k);
    }
    EXPECT_FALSE(parse_channel_kind("amplitude").has_value());
}

TEST(ChannelSpec, BasisAndDimension) {
    EXPECT_EQ(ChannelSpec::deph1q(1.0).dim(), 2u);
    EXPECT_EQ(ChannelSpec::diss2q(4.0, 0.5).dim(), 4u);
    EXPECT_EQ(ChannelSpec::diss2q(4.0, 0.5).basis().label(), BasisLabel::rotated_bell);
    EXPECT_EQ(ChannelSpec::deph2q(3.5, DephasingMode::common).basis().label(), BasisLabel::computational);
}

TEST(Deph1q, CoherenceFollowsEnvelope) {
    // C_l1(rho(t)) = 2 |rho01(0)| Gamma(t)
    for (double t : {0.5, 2.0, 5.0}) {
        const DensityOperator r = apply_deph1q(plus(), t, 1.0);
        EXPECT_NEAR(c_l1(r, PreferredBasis::computational(2)).value, 1.0 / (1.0 + t * t), 1e-12);
        EXPECT_DOUBLE_EQ(r(0, 0).real(), 0.5);
    }
}

TEST(Deph1q, KrausFormAgrees) {
    std::mt19937_64 rng(3);
    for (double t : {0.7, 3.0}) {
        const DensityOperator rho = random_state(rng, 2);
        const KrausSet k = kraus_deph1q(t, 3.5);
        EXPECT_LT(max_abs_diff(k.apply(rho.matrix()), apply_deph1q(rho, t, 3.5).matrix()), 1e-12);
    }
}

TEST(Diss1q, PopulationsAndCoherence) {
    const double t = 2.0;
    const Complex g = g_lorentzian(t, 4.0, 0.004);
    const std::vector<Complex> excited{0.0, 1.0};
    const DensityOperator e = validate_density(outer(excited));
    const DensityOperator r = apply_diss1q(e, t, 4.0, 0.004);
    EXPECT_NEAR(r(1, 1).real(), std::norm(g), 1e-13);
    EXPECT_NEAR(r(0, 0).real(), 1.0 - std::norm(g), 1e-13);

    const DensityOperator p = apply_diss1q(plus(), t, 4.0, 0.004);
    EXPECT_NEAR(c_l1(p, PreferredBasis::computational(2)).value, std::abs(g), 1e-13);
}

TEST(Diss1q, GroundStateIsFixed) {
    const std::vector<Complex> ground{1.0, 0.0};
    const DensityOperator g = validate_density(outer(ground));
    EXPECT_LT(max_abs_diff(apply_diss1q(g, 3.0, 4.0, 0.004).matrix(), g.matrix()), 1e-15);
}

TEST(Deph2q, ModesDecayDifferently) {
    const std::vector<double> zero(4, 0.0);
    const DensityOperator rho = max_coherent_state(4, zero);
    const double t = 1.5;
    const double big = big_gamma(t, 3.5);
    const auto common = apply_deph2q(rho, t, 3.5, DephasingMode::common);
    const auto indep = apply_deph2q(rho, t, 3.5, DephasingMode::independent);
    // |00><11| decays as Gamma^4 under the common bath and Gamma^2 under independent baths
    EXPECT_NEAR(std::abs(common(0, 3)), 0.25 * std::pow(big, 4), 1e-12);
    EXPECT_NEAR(std::abs(indep(0, 3)), 0.25 * std::pow(big, 2), 1e-12);
    // |01><10| is protected under the common bath
    EXPECT_NEAR(std::abs(common(1, 2)), 0.25, 1e-12);
    EXPECT_NEAR(std::abs(common(0, 1)), 0.25 * big, 1e-12);
}

TEST(Deph2q, HamiltonianOnlyRotatesPhases) {
    const std::vector<double> zero(4, 0.0);
    const DensityOperator rho = max_coherent_state(4, zero);
    const auto a = apply_deph2q(rho, 1.2, 3.5, DephasingMode::common, {});
    const auto b = apply_deph2q(rho, 1.2, 3.5, DephasingMode::common, {0.7, -0.3, 0.2});
    const auto basis = PreferredBasis::computational(4);
    EXPECT_NEAR(c_l1(a, basis).value, c_l1(b, basis).value, 1e-12);
    EXPECT_GT(max_abs_diff(a.matrix(), b.matrix()), 1e-3);
}

TEST(Diss2q, DoublyExcitedPopulationDecays) {
    const std::vector<Complex> both{0.0, 0.0, 0.0, 1.0};
    const DensityOperator e = validate_density(outer(both));
    for (double ratio : {0.4, 4.0}) {
        const auto r = apply_diss2q(e, 1.0, ratio, 0.5);
        double trace = 0.0;
        for (std::size_t k = 0; k < 4; ++k) trace += r(k, k).real();
        EXPECT_NEAR(trace, 1.0, 1e-12);
        EXPECT_LT(r(3, 3).real(), 1.0);
    }
}

TEST(Diss2q, SingletIsDarkWhenFullyCorrelated) {
    // psi1 decays at rate (1 - B) gamma, so it is stationary at B = 1
    const double h = 1.0 / std::numbers::sqrt2;
    const std::vector<Complex> singlet{0.0, h, -h, 0.0};
    const DensityOperator s = validate_density(outer(singlet));
    EXPECT_LT(max_abs_diff(apply_diss2q(s, 2.0, 0.4, 1.0).matrix(), s.matrix()), 1e-12);
}

TEST(Channels, ZeroTimeIsIdentity) {
    std::mt19937_64 rng(11);
    for (const auto& spec : {ChannelSpec::deph1q(3.5), ChannelSpec::diss1q(4.0), ChannelSpec::diss2q(4.0, 0.5),
                             ChannelSpec::deph2q(3.5, DephasingMode::independent)}) {
        const DensityOperator rho = random_state(rng, spec.dim());
        EXPECT_LT(max_abs_diff(apply_channel(spec, rho, 0.0).matrix(), rho.matrix()), 1e-14);
    }
}

TEST(Channels, IncoherentStatesStayIncoherent) {
    for (const auto& spec : {ChannelSpec::deph1q(3.5), ChannelSpec::diss1q(4.0), ChannelSpec::diss2q(4.0, 0.3),
                             ChannelSpec::deph2q(3.5, DephasingMode::common)}) {
        const PreferredBasis basis = spec.basis();
        std::vector<double> p(spec.dim(), 1.0 / static_cast<double>(spec.dim()));
        p[0] *= 0.5;
        p[spec.dim() - 1] *= 1.5;
        const auto rho = validate_density(from_basis_coordinates(SquareMatrix::diagonal(std::span<const double>(p)), basis));
        for (double t : {0.5, 1.7, 6.0}) EXPECT_TRUE(is_incoherent(apply_channel(spec, rho, t), basis)) << t;
    }
}

TEST(Channels, DimensionMismatchThrows) {
    EXPECT_THROW(apply_channel(ChannelSpec::diss2q(4.0, 0.5), plus(), 1.0), DimensionError);
}

TEST(KrausSet, RejectsIncompleteSets) {
    EXPECT_THROW(KrausSet({ops::lowering()}), IncompleteKrausError);
    EXPECT_THROW(KrausSet({}), IncompleteKrausError);
}
