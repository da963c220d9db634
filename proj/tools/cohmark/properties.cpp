#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include <cohmark/channels.hpp>
#include <cohmark/coherence.hpp>
#include <cohmark/lindblad.hpp>

namespace cohmark::app {

namespace {

constexpr double kMonotoneTol = 1e-9;
constexpr double kConvexTol = 1e-9;
constexpr double kTraceTol = 1e-10;
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-9;
constexpr double kOdeTol = 1e-7;
constexpr std::size_t kMaxExamples = 10;

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

// Ginibre draw of random rank, in computational coordinates.
DensityOperator random_state(Rng& rng, std::size_t d) {
    std::normal_distribution<double> normal;
    const auto rank = std::uniform_int_distribution<std::size_t>(1, d)(rng);
    SquareMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < rank; ++k) g(i, k) = Complex(normal(rng), normal(rng));
    SquareMatrix rho = g * dagger(g);
    rho *= Complex(1.0 / rho.trace().real(), 0.0);
    return validate_density(0.5 * (rho + dagger(rho)));
}

// Diagonal in the basis, returned in computational coordinates.
DensityOperator random_incoherent(Rng& rng, const PreferredBasis& basis) {
    std::exponential_distribution<double> expo;
    std::vector<double> p(basis.dim());
    double sum = 0.0;
    for (auto& x : p) sum += (x = expo(rng));
    for (auto& x : p) x /= sum;
    return validate_density(from_basis_coordinates(SquareMatrix::diagonal(std::span<const double>(p)), basis));
}

ChannelSpec random_channel(Rng& rng, bool markovian) {
    const int kind = std::uniform_int_distribution<int>(0, 4)(rng);
    const double s = markovian ? uniform(rng, 0.2, 2.0) : uniform(rng, 0.2, 6.0);
    const double ratio = markovian ? uniform(rng, 0.05, 0.45) : uniform(rng, 0.05, 5.0);
    switch (kind) {
    case 0: return ChannelSpec::deph1q(s);
    case 1: return ChannelSpec::diss1q(ratio, 0.001);
    case 2:
    case 3: {
        SystemHamiltonian h{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0), uniform(rng, -0.5, 0.5)};
        return ChannelSpec::deph2q(s, kind == 2 ? DephasingMode::common : DephasingMode::independent, h);
    }
    default: return ChannelSpec::diss2q(ratio, uniform(rng, kMinSpatialCorrelation, 1.0));
    }
}

std::string describe(const ChannelSpec& c) {
    std::ostringstream os;
    os << to_string(c.kind);
    if (c.is_dephasing()) {
        os << " s=" << c.s;
    } else {
        os << " ratio=" << c.ratio;
        if (c.kind == ChannelKind::diss2q_common) os << " B=" << c.b;
    }
    return os.str();
}

// Propagated state without the hermitizing validation, so invariants are tested as produced.
SquareMatrix raw_evolve(const ChannelSpec& spec, const DensityOperator& rho0, double t) {
    const PreferredBasis basis = spec.basis();
    const SquareMatrix native = to_basis_coordinates(rho0.matrix(), basis);
    return from_basis_coordinates(propagate_native(spec, native, map_factors(spec, t)), basis);
}

class Suite {
public:
    explicit Suite(std::uint64_t seed) : rng_(seed) { report_.seed = seed; }

    void trial() {
        ++report_.trials;
        markovian_trial();
        convexity_trial();
        incoherent_trial();
        invariants_trial();
    }

    PropertyReport finish() { return std::move(report_); }

private:
    void record(const std::string& property, bool ok, const std::string& detail) {
        ++report_.checks[property];
        if (ok) return;
        ++report_.failures[property];
        ++report_.violations;
        if (report_.examples.size() < kMaxExamples) report_.examples.push_back(property + ": " + detail);
    }

    void markovian_trial() {
        const ChannelSpec spec = random_channel(rng_, true);
        const PreferredBasis basis = spec.basis();
        const DensityOperator rho0 = random_state(rng_, spec.dim());
        const double t1 = uniform(rng_, 0.0, 10.0);
        const double t2 = t1 + uniform(rng_, 0.0, 10.0);
        const DensityOperator a = apply_channel(spec, rho0, t1);
        const DensityOperator b = apply_channel(spec, rho0, t2);
        std::ostringstream at;
        at << describe(spec) << " t1=" << t1 << " t2=" << t2;
        const double l1a = c_l1(a, basis).value;
        const double l1b = c_l1(b, basis).value;
        const double rea = c_re(a, basis).value;
        const double reb = c_re(b, basis).value;
        record("monotone_l1", l1b <= l1a + kMonotoneTol, at.str() + " C " + std::to_string(l1a) + " -> " + std::to_string(l1b));
        record("monotone_re", reb <= rea + kMonotoneTol, at.str() + " C " + std::to_string(rea) + " -> " + std::to_string(reb));

        // The same trajectory through the master equation.
        IntegratorConfig cfg;
        cfg.t_max = t2;
        const std::vector<double> times{t1, t2};
        try {
            const Trajectory traj = integrate(generator_for(spec), rho0, cfg, times);
            bool ok = traj.states.size() == 2;
            double err = 0.0;
            for (std::size_t k = 0; ok && k < 2; ++k) {
                const SquareMatrix& m = traj.states[k].matrix();
                err = std::max({err, std::abs(m.trace().real() - 1.0),
                                -std::min(0.0, eigvals_hermitian(m).front())});
                err = std::max(err, max_abs_diff(m, (k == 0 ? a : b).matrix()));
            }
            record("ode_trajectory", ok && err <= kOdeTol, at.str() + " error " + std::to_string(err));
        } catch (const std::exception& e) {
            record("ode_trajectory", false, at.str() + " " + e.what());
        }
    }

    void convexity_trial() {
        const std::size_t d = std::bernoulli_distribution(0.5)(rng_) ? 2 : 4;
        const PreferredBasis basis = d == 2 || std::bernoulli_distribution(0.5)(rng_)
                                         ? PreferredBasis::computational(d)
                                         : PreferredBasis::rotated_bell();
        const DensityOperator x = random_state(rng_, d);
        const DensityOperator y = random_state(rng_, d);
        const double p = uniform(rng_, 0.0, 1.0);
        const DensityOperator mix = validate_density(Complex(p, 0.0) * x.matrix() + Complex(1.0 - p, 0.0) * y.matrix());
        const std::string at = std::string(to_string(basis.label())) + " d=" + std::to_string(d) + " p=" + std::to_string(p);
        record("convex_l1", c_l1(mix, basis).value <= p * c_l1(x, basis).value + (1 - p) * c_l1(y, basis).value + kConvexTol,
               at);
        record("convex_re", c_re(mix, basis).value <= p * c_re(x, basis).value + (1 - p) * c_re(y, basis).value + kConvexTol,
               at);
    }

    void incoherent_trial() {
        const ChannelSpec spec = random_channel(rng_, false);
        const PreferredBasis basis = spec.basis();
        const DensityOperator delta = random_incoherent(rng_, basis);
        const std::string at = describe(spec);
        record("incoherent_zero", c_l1(delta, basis).value <= 1e-12 && c_re(delta, basis).value <= 1e-9, at);
        const double t = uniform(rng_, 0.0, default_t_max_of(spec));
        const DensityOperator out = apply_channel(spec, delta, t);
        record("incoherent_preserved", is_incoherent(out, basis), at + " t=" + std::to_string(t));
    }

    void invariants_trial() {
        const ChannelSpec spec = random_channel(rng_, false);
        const DensityOperator rho0 = random_state(rng_, spec.dim());
        const double t = uniform(rng_, 0.0, default_t_max_of(spec));
        const std::string at = describe(spec) + " t=" + std::to_string(t);
        const SquareMatrix m = raw_evolve(spec, rho0, t);
        record("trace_preserved", std::abs(m.trace().real() - 1.0) <= kTraceTol && std::abs(m.trace().imag()) <= kTraceTol,
               at);
        record("hermitian", hermiticity_defect(m) <= kHermTol, at);
        record("positive", eigvals_hermitian(0.5 * (m + dagger(m))).front() >= -kPsdTol, at);
    }

    static double default_t_max_of(const ChannelSpec& spec) { return spec.is_dephasing() ? 20.0 : 30.0; }

    Rng rng_;
    PropertyReport report_;
};

}  // namespace

PropertyReport run_property_suite(std::uint64_t seed, std::size_t trials) {
    Suite suite(seed);
    for (std::size_t k = 0; k < trials; ++k) suite.trial();
    return suite.finish();
}

std::string to_json(const PropertyReport& r) {
    nlohmann::ordered_json j;
    j["tool"] = "cohmark";
    j["command"] = "check";
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["ok"] = r.ok();
    j["checks"] = r.checks;
    j["failures"] = r.failures;
    j["examples"] = r.examples;
    return j.dump(2) + "\n";
}

}  // namespace cohmark::app
