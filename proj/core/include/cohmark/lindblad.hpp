// lindblad.hpp: time-local master equations and incoherence checks
//
//   d rho / dt = -i [H(t), rho] + sum_k gamma_k(t) (A_k rho A_k^dag - 1/2 {A_k^dag A_k, rho})

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohmark/channels.hpp"
#include "cohmark/coherence.hpp"
#include "cohmark/qmat.hpp"

namespace cohmark {

struct LindbladTerm {
    std::function<double(double)> rate;
    std::function<SquareMatrix(double)> op;
};

/// Declares the poles of a generator of the form gamma(t) L1, with L1 fixed.
/// Poles sit at zeros of `denominator`. Windows of width `window` around each
/// pole are not integrated through; the state is carried across them as
/// exp(dLambda L1), with dLambda the principal value of int gamma over the window.
struct PoleStructure {
    std::function<double(double)> denominator;
    std::function<double(double)> rate;
    double window = 1e-3;
};

struct TimeLocalGenerator {
    std::size_t dim = 2;
    std::function<SquareMatrix(double)> hamiltonian;  // empty means H = 0
    std::vector<LindbladTerm> terms;
    std::optional<PoleStructure> poles;
    /// Coordinates the integrator works in. Populations of a basis that decay
    /// to ~1e-13 next to a pole are lost to cancellation in any other frame.
    std::optional<PreferredBasis> working_basis;
};

/// L(t) rho.
SquareMatrix liouvillian_apply(const TimeLocalGenerator& gen, double t, const SquareMatrix& rho);

enum class IntegratorMethod { rk4_fixed, rk45_adaptive };

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::rk45_adaptive;
    double dt = 1e-3;       // fixed step (rk4) or initial step (rk45)
    double rtol = 1e-10;
    double atol = 1e-16;  // components near a pole fall to ~1e-13
    double t_max = 20.0;
    bool renormalize_trace = false;
    double invariant_tol = 1e-6;
    std::size_t max_steps_per_sample = 1'000'000;
};

struct PoleWindow {
    double pole;
    double t_begin;
    double t_end;
    double lambda_jump;  // principal-value increment of int gamma across the window
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityOperator> states;
    std::vector<PoleWindow> excluded_windows;
};

/// Coherence of every state of a trajectory.
std::vector<double> trajectory_coherence(const Trajectory& traj, const PreferredBasis& basis,
                                         CoherenceMeasure measure = CoherenceMeasure::l1);

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Integrates from rho0 at t = 0 and records the state at each sample time.
/// Samples falling inside a pole window are omitted; the windows are reported.
Trajectory integrate(const TimeLocalGenerator& gen, const DensityOperator& rho0, const IntegratorConfig& cfg,
                     std::span<const double> sample_times);

/// Pole windows of a generator on [0, t_max] (empty when no poles are declared).
std::vector<PoleWindow> find_pole_windows(const TimeLocalGenerator& gen, double t_max);

struct IosdSample {
    double t;
    bool hamiltonian_diagonal;   // D.1
    bool operators_column_rule;  // D.2
    bool diagonal_states_stay_diagonal;  // direct test on random incoherent states
    double worst_offdiagonal_rate;
};

struct IosdReport {
    std::vector<IosdSample> samples;

    bool d1() const noexcept;
    bool d2() const noexcept;
    bool sufficient_conditions() const noexcept { return d1() && d2(); }
    bool spot_test() const noexcept;
};

/// Checks the sufficient conditions for incoherent dynamics at each sampled
/// time, plus a direct test of L(t) on 20 random incoherent states.
IosdReport check_iosd_generator(const TimeLocalGenerator& gen, const PreferredBasis& basis,
                                std::span<const double> t_samples, std::uint64_t seed = 7);

struct KrausIosdReport {
    std::vector<bool> per_operator;
    bool pass = false;
};

/// Every Kraus operator must have at most one non-zero entry per column.
KrausIosdReport check_iosd_kraus(const KrausSet& kraus, const PreferredBasis& basis);

/// True when every column of m has at most one entry above tol.
bool column_rule(const SquareMatrix& m, double tol = 1e-12);

/// Master-equation generator of each channel (computational coordinates).
TimeLocalGenerator generator_for(const ChannelSpec& spec);

/// Generator with a constant dephasing rate, sigma_z jump operator.
TimeLocalGenerator constant_dephasing_generator(double rate);

}  // namespace cohmark
