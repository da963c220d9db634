// nonmarkov.hpp: coherence revivals and the coherence-based non-Markovianity measures
//
//   N_C   = max over rho0 of  int_{dC/dt > 0} dC/dt dt
//   N_C^m = the same maximum restricted to maximally coherent rho0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohmark/channels.hpp"
#include "cohmark/qmat.hpp"

namespace cohmark {

inline constexpr double kDefaultNoiseFloor = 1e-10;

struct GrowthInterval {
    double t_start;
    double t_end;
    double gain;
};

/// Maximal runs where the sampled values increase. A single falling step no
/// larger than noise_floor between two rising runs is absorbed; runs whose
/// total gain does not exceed noise_floor are dropped.
std::vector<GrowthInterval> detect_growth(std::span<const double> times, std::span<const double> values,
                                          double noise_floor = kDefaultNoiseFloor);

/// 20 for the dephasing family (units 1/omega_c), 30 for the dissipative family (units 1/lambda).
double default_t_max(ChannelKind kind) noexcept;
inline constexpr double kDefaultDt = 1e-3;

struct TrajectoryGrowth {
    std::vector<GrowthInterval> intervals;
    double total_gain = 0.0;
};

/// Growth of C_l1 along the exact map from rho0. Interval ends are refined
/// between samples, so gains are those of the continuous trajectory.
TrajectoryGrowth measure_trajectory(const ChannelSpec& spec, const DensityOperator& rho0, double t_max, double dt);

enum class MeasureVariant { full_nc, simplified_ncm, closed_form };
std::string_view to_string(MeasureVariant v) noexcept;

struct MeasureGrid {
    double t_max;
    double dt;
    int phase_grid;
};

struct MeasureTolerances {
    double noise_floor = kDefaultNoiseFloor;
    double min_angle_step = 1e-4;   // pattern-search resolution (rad)
    double refine_time_tol = 1e-9;  // interval-end refinement (time units)
};

/// A candidate optimizer state given by fixed phases, evaluated for comparison.
struct ReferenceState {
    std::string label;
    std::vector<double> phases;
    double value;
    bool matches_optimum;
};

struct MeasureReport {
    double value;
    MeasureVariant variant;
    DensityOperator maximizer;        // computational coordinates
    std::vector<double> parameters;   // phases (simplified) or Bloch angles theta, phi (full)
    std::vector<GrowthInterval> intervals;
    MeasureGrid grid;
    MeasureTolerances tolerances;
    bool converged;
    std::vector<ReferenceState> references;
};

struct OptimizerConfig {
    int grid = 12;
    bool refine = true;
    double min_angle_step = 1e-4;
    /// When set, no optimization is done: the pure state with these Bloch
    /// angles (theta, phi) is evaluated as is.
    std::optional<std::pair<double, double>> fixed_bloch;
};

/// Full measure. One-qubit channels optimize over pure states on the Bloch
/// sphere; two-qubit channels delegate to measure_simplified.
MeasureReport measure_full(const ChannelSpec& spec, double t_max, double dt, const OptimizerConfig& cfg = {});

/// Maximum over maximally coherent states of the channel's preferred basis,
/// phases (0, phi_2, ..., phi_d).
MeasureReport measure_simplified(const ChannelSpec& spec, double t_max, double dt, int phase_grid = 12,
                                 bool refine = true);

/// -2 int_{gamma<0} gamma Gamma dt.
double closed_form_deph1q(double s, double t_max);
/// Total increase of |G| over its growth set; detuning in units of lambda.
double closed_form_diss1q(double ratio, double detuning, double t_max);
/// -4 int_{gamma<0} gamma (Gamma + Gamma^4) dt (common) or gamma (Gamma + Gamma^2) dt (independent).
double closed_form_deph2q(double s, DephasingMode mode, double t_max);

/// Closed form for the channel when one exists.
std::optional<double> closed_form(const ChannelSpec& spec, double t_max);

/// Intervals where the zero-temperature dephasing rate is negative.
std::vector<std::pair<double, double>> negative_rate_intervals(double s, double t_max);

/// Two readings of the integrated two-qubit decay rate at t_max: the g^2
/// continuation -ln g(t)^2 and the plain integral of gamma with 1e-3 windows
/// around its poles cut out (and with the windows' principal values added back).
struct LambdaContinuationCheck {
    double lambda_g2;
    double lambda_pole_excluded;
    double lambda_principal_value;
    std::size_t poles;
};
LambdaContinuationCheck diss2q_lambda_check(double ratio, double t_max);

}  // namespace cohmark
