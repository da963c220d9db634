// channels.hpp: exact dynamical maps of the dephasing and dissipative channels
//
// Conventions
//   * |0> is the ground level and |1> the excited level of every qubit; the
//     dissipative channels lower |1> -> |0>.
//   * Two-qubit computational ordering is {|00>, |01>, |10>, |11>}.
//   * The collective dissipative channel is diagonalized by the rotated Bell
//     basis {psi0 = |00>, psi1 = antisymmetric, psi2 = symmetric, psi3 = |11>}.
//     In that basis psi3 decays through psi2 (rate (1+B) gamma) and psi1
//     (rate (1-B) gamma) to psi0.
//
// "Native" coordinates are the coordinates of the channel's preferred basis.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cohmark/coherence.hpp"
#include "cohmark/qmat.hpp"

namespace cohmark {

enum class ChannelKind { deph1q, diss1q, deph2q_common, deph2q_independent, diss2q_common };
enum class DephasingMode { common, independent };

std::string_view to_string(ChannelKind kind) noexcept;
std::optional<ChannelKind> parse_channel_kind(std::string_view name) noexcept;

/// Smallest value of sin(x)/x.
inline constexpr double kMinSpatialCorrelation = -0.2173;

/// Diagonal two-qubit system Hamiltonian eps1 sz1/2 + eps2 sz2/2 + J sz1 sz2/2.
struct SystemHamiltonian {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double coupling = 0.0;

    bool is_zero() const noexcept { return eps1 == 0.0 && eps2 == 0.0 && coupling == 0.0; }
};

struct ChannelSpec {
    ChannelKind kind = ChannelKind::deph1q;
    double s = 1.0;                     // Ohmicity (dephasing family)
    double ratio = 0.4;                 // gamma0 / lambda (dissipative family)
    double delta_over_gamma0 = 0.001;   // detuning relative to gamma0 (diss1q)
    double b = 0.0;                     // spatial correlation sin(qd)/qd (diss2q)
    SystemHamiltonian hamiltonian{};    // deph2q only

    static ChannelSpec deph1q(double s);
    static ChannelSpec diss1q(double ratio, double delta_over_gamma0 = 0.001);
    static ChannelSpec deph2q(double s, DephasingMode mode, SystemHamiltonian h = {});
    static ChannelSpec diss2q(double ratio, double b);

    std::size_t dim() const noexcept;
    PreferredBasis basis() const;
    bool is_dephasing() const noexcept;
    /// Detuning delta in units of lambda.
    double detuning() const noexcept { return delta_over_gamma0 * ratio; }

    /// Throws std::invalid_argument when a parameter is out of range.
    void validate() const;
};

/// Time-dependent scalars that fully determine a channel's map at one time.
struct MapFactors {
    double t = 0.0;
    double envelope = 1.0;            // Gamma(t), |G(t)|^2 or exp(-Lambda(t))
    Complex amplitude{1.0, 0.0};      // G(t) for diss1q
    std::array<double, 5> powers{};   // see channels.cpp for the per-channel layout
};

MapFactors map_factors(const ChannelSpec& spec, double t);

/// diss2q factors for a given exp(-Lambda). Zero gives the limit at a zero of g,
/// where coherences vanish like |g|^(1 - B).
MapFactors diss2q_factors(double t, double e_minus_lambda, double b);

/// map_factors at every time of an ascending grid (dephasing envelopes are
/// accumulated along the grid rather than re-integrated per point).
std::vector<MapFactors> map_factors_on_grid(const ChannelSpec& spec, std::span<const double> times);

/// rho(t) in native coordinates from rho(0) in native coordinates.
SquareMatrix propagate_native(const ChannelSpec& spec, const SquareMatrix& rho0, const MapFactors& f);

/// l1 coherence of propagate_native(spec, rho0, f), without forming rho(t).
double coherence_l1_native(const ChannelSpec& spec, const SquareMatrix& rho0, const MapFactors& f);

/// Maps for validated states in computational coordinates.
DensityOperator apply_channel(const ChannelSpec& spec, const DensityOperator& rho0, double t);

DensityOperator apply_deph1q(const DensityOperator& rho0, double t, double s);
DensityOperator apply_diss1q(const DensityOperator& rho0, double t, double ratio, double detuning);
DensityOperator apply_deph2q(const DensityOperator& rho0, double t, double s, DephasingMode mode,
                             const SystemHamiltonian& h = {});
DensityOperator apply_diss2q(const DensityOperator& rho0, double t, double ratio, double b);

class IncompleteKrausError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Kraus operators with sum K^dagger K = 1 (checked to 1e-10 on construction).
class KrausSet {
public:
    explicit KrausSet(std::vector<SquareMatrix> operators);

    const std::vector<SquareMatrix>& operators() const noexcept { return ops_; }
    std::size_t dim() const noexcept { return ops_.front().dim(); }
    SquareMatrix apply(const SquareMatrix& rho) const;

private:
    std::vector<SquareMatrix> ops_;
};

/// K0 = sqrt(1 - p/2) 1, K1 = sqrt(p/2) sigma_z with p = 1 - Gamma(t).
KrausSet kraus_deph1q(double t, double s);

}  // namespace cohmark
