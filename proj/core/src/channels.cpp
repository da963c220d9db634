#include "cohmark/channels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "cohmark/envmodels.hpp"

namespace cohmark {

namespace {

// Rotated Bell indices used by the collective dissipative channel.
constexpr std::size_t kPsiGround = 0;  // |00>
constexpr std::size_t kPsiAnti = 1;    // (|01> - |10>)/sqrt2
constexpr std::size_t kPsiSym = 2;     // (|01> + |10>)/sqrt2
constexpr std::size_t kPsiTop = 3;     // |11>

// Layout of MapFactors::powers
//   dephasing:  powers[k] = Gamma^k, k = 0..4
//   diss2q:     x^((3+B)/2), x^((3-B)/2), x^((1+B)/2), x^((1-B)/2) with x = exp(-Lambda)

// sigma_z eigenvalue of qubit q (0 = first) in computational state m.
int z_value(std::size_t m, int q) { return ((m >> (1 - q)) & 1U) ? -1 : 1; }

// Exponent k such that the (m, n) coherence of the two-qubit dephasing map
// scales as Gamma^k.
int deph2q_exponent(ChannelKind kind, std::size_t m, std::size_t n) {
    if (kind == ChannelKind::deph2q_common) {
        const int sm = z_value(m, 0) + z_value(m, 1);
        const int sn = z_value(n, 0) + z_value(n, 1);
        return (sm - sn) * (sm - sn) / 4;
    }
    return std::popcount(static_cast<unsigned>(m ^ n));
}

double deph2q_energy(const SystemHamiltonian& h, std::size_t m) {
    const int z1 = z_value(m, 0);
    const int z2 = z_value(m, 1);
    return 0.5 * (h.eps1 * z1 + h.eps2 * z2 + h.coupling * z1 * z2);
}

// x^a (1 - x^c) / c, continuous in c -> 0 and at x = 0.
double feed_fraction(double x, double a, double c) {
    if (x <= 0.0) {
        if (a > 0.0) return 0.0;
        return 1.0 / c;
    }
    const double lx = std::log(x);
    const double xa = std::exp(a * lx);
    if (std::abs(c) < 1e-12) return xa * (-lx);
    return xa * (-std::expm1(c * lx)) / c;
}

void fill_dephasing_powers(MapFactors& f) {
    f.powers[0] = 1.0;
    for (std::size_t k = 1; k < f.powers.size(); ++k) f.powers[k] = f.powers[k - 1] * f.envelope;
}

void fill_diss2q_powers(MapFactors& f, double b) {
    const double x = f.envelope;
    f.powers[0] = std::pow(x, 0.5 * (3.0 + b));
    f.powers[1] = std::pow(x, 0.5 * (3.0 - b));
    f.powers[2] = std::pow(x, 0.5 * (1.0 + b));
    f.powers[3] = std::pow(x, 0.5 * (1.0 - b));
    f.powers[4] = 0.0;
}

SquareMatrix hermitize(const SquareMatrix& m) { return 0.5 * (m + dagger(m)); }

void require_native_dim(const ChannelSpec& spec, const SquareMatrix& rho0) {
    if (rho0.dim() != spec.dim()) {
        throw DimensionError("state dimension " + std::to_string(rho0.dim()) + " does not match channel dimension " +
                             std::to_string(spec.dim()));
    }
}

}  // namespace

std::string_view to_string(ChannelKind kind) noexcept {
    switch (kind) {
    case ChannelKind::deph1q: return "deph1q";
    case ChannelKind::diss1q: return "diss1q";
    case ChannelKind::deph2q_common: return "deph2q_common";
    case ChannelKind::deph2q_independent: return "deph2q_independent";
    case ChannelKind::diss2q_common: return "diss2q_common";
    }
    return "unknown";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view name) noexcept {
    for (auto k : {ChannelKind::deph1q, ChannelKind::diss1q, ChannelKind::deph2q_common,
                   ChannelKind::deph2q_independent, ChannelKind::diss2q_common}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

ChannelSpec ChannelSpec::deph1q(double s) {
    ChannelSpec c;
    c.kind = ChannelKind::deph1q;
    c.s = s;
    c.validate();
    return c;
}

ChannelSpec ChannelSpec::diss1q(double ratio, double delta_over_gamma0) {
    ChannelSpec c;
    c.kind = ChannelKind::diss1q;
    c.ratio = ratio;
    c.delta_over_gamma0 = delta_over_gamma0;
    c.validate();
    return c;
}

ChannelSpec ChannelSpec::deph2q(double s, DephasingMode mode, SystemHamiltonian h) {
    ChannelSpec c;
    c.kind = mode == DephasingMode::common ? ChannelKind::deph2q_common : ChannelKind::deph2q_independent;
    c.s = s;
    c.hamiltonian = h;
    c.validate();
    return c;
}

ChannelSpec ChannelSpec::diss2q(double ratio, double b) {
    ChannelSpec c;
    c.kind = ChannelKind::diss2q_common;
    c.ratio = ratio;
    c.b = b;
    c.validate();
    return c;
}

std::size_t ChannelSpec::dim() const noexcept {
    return (kind == ChannelKind::deph1q || kind == ChannelKind::diss1q) ? 2 : 4;
}

PreferredBasis ChannelSpec::basis() const {
    if (kind == ChannelKind::diss2q_common) return PreferredBasis::rotated_bell();
    return PreferredBasis::computational(dim());
}

bool ChannelSpec::is_dephasing() const noexcept {
    return kind == ChannelKind::deph1q || kind == ChannelKind::deph2q_common ||
           kind == ChannelKind::deph2q_independent;
}

void ChannelSpec::validate() const {
    auto bad = [](const std::string& m) { throw std::invalid_argument(m); };
    if (is_dephasing()) {
        if (!(s > 0.0) || !std::isfinite(s)) bad("Ohmicity s must be positive");
        const auto& h = hamiltonian;
        if (!std::isfinite(h.eps1) || !std::isfinite(h.eps2) || !std::isfinite(h.coupling)) {
            bad("system Hamiltonian parameters must be finite");
        }
        return;
    }
    if (!(ratio > 0.0) || !std::isfinite(ratio)) bad("ratio gamma0/lambda must be positive");
    if (kind == ChannelKind::diss1q && !std::isfinite(delta_over_gamma0)) bad("detuning must be finite");
    if (kind == ChannelKind::diss2q_common && !(b >= kMinSpatialCorrelation && b <= 1.0)) {
        std::ostringstream os;
        os << "spatial correlation B must lie in [" << kMinSpatialCorrelation << ", 1], got " << b;
        bad(os.str());
    }
}

MapFactors map_factors(const ChannelSpec& spec, double t) {
    spec.validate();
    MapFactors f;
    f.t = t;
    switch (spec.kind) {
    case ChannelKind::deph1q:
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent:
        f.envelope = big_gamma(t, spec.s);
        fill_dephasing_powers(f);
        break;
    case ChannelKind::diss1q:
        f.amplitude = g_lorentzian(t, spec.ratio, spec.detuning());
        f.envelope = std::norm(f.amplitude);
        break;
    case ChannelKind::diss2q_common:
        f.envelope = g_and_lambda_twoqubit(t, spec.ratio).e_minus_lambda;
        fill_diss2q_powers(f, spec.b);
        break;
    }
    return f;
}

MapFactors diss2q_factors(double t, double e_minus_lambda, double b) {
    if (!(e_minus_lambda >= 0.0) || !(b >= kMinSpatialCorrelation && b <= 1.0)) {
        throw std::invalid_argument("diss2q_factors: envelope must be non-negative and B in range");
    }
    MapFactors f;
    f.t = t;
    f.envelope = e_minus_lambda;
    fill_diss2q_powers(f, b);
    return f;
}

std::vector<MapFactors> map_factors_on_grid(const ChannelSpec& spec, std::span<const double> times) {
    spec.validate();
    std::vector<MapFactors> out;
    out.reserve(times.size());
    if (spec.is_dephasing()) {
        const auto env = big_gamma_on_grid(times, spec.s);
        for (std::size_t i = 0; i < times.size(); ++i) {
            MapFactors f;
            f.t = times[i];
            f.envelope = env[i];
            fill_dephasing_powers(f);
            out.push_back(f);
        }
        return out;
    }
    for (double t : times) out.push_back(map_factors(spec, t));
    return out;
}

SquareMatrix propagate_native(const ChannelSpec& spec, const SquareMatrix& rho0, const MapFactors& f) {
    require_native_dim(spec, rho0);
    SquareMatrix r = rho0;
    switch (spec.kind) {
    case ChannelKind::deph1q:
        r(0, 1) *= f.envelope;
        r(1, 0) *= f.envelope;
        break;
    case ChannelKind::diss1q: {
        const double g2 = std::norm(f.amplitude);
        r(0, 0) = rho0(0, 0) + rho0(1, 1) * (1.0 - g2);
        r(1, 1) = rho0(1, 1) * g2;
        r(0, 1) = rho0(0, 1) * std::conj(f.amplitude);
        r(1, 0) = rho0(1, 0) * f.amplitude;
        break;
    }
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent: {
        const bool phases = !spec.hamiltonian.is_zero();
        for (std::size_t m = 0; m < 4; ++m) {
            for (std::size_t n = 0; n < 4; ++n) {
                if (m == n) continue;
                Complex v = rho0(m, n) * f.powers[deph2q_exponent(spec.kind, m, n)];
                if (phases) {
                    const double de = deph2q_energy(spec.hamiltonian, m) - deph2q_energy(spec.hamiltonian, n);
                    v *= std::polar(1.0, -de * f.t);
                }
                r(m, n) = v;
            }
        }
        break;
    }
    case ChannelKind::diss2q_common: {
        const double x = f.envelope;
        const double b = spec.b;
        const auto& p = f.powers;
        // Coherences.
        r(kPsiTop, kPsiSym) = rho0(kPsiTop, kPsiSym) * p[0];
        r(kPsiTop, kPsiAnti) = rho0(kPsiTop, kPsiAnti) * p[1];
        r(kPsiTop, kPsiGround) = rho0(kPsiTop, kPsiGround) * x;
        r(kPsiSym, kPsiAnti) = rho0(kPsiSym, kPsiAnti) * x;
        r(kPsiSym, kPsiGround) =
            (rho0(kPsiSym, kPsiGround) + rho0(kPsiTop, kPsiSym) * ((1.0 + b) * (1.0 - x))) * p[2];
        r(kPsiAnti, kPsiGround) =
            (rho0(kPsiAnti, kPsiGround) - rho0(kPsiTop, kPsiAnti) * ((1.0 - b) * (1.0 - x))) * p[3];
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) r(i, j) = std::conj(r(j, i));
        // Populations: psi3 -> psi2 -> psi0 at rate (1+B), psi3 -> psi1 -> psi0 at rate (1-B).
        const double top0 = rho0(kPsiTop, kPsiTop).real();
        const double sym0 = rho0(kPsiSym, kPsiSym).real();
        const double anti0 = rho0(kPsiAnti, kPsiAnti).real();
        const double top = top0 * x * x;
        const double sym = std::pow(x, 1.0 + b) * sym0 + (1.0 + b) * top0 * feed_fraction(x, 1.0 + b, 1.0 - b);
        const double anti = std::pow(x, 1.0 - b) * anti0 + (1.0 - b) * top0 * feed_fraction(x, 1.0 - b, 1.0 + b);
        const double trace = rho0.trace().real();
        r(kPsiTop, kPsiTop) = top;
        r(kPsiSym, kPsiSym) = sym;
        r(kPsiAnti, kPsiAnti) = anti;
        r(kPsiGround, kPsiGround) = trace - top - sym - anti;
        break;
    }
    }
    return r;
}

double coherence_l1_native(const ChannelSpec& spec, const SquareMatrix& rho0, const MapFactors& f) {
    switch (spec.kind) {
    case ChannelKind::deph1q: return 2.0 * std::abs(rho0(1, 0)) * f.envelope;
    case ChannelKind::diss1q: return 2.0 * std::abs(rho0(1, 0)) * std::abs(f.amplitude);
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent: {
        double c = 0.0;
        for (std::size_t m = 0; m < 4; ++m)
            for (std::size_t n = m + 1; n < 4; ++n)
                c += std::abs(rho0(m, n)) * f.powers[deph2q_exponent(spec.kind, m, n)];
        return 2.0 * c;
    }
    case ChannelKind::diss2q_common: {
        const double x = f.envelope;
        const double b = spec.b;
        const auto& p = f.powers;
        const Complex ts = rho0(kPsiTop, kPsiSym);
        const Complex ta = rho0(kPsiTop, kPsiAnti);
        double c = std::abs(ts) * p[0] + std::abs(ta) * p[1] +
                   (std::abs(rho0(kPsiTop, kPsiGround)) + std::abs(rho0(kPsiSym, kPsiAnti))) * x;
        c += std::abs(rho0(kPsiSym, kPsiGround) + ts * ((1.0 + b) * (1.0 - x))) * p[2];
        c += std::abs(rho0(kPsiAnti, kPsiGround) - ta * ((1.0 - b) * (1.0 - x))) * p[3];
        return 2.0 * c;
    }
    }
    return 0.0;
}

DensityOperator apply_channel(const ChannelSpec& spec, const DensityOperator& rho0, double t) {
    const PreferredBasis basis = spec.basis();
    if (rho0.dim() != spec.dim()) throw DimensionError("state dimension does not match channel");
    const SquareMatrix native0 = to_basis_coordinates(rho0.matrix(), basis);
    const SquareMatrix native = propagate_native(spec, native0, map_factors(spec, t));
    return validate_density(hermitize(from_basis_coordinates(native, basis)), 1e-8);
}

DensityOperator apply_deph1q(const DensityOperator& rho0, double t, double s) {
    return apply_channel(ChannelSpec::deph1q(s), rho0, t);
}

DensityOperator apply_diss1q(const DensityOperator& rho0, double t, double ratio, double detuning) {
    // ChannelSpec stores detuning relative to gamma0; here it arrives in units of lambda.
    return apply_channel(ChannelSpec::diss1q(ratio, detuning / ratio), rho0, t);
}

DensityOperator apply_deph2q(const DensityOperator& rho0, double t, double s, DephasingMode mode,
                             const SystemHamiltonian& h) {
    return apply_channel(ChannelSpec::deph2q(s, mode, h), rho0, t);
}

DensityOperator apply_diss2q(const DensityOperator& rho0, double t, double ratio, double b) {
    return apply_channel(ChannelSpec::diss2q(ratio, b), rho0, t);
}

KrausSet::KrausSet(std::vector<SquareMatrix> operators) : ops_(std::move(operators)) {
    if (ops_.empty()) throw IncompleteKrausError("Kraus set is empty");
    const std::size_t d = ops_.front().dim();
    SquareMatrix sum(d);
    for (const auto& k : ops_) {
        if (k.dim() != d) throw DimensionError("Kraus operators have mixed dimensions");
        sum += dagger(k) * k;
    }
    const double defect = max_abs_diff(sum, SquareMatrix::identity(d));
    if (defect > 1e-10) {
        throw IncompleteKrausError("Kraus set is not complete: |sum K^dag K - 1| = " + std::to_string(defect));
    }
}

SquareMatrix KrausSet::apply(const SquareMatrix& rho) const {
    SquareMatrix out(rho.dim());
    for (const auto& k : ops_) out += k * rho * dagger(k);
    return out;
}

KrausSet kraus_deph1q(double t, double s) {
    const double p = std::clamp(1.0 - big_gamma(t, s), 0.0, 1.0);
    return KrausSet({SquareMatrix::identity(2) * Complex(std::sqrt(1.0 - 0.5 * p)),
                     ops::sigma_z() * Complex(std::sqrt(0.5 * p))});
}

}  // namespace cohmark
