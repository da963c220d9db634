#include "cohmark/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "cohmark/coherence.hpp"
#include "cohmark/envmodels.hpp"
#include "cohmark/lindblad.hpp"
#include "cohmark/quadrature.hpp"

namespace cohmark {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kRefineBits = 40;
constexpr std::size_t kScreenCandidates = 4;
constexpr std::size_t kRootGrid = 10000;
constexpr double kRootTol = 1e-10;

void check_horizon(double t_max, double dt) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
    if (!(dt > 0.0) || !(dt <= t_max)) throw std::invalid_argument("dt must be positive and at most t_max");
}

// Samples C_l1 of the exact map on a uniform grid and refines growth-interval
// ends on the continuous trajectory.
class GrowthEvaluator {
public:
    GrowthEvaluator(const ChannelSpec& spec, double t_max, double dt) : spec_(spec) {
        spec.validate();
        check_horizon(t_max, dt);
        const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(t_max / dt)));
        times_.resize(n + 1);
        for (std::size_t k = 0; k <= n; ++k) times_[k] = t_max * static_cast<double>(k) / static_cast<double>(n);
        factors_ = map_factors_on_grid(spec, times_);
        // Coherences of the two-qubit channel go as |g|^(1 - B) near zeros of g, a
        // cusp too steep for the minimizer when B is close to 1.
        if (spec.kind == ChannelKind::diss2q_common) {
            for (const auto& w : find_pole_windows(generator_for(spec), t_max))
                if (w.pole <= t_max) cusps_.push_back(w.pole);
        }
    }

    std::size_t samples() const noexcept { return times_.size(); }

    double sampled_gain(const SquareMatrix& native, std::size_t stride = 1) const {
        std::vector<double> ts;
        std::vector<double> cs;
        for (std::size_t k = 0; k < times_.size(); k += stride) {
            ts.push_back(times_[k]);
            cs.push_back(coherence_l1_native(spec_, native, factors_[k]));
        }
        double total = 0.0;
        for (const auto& iv : detect_growth(ts, cs)) total += iv.gain;
        return total;
    }

    TrajectoryGrowth refined(const SquareMatrix& native) const {
        std::vector<double> cs(times_.size());
        for (std::size_t k = 0; k < times_.size(); ++k) cs[k] = coherence_l1_native(spec_, native, factors_[k]);
        const auto coarse = detect_growth(times_, cs);

        auto coherence_at = [&](double t) { return coherence_l1_native(spec_, native, factors_at(t)); };
        auto index_of = [&](double t) {
            return static_cast<std::size_t>(std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
        };
        const std::size_t last = times_.size() - 1;

        TrajectoryGrowth out;
        double floor_t = 0.0;
        for (const auto& iv : coarse) {
            const std::size_t i = index_of(iv.t_start);
            const std::size_t j = index_of(iv.t_end);

            double ts = times_[i];
            double cstart = cs[i];
            const double lo = std::max(floor_t, times_[i == 0 ? 0 : i - 1]);
            const double hi = times_[std::min(i + 1, last)];
            if (hi > lo) {
                const auto m = boost::math::tools::brent_find_minima(coherence_at, lo, hi, kRefineBits);
                if (m.second < cstart) {
                    ts = m.first;
                    cstart = m.second;
                }
                for (double p : cusps_) {
                    if (p < lo || p > hi) continue;
                    const double c = coherence_l1_native(spec_, native, diss2q_factors(p, 0.0, spec_.b));
                    if (c < cstart) {
                        ts = p;
                        cstart = c;
                    }
                }
            }

            double te = times_[j];
            double cend = cs[j];
            const double lo2 = std::max(ts, times_[j - 1]);
            const double hi2 = times_[std::min(j + 1, last)];
            if (hi2 > lo2) {
                auto neg = [&](double t) { return -coherence_at(t); };
                const auto m = boost::math::tools::brent_find_minima(neg, lo2, hi2, kRefineBits);
                if (-m.second > cend) {
                    te = m.first;
                    cend = -m.second;
                }
            }
            out.intervals.push_back({ts, te, cend - cstart});
            out.total_gain += cend - cstart;
            floor_t = te;
        }
        return out;
    }

private:
    // Map factors off the grid, continued from the nearest grid point below t.
    MapFactors factors_at(double t) const {
        if (!spec_.is_dephasing()) return map_factors(spec_, t);
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        const std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
        MapFactors f = factors_[k];
        const double s = spec_.s;
        auto rate = [s](double u) { return gamma_dephasing_zero_t(u, s); };
        if (t > times_[k]) {
            f.envelope *= std::exp(-2.0 * boost::math::quadrature::gauss<double, 10>::integrate(rate, times_[k], t));
        }
        f.t = t;
        double p = 1.0;
        for (auto& pk : f.powers) {
            pk = p;
            p *= f.envelope;
        }
        return f;
    }

    ChannelSpec spec_;
    std::vector<double> times_;
    std::vector<MapFactors> factors_;
    std::vector<double> cusps_;
};

// Native coordinates of the maximally coherent state with the given phases.
SquareMatrix max_coherent_native(std::span<const double> phases) {
    const std::size_t d = phases.size();
    SquareMatrix r(d);
    for (std::size_t m = 0; m < d; ++m)
        for (std::size_t n = 0; n < d; ++n) r(m, n) = std::polar(1.0 / static_cast<double>(d), phases[m] - phases[n]);
    return r;
}

SquareMatrix bloch_state(double theta, double phi) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    SquareMatrix r(2);
    r(0, 0) = c * c;
    r(1, 1) = s * s;
    r(1, 0) = std::polar(c * s, phi);
    r(0, 1) = std::conj(r(1, 0));
    return r;
}

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

// Coordinate pattern search with step halving; returns true when the step
// fell below min_step.
template <class F>
bool pattern_search(F&& f, std::vector<double>& x, double& fx, std::span<const std::size_t> coords, double step,
                    double min_step) {
    constexpr int kMaxEvaluations = 20000;
    int evals = 0;
    while (step >= min_step) {
        bool improved = false;
        for (std::size_t c : coords) {
            for (double sign : {1.0, -1.0}) {
                std::vector<double> y = x;
                y[c] += sign * step;
                const double fy = f(y);
                if (++evals > kMaxEvaluations) return false;
                if (fy > fx) {
                    x = std::move(y);
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return true;
}

// int_0^t gamma_0(u, s) du in closed form.
double integrated_rate_exact(double t, double s) {
    if (std::abs(s - 1.0) < 1e-6) return 0.5 * std::log1p(t * t);
    const double a = s - 1.0;
    return std::tgamma(a) * (1.0 - std::pow(1.0 + t * t, -0.5 * a) * std::cos(a * std::atan(t)));
}

template <class F>
std::vector<std::pair<double, double>> positive_sets(F&& f, double t_max) {
    std::vector<std::pair<double, double>> out;
    const double h = t_max / static_cast<double>(kRootGrid);
    std::function<double(double)> fn = f;
    bool inside = false;
    double start = 0.0;
    double prev_t = 0.0;
    double prev = f(h * 1e-3);
    if (prev > 0.0) inside = true;
    for (std::size_t k = 1; k <= kRootGrid; ++k) {
        const double t = h * static_cast<double>(k);
        const double v = f(t);
        if ((v > 0.0) != inside) {
            const double root = (prev == 0.0) ? prev_t : bisect_root(fn, prev_t, t, kRootTol);
            if (inside) {
                out.emplace_back(start, root);
            } else {
                start = root;
            }
            inside = !inside;
        }
        prev_t = t;
        prev = v;
    }
    if (inside) out.emplace_back(start, t_max);
    return out;
}

double dephasing_closed_form(double s, double t_max, int weight_power, double prefactor) {
    if (!(s > 0.0)) throw std::invalid_argument("Ohmicity s must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    double total = 0.0;
    for (const auto& [a, b] : negative_rate_intervals(s, t_max)) {
        auto integrand = [&](double t) {
            const double g = std::exp(-2.0 * integrated_rate_exact(t, s));
            double w = g;
            if (weight_power > 0) w += std::pow(g, weight_power);
            return -prefactor * gamma_dephasing_zero_t(t, s) * w;
        };
        total += integrate_adaptive(integrand, a, b).value;
    }
    return std::max(0.0, total);
}

MeasureReport simplified_impl(const ChannelSpec& spec, const GrowthEvaluator& ev, double t_max, double dt,
                              int phase_grid, bool refine, double min_step) {
    const PreferredBasis basis = spec.basis();
    const std::size_t d = spec.dim();
    const std::size_t free = d - 1;
    std::size_t points = 1;
    for (std::size_t k = 0; k < free; ++k) points *= static_cast<std::size_t>(phase_grid);

    auto phases_of = [&](std::size_t idx) {
        std::vector<double> ph(d, 0.0);
        for (std::size_t k = 1; k < d; ++k) {
            ph[k] = kTwoPi * static_cast<double>(idx % static_cast<std::size_t>(phase_grid)) / phase_grid;
            idx /= static_cast<std::size_t>(phase_grid);
        }
        return ph;
    };
    auto full_gain = [&](const std::vector<double>& ph) { return ev.sampled_gain(max_coherent_native(ph)); };

    // Screen the grid on a coarser time step, then rank the best few at full resolution.
    const std::size_t stride =
        points > 64 ? std::max<std::size_t>(1, std::min<std::size_t>(ev.samples() / 8, std::llround(1e-2 / dt)))
                    : 1;
    std::vector<std::pair<double, std::size_t>> screened(points);
    for (std::size_t idx = 0; idx < points; ++idx) {
        screened[idx] = {ev.sampled_gain(max_coherent_native(phases_of(idx)), stride), idx};
    }
    std::stable_sort(screened.begin(), screened.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t keep = stride > 1 ? std::min(kScreenCandidates, points) : 1;
    std::vector<double> best = phases_of(screened[0].second);
    double best_gain = stride > 1 ? full_gain(best) : screened[0].first;
    for (std::size_t c = 1; c < keep; ++c) {
        auto ph = phases_of(screened[c].second);
        const double g = full_gain(ph);
        if (g > best_gain) {
            best_gain = g;
            best = std::move(ph);
        }
    }

    bool converged = true;
    if (refine && best_gain > 0.0) {
        std::vector<std::size_t> coords(free);
        std::iota(coords.begin(), coords.end(), 1);
        converged = pattern_search(full_gain, best, best_gain, coords, M_PI / phase_grid, min_step);
    }
    for (auto& p : best) p = wrap_angle(p);

    const TrajectoryGrowth tg = ev.refined(max_coherent_native(best));
    MeasureReport report{tg.total_gain,
                         MeasureVariant::simplified_ncm,
                         max_coherent_state(basis, best),
                         best,
                         tg.intervals,
                         {t_max, dt, phase_grid},
                         {kDefaultNoiseFloor, min_step, 0.0},
                         converged,
                         {}};
    report.tolerances.refine_time_tol = t_max * std::ldexp(1.0, -kRefineBits / 2);

    if (spec.kind == ChannelKind::diss2q_common) {
        // Two readings of the optimum quoted for this channel, phases on (psi0, psi1, psi2, psi3).
        const std::vector<std::pair<std::string, std::vector<double>>> readings = {
            {"psi0 - psi1 + i psi2 + psi3", {0.0, M_PI, 0.5 * M_PI, 0.0}},
            {"psi0 + i psi1 - psi2 + psi3", {0.0, 0.5 * M_PI, M_PI, 0.0}},
        };
        for (const auto& [label, ph] : readings) {
            const double v = ev.refined(max_coherent_native(ph)).total_gain;
            const bool match = std::abs(v - report.value) <= 1e-3 * std::max(report.value, 1e-12);
            report.references.push_back({label, ph, v, match});
        }
    }
    return report;
}

}  // namespace

std::string_view to_string(MeasureVariant v) noexcept {
    switch (v) {
    case MeasureVariant::full_nc: return "full_NC";
    case MeasureVariant::simplified_ncm: return "simplified_NCm";
    case MeasureVariant::closed_form: return "closed_form";
    }
    return "unknown";
}

double default_t_max(ChannelKind kind) noexcept {
    switch (kind) {
    case ChannelKind::deph1q:
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent: return 20.0;
    case ChannelKind::diss1q:
    case ChannelKind::diss2q_common: return 30.0;
    }
    return 20.0;
}

TrajectoryGrowth measure_trajectory(const ChannelSpec& spec, const DensityOperator& rho0, double t_max, double dt) {
    if (rho0.dim() != spec.dim()) throw DimensionError("measure_trajectory: state dimension does not match channel");
    const PreferredBasis basis = spec.basis();
    if (c_l1(rho0, basis).value <= 0.0) throw std::invalid_argument("measure_trajectory: initial state is incoherent");
    const GrowthEvaluator ev(spec, t_max, dt);
    return ev.refined(to_basis_coordinates(rho0.matrix(), basis));
}

MeasureReport measure_simplified(const ChannelSpec& spec, double t_max, double dt, int phase_grid, bool refine) {
    if (phase_grid < 1) throw std::invalid_argument("phase grid must be positive");
    const GrowthEvaluator ev(spec, t_max, dt);
    return simplified_impl(spec, ev, t_max, dt, phase_grid, refine, 1e-4);
}

MeasureReport measure_full(const ChannelSpec& spec, double t_max, double dt, const OptimizerConfig& cfg) {
    if (cfg.grid < 1) throw std::invalid_argument("optimizer grid must be positive");
    if (!(cfg.min_angle_step > 0.0)) throw std::invalid_argument("optimizer step must be positive");
    const GrowthEvaluator ev(spec, t_max, dt);
    if (spec.dim() == 4) {
        MeasureReport r = simplified_impl(spec, ev, t_max, dt, cfg.grid, cfg.refine, cfg.min_angle_step);
        r.variant = MeasureVariant::simplified_ncm;
        return r;
    }

    auto gain = [&](const std::vector<double>& x) {
        const double theta = std::clamp(x[0], 0.0, M_PI);
        return ev.sampled_gain(bloch_state(theta, x[1]));
    };
    std::vector<double> best{0.5 * M_PI, 0.0};
    bool converged = true;
    if (cfg.fixed_bloch) {
        best = {cfg.fixed_bloch->first, cfg.fixed_bloch->second};
    } else {
        double best_gain = -1.0;
        for (int i = 0; i < cfg.grid; ++i) {
            for (int j = 0; j < cfg.grid; ++j) {
                std::vector<double> x{M_PI * (i + 0.5) / cfg.grid, kTwoPi * j / cfg.grid};
                const double g = gain(x);
                if (g > best_gain) {
                    best_gain = g;
                    best = x;
                }
            }
        }
        if (cfg.refine && best_gain > 0.0) {
            const std::size_t coords[] = {0, 1};
            converged = pattern_search(gain, best, best_gain, coords, M_PI / cfg.grid, cfg.min_angle_step);
        }
        best[0] = std::clamp(best[0], 0.0, M_PI);
        best[1] = wrap_angle(best[1]);
    }

    const SquareMatrix rho = bloch_state(best[0], best[1]);
    const TrajectoryGrowth tg = ev.refined(rho);
    MeasureReport report{tg.total_gain,
                         MeasureVariant::full_nc,
                         validate_density(rho),
                         best,
                         tg.intervals,
                         {t_max, dt, cfg.grid},
                         {kDefaultNoiseFloor, cfg.min_angle_step, t_max * std::ldexp(1.0, -kRefineBits / 2)},
                         converged,
                         {}};
    return report;
}

std::vector<std::pair<double, double>> negative_rate_intervals(double s, double t_max) {
    return positive_sets([s](double t) { return -gamma_dephasing_zero_t(t, s); }, t_max);
}

double closed_form_deph1q(double s, double t_max) { return dephasing_closed_form(s, t_max, 0, 2.0); }

double closed_form_deph2q(double s, DephasingMode mode, double t_max) {
    return dephasing_closed_form(s, t_max, mode == DephasingMode::common ? 4 : 2, 4.0);
}

double closed_form_diss1q(double ratio, double detuning, double t_max) {
    if (!(ratio > 0.0)) throw std::invalid_argument("ratio gamma0/lambda must be positive");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    // Re(conj(G) G') = d|G|^2/dt / 2 carries the sign of d|G|/dt.
    auto slope = [&](double t) {
        return (std::conj(g_lorentzian(t, ratio, detuning)) * g_lorentzian_derivative(t, ratio, detuning)).real();
    };
    double total = 0.0;
    for (const auto& [a, b] : positive_sets(slope, t_max)) {
        total += std::abs(g_lorentzian(b, ratio, detuning)) - std::abs(g_lorentzian(a, ratio, detuning));
    }
    return std::max(0.0, total);
}

std::optional<double> closed_form(const ChannelSpec& spec, double t_max) {
    switch (spec.kind) {
    case ChannelKind::deph1q: return closed_form_deph1q(spec.s, t_max);
    case ChannelKind::diss1q: return closed_form_diss1q(spec.ratio, spec.detuning(), t_max);
    case ChannelKind::deph2q_common: return closed_form_deph2q(spec.s, DephasingMode::common, t_max);
    case ChannelKind::deph2q_independent: return closed_form_deph2q(spec.s, DephasingMode::independent, t_max);
    case ChannelKind::diss2q_common: return std::nullopt;
    }
    return std::nullopt;
}

LambdaContinuationCheck diss2q_lambda_check(double ratio, double t_max) {
    const TimeLocalGenerator gen = generator_for(ChannelSpec::diss2q(ratio, 0.0));
    const auto windows = find_pole_windows(gen, t_max);
    auto rate = [ratio](double t) { return gamma_twoqubit_diss(t, ratio); };
    QuadratureOptions opts;
    opts.rel_tol = 1e-10;

    // The rate grows like 1/(t - pole) towards a window edge; with t - pole = e^u
    // the integrand becomes smooth.
    auto near_pole = [&](double pole, double a, double b) {
        const double sign = a > pole ? 1.0 : -1.0;
        auto f = [&](double u) {
            const double e = std::exp(u);
            return rate(pole + sign * e) * e;
        };
        const double ua = std::log(std::abs(a - pole));
        const double ub = std::log(std::abs(b - pole));
        return sign * integrate_adaptive(f, std::min(ua, ub), std::max(ua, ub), opts).value;
    };
    auto segment = [&](double a, double b, std::optional<double> left, std::optional<double> right) {
        if (!(b > a)) return 0.0;
        const double m = 0.5 * (a + b);
        double v = 0.0;
        v += left ? near_pole(*left, a, m) : integrate_adaptive(rate, a, m, opts).value;
        v += right ? near_pole(*right, b, m) * -1.0 : integrate_adaptive(rate, m, b, opts).value;
        return v;
    };

    double excluded = 0.0;
    double jumps = 0.0;
    double from = 0.0;
    std::optional<double> left;
    for (const auto& w : windows) {
        if (w.t_begin >= t_max) break;
        excluded += segment(from, w.t_begin, left, w.pole);
        jumps += w.lambda_jump;
        from = w.t_end;
        left = w.pole;
    }
    if (t_max > from) excluded += segment(from, t_max, left, std::nullopt);
    const double g = g_and_lambda_twoqubit(t_max, ratio).g;
    return {-std::log(g * g), excluded, excluded + jumps, windows.size()};
}

}  // namespace cohmark
