#include "cohmark/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "cohmark/quadrature.hpp"

namespace cohmark {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

void pack(const SquareMatrix& m, State& x) {
    const std::size_t d = m.dim();
    x.resize(2 * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            x[2 * (i * d + j)] = m(i, j).real();
            x[2 * (i * d + j) + 1] = m(i, j).imag();
        }
}

SquareMatrix unpack(const State& x, std::size_t d) {
    SquareMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = Complex(x[2 * (i * d + j)], x[2 * (i * d + j) + 1]);
    return m;
}

// Adaptive Dormand-Prince (or fixed RK4) stepping of dx/dt = rhs(x, t) from
// t to t_end. `h` carries the step size between calls.
template <class Rhs>
void advance(Rhs&& rhs, State& x, double& t, double t_end, double& h, const IntegratorConfig& cfg) {
    if (!(t_end > t)) return;
    const double span_eps = 1e-14 * std::max(1.0, std::abs(t_end));
    if (cfg.method == IntegratorMethod::rk4_fixed) {
        odeint::runge_kutta4<State> stepper;
        while (t_end - t > span_eps) {
            const double step = std::min(cfg.dt, t_end - t);
            stepper.do_step(rhs, x, t, step);
            t += step;
        }
        t = t_end;
        return;
    }
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(cfg.atol, cfg.rtol);
    std::size_t steps = 0;
    const double min_step = 1e-14 * std::max(1.0, std::abs(t_end));
    while (t_end - t > span_eps) {
        if (h > t_end - t) h = t_end - t;
        const double t_before = t;
        const auto res = stepper.try_step(rhs, x, t, h);
        if (res == odeint::fail) {
            if (h < min_step) {
                std::ostringstream os;
                os << "step-size underflow at t = " << t_before;
                throw IntegrationError(os.str(), t_before);
            }
            continue;
        }
        if (++steps > cfg.max_steps_per_sample) {
            std::ostringstream os;
            os << "step limit exceeded near t = " << t;
            throw IntegrationError(os.str(), t);
        }
    }
    t = t_end;
}

void check_sample_times(std::span<const double> ts, double t_max) {
    double prev = 0.0;
    for (double t : ts) {
        if (!(t >= 0.0) || t > t_max * (1.0 + 1e-12)) {
            throw std::invalid_argument("sample times must lie in [0, t_max]");
        }
        if (t < prev) throw std::invalid_argument("sample times must be ascending");
        prev = t;
    }
}

}  // namespace

SquareMatrix liouvillian_apply(const TimeLocalGenerator& gen, double t, const SquareMatrix& rho) {
    if (rho.dim() != gen.dim) throw DimensionError("liouvillian_apply: state and generator dimensions differ");
    SquareMatrix out(gen.dim);
    if (gen.hamiltonian) {
        const SquareMatrix h = gen.hamiltonian(t);
        if (h.dim() != gen.dim) throw DimensionError("Hamiltonian dimension mismatch");
        out += commutator(h, rho) * Complex(0.0, -1.0);
    }
    for (const auto& term : gen.terms) {
        const double g = term.rate(t);
        if (g == 0.0) continue;
        const SquareMatrix a = term.op(t);
        if (a.dim() != gen.dim) throw DimensionError("Lindblad operator dimension mismatch");
        const SquareMatrix ad = dagger(a);
        SquareMatrix d = a * rho * ad - 0.5 * anticommutator(ad * a, rho);
        out += d * Complex(g);
    }
    return out;
}

std::vector<PoleWindow> find_pole_windows(const TimeLocalGenerator& gen, double t_max) {
    std::vector<PoleWindow> windows;
    if (!gen.poles || t_max <= 0.0) return windows;
    const auto& poles = *gen.poles;
    const double half = 0.5 * poles.window;
    const std::size_t n = std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(t_max / 1e-2)));
    const double h = t_max / static_cast<double>(n);
    double t_prev = 0.0;
    double d_prev = poles.denominator(0.0);
    for (std::size_t i = 1; i <= n + static_cast<std::size_t>(std::ceil(half / h)); ++i) {
        const double t = static_cast<double>(i) * h;
        const double d = poles.denominator(t);
        if ((d < 0.0) != (d_prev < 0.0) || d == 0.0) {
            const double t0 = d == 0.0 ? t : bisect_root(poles.denominator, t_prev, t, 1e-14);
            if (t0 - half <= t_max && (windows.empty() || t0 > windows.back().pole + half)) {
                // Principal value: the simple-pole parts of rate(t0 + u) and rate(t0 - u) cancel.
                auto paired = [&](double u) { return poles.rate(t0 + u) + poles.rate(t0 - u); };
                const double jump = integrate_gauss_legendre(paired, 0.0, half);
                windows.push_back({t0, std::max(0.0, t0 - half), t0 + half, jump});
            }
        }
        t_prev = t;
        d_prev = d;
    }
    return windows;
}

namespace {

// The same generator acting on V rho V^dagger.
TimeLocalGenerator rotated(const TimeLocalGenerator& gen, const SquareMatrix& v) {
    TimeLocalGenerator out = gen;
    out.working_basis.reset();
    const SquareMatrix vd = dagger(v);
    if (gen.hamiltonian) {
        out.hamiltonian = [h = gen.hamiltonian, v, vd](double t) { return v * h(t) * vd; };
    }
    for (auto& term : out.terms) {
        term.op = [op = term.op, v, vd](double t) { return v * op(t) * vd; };
    }
    return out;
}

}  // namespace

Trajectory integrate(const TimeLocalGenerator& gen_in, const DensityOperator& rho0, const IntegratorConfig& cfg,
                     std::span<const double> sample_times) {
    if (rho0.dim() != gen_in.dim) throw DimensionError("integrate: state and generator dimensions differ");
    if (gen_in.working_basis && gen_in.working_basis->dim() != gen_in.dim) {
        throw DimensionError("integrate: working basis and generator dimensions differ");
    }
    const std::optional<SquareMatrix> frame =
        gen_in.working_basis ? std::optional<SquareMatrix>(gen_in.working_basis->to_basis()) : std::nullopt;
    const TimeLocalGenerator gen = frame ? rotated(gen_in, *frame) : gen_in;
    if (!(cfg.dt > 0.0) || !(cfg.rtol > 0.0) || !(cfg.atol > 0.0) || !(cfg.t_max > 0.0)) {
        throw std::invalid_argument("integrator step and tolerances must be positive");
    }
    check_sample_times(sample_times, cfg.t_max);

    const std::size_t d = gen.dim;
    Trajectory traj;
    traj.excluded_windows = find_pole_windows(gen, sample_times.empty() ? 0.0 : sample_times.back());

    auto rhs = [&](const State& x, State& dxdt, double t) { pack(liouvillian_apply(gen, t, unpack(x, d)), dxdt); };

    State x;
    pack(frame ? SquareMatrix(*frame * rho0.matrix() * dagger(*frame)) : rho0.matrix(), x);
    double t = 0.0;
    double h = cfg.dt;
    std::size_t next_window = 0;

    auto cross = [&](const PoleWindow& w) {
        const double rate_edge = gen.poles->rate(w.t_begin);
        const double sign = w.lambda_jump < 0.0 ? -1.0 : 1.0;
        // Generator with the scalar rate divided out, frozen at the window edge.
        auto frozen = [&](const State& xs, State& dxdl, double) {
            SquareMatrix l = liouvillian_apply(gen, w.t_begin, unpack(xs, d));
            pack(l * Complex(sign / rate_edge), dxdl);
        };
        double lam = 0.0;
        double hl = std::min(cfg.dt, std::abs(w.lambda_jump));
        IntegratorConfig adaptive = cfg;
        adaptive.method = IntegratorMethod::rk45_adaptive;
        advance(frozen, x, lam, std::abs(w.lambda_jump), hl, adaptive);
        t = w.t_end;
    };

    for (double ts : sample_times) {
        while (next_window < traj.excluded_windows.size() && traj.excluded_windows[next_window].t_begin < ts) {
            const auto& w = traj.excluded_windows[next_window];
            advance(rhs, x, t, w.t_begin, h, cfg);
            cross(w);
            ++next_window;
        }
        if (ts < t) continue;  // inside an excluded window
        advance(rhs, x, t, ts, h, cfg);

        SquareMatrix m = unpack(x, d);
        m = 0.5 * (m + dagger(m));
        if (cfg.renormalize_trace) {
            m *= Complex(1.0 / m.trace().real());
            pack(m, x);
        }
        if (frame) {
            m = dagger(*frame) * m * *frame;
            m = 0.5 * (m + dagger(m));
        }
        try {
            traj.states.push_back(validate_density(m, cfg.invariant_tol));
        } catch (const DensityValidationError& e) {
            std::ostringstream os;
            os << "state left the physical set at t = " << ts << ": " << e.what();
            throw IntegrationError(os.str(), ts);
        }
        traj.times.push_back(ts);
    }
    return traj;
}

std::vector<double> trajectory_coherence(const Trajectory& traj, const PreferredBasis& basis,
                                         CoherenceMeasure measure) {
    std::vector<double> out;
    out.reserve(traj.states.size());
    for (const auto& rho : traj.states) {
        out.push_back(measure == CoherenceMeasure::l1 ? c_l1(rho, basis).value : c_re(rho, basis).value);
    }
    return out;
}

bool column_rule(const SquareMatrix& m, double tol) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
        int nonzero = 0;
        for (std::size_t i = 0; i < m.dim(); ++i)
            if (std::abs(m(i, j)) > tol) ++nonzero;
        if (nonzero > 1) return false;
    }
    return true;
}

bool IosdReport::d1() const noexcept {
    return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.hamiltonian_diagonal; });
}

bool IosdReport::d2() const noexcept {
    return std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.operators_column_rule; });
}

bool IosdReport::spot_test() const noexcept {
    return std::all_of(samples.begin(), samples.end(),
                       [](const auto& s) { return s.diagonal_states_stay_diagonal; });
}

IosdReport check_iosd_generator(const TimeLocalGenerator& gen, const PreferredBasis& basis,
                                std::span<const double> t_samples, std::uint64_t seed) {
    if (basis.dim() != gen.dim) throw DimensionError("check_iosd_generator: basis and generator dimensions differ");
    const SquareMatrix v = basis.to_basis();
    const SquareMatrix vd = dagger(v);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    IosdReport report;
    for (double t : t_samples) {
        IosdSample s{t, true, true, true, 0.0};
        if (gen.hamiltonian) {
            const SquareMatrix hb = v * gen.hamiltonian(t) * vd;
            for (std::size_t i = 0; i < gen.dim; ++i)
                for (std::size_t j = 0; j < gen.dim; ++j)
                    if (i != j && std::abs(hb(i, j)) > 1e-12) s.hamiltonian_diagonal = false;
        }
        for (const auto& term : gen.terms) {
            if (!column_rule(v * term.op(t) * vd)) s.operators_column_rule = false;
        }
        for (int k = 0; k < 20; ++k) {
            std::vector<double> p(gen.dim);
            double total = 0.0;
            for (auto& x : p) {
                x = -std::log(1.0 - unif(rng));
                total += x;
            }
            for (auto& x : p) x /= total;
            const SquareMatrix delta = vd * SquareMatrix::diagonal(std::span<const double>(p)) * v;
            const SquareMatrix lb = v * liouvillian_apply(gen, t, delta) * vd;
            for (std::size_t i = 0; i < gen.dim; ++i)
                for (std::size_t j = 0; j < gen.dim; ++j)
                    if (i != j) s.worst_offdiagonal_rate = std::max(s.worst_offdiagonal_rate, std::abs(lb(i, j)));
        }
        s.diagonal_states_stay_diagonal = s.worst_offdiagonal_rate <= 1e-10;
        report.samples.push_back(s);
    }
    return report;
}

KrausIosdReport check_iosd_kraus(const KrausSet& kraus, const PreferredBasis& basis) {
    if (basis.dim() != kraus.dim()) throw DimensionError("check_iosd_kraus: basis and Kraus dimensions differ");
    const SquareMatrix v = basis.to_basis();
    const SquareMatrix vd = dagger(v);
    KrausIosdReport r;
    r.pass = true;
    for (const auto& k : kraus.operators()) {
        const bool ok = column_rule(v * k * vd);
        r.per_operator.push_back(ok);
        r.pass = r.pass && ok;
    }
    return r;
}

}  // namespace cohmark
