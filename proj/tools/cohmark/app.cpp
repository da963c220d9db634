#include "app.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <cohmark/coherence.hpp>
#include <cohmark/nonmarkov.hpp>

namespace cohmark::app {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string_view units_of(const ChannelSpec& c) {
    return c.is_dephasing() ? "time in 1/omega_c" : "time in 1/lambda";
}

void channel_header(std::ostream& os, const ChannelSpec& c, std::string_view skip = {}, std::string_view skip2 = {}) {
    auto param = [&](std::string_view key, double v) {
        if (key != skip && key != skip2) os << "# " << key << '=' << num(v) << '\n';
    };
    os << "# channel=" << to_string(c.kind) << '\n';
    switch (c.kind) {
    case ChannelKind::deph1q: param("s", c.s); break;
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent:
        param("s", c.s);
        param("eps1", c.hamiltonian.eps1);
        param("eps2", c.hamiltonian.eps2);
        param("coupling", c.hamiltonian.coupling);
        break;
    case ChannelKind::diss1q:
        param("ratio", c.ratio);
        param("delta_over_gamma0", c.delta_over_gamma0);
        break;
    case ChannelKind::diss2q_common:
        param("ratio", c.ratio);
        param("B", c.b);
        break;
    }
    os << "# units=" << units_of(c) << '\n';
}

void common_header(std::ostream& os, std::string_view command, const RunConfig& cfg) {
    os << "# tool=" << kToolVersion << '\n';
    os << "# command=" << command << '\n';
    os << "# dt=" << num(cfg.numeric.dt) << '\n';
    os << "# t_max=" << num(cfg.numeric.t_max) << '\n';
}

Json channel_json(const ChannelSpec& c) {
    Json j;
    j["kind"] = std::string(to_string(c.kind));
    if (c.is_dephasing()) {
        j["s"] = c.s;
        if (c.kind != ChannelKind::deph1q) {
            j["hamiltonian"] = {{"eps1", c.hamiltonian.eps1}, {"eps2", c.hamiltonian.eps2},
                                {"coupling", c.hamiltonian.coupling}};
        }
    } else {
        j["ratio"] = c.ratio;
        if (c.kind == ChannelKind::diss1q) j["delta_over_gamma0"] = c.delta_over_gamma0;
        if (c.kind == ChannelKind::diss2q_common) j["B"] = c.b;
    }
    j["units"] = std::string(units_of(c));
    return j;
}

SquareMatrix hermitized(const SquareMatrix& m) { return 0.5 * (m + dagger(m)); }

struct Series {
    std::string label;
    ChannelSpec spec;
};

// C_l1 and C_RE of the maximally coherent (zero-phase) state along the exact map.
struct TrajectoryRows {
    std::vector<double> times;
    std::vector<double> l1;
    std::vector<double> re;
    std::vector<SquareMatrix> states;
};

TrajectoryRows trajectory_rows(const ChannelSpec& spec, const NumericConfig& num_cfg) {
    const PreferredBasis basis = spec.basis();
    const std::vector<double> zero(spec.dim(), 0.0);
    const DensityOperator rho0 = max_coherent_state(basis, zero);
    const SquareMatrix native0 = to_basis_coordinates(rho0.matrix(), basis);

    const auto n = static_cast<std::size_t>(std::llround(num_cfg.t_max / num_cfg.dt));
    const auto stride = static_cast<std::size_t>(num_cfg.stride);
    TrajectoryRows rows;
    for (std::size_t k = 0; k <= n; k += stride) rows.times.push_back(num_cfg.t_max * static_cast<double>(k) / n);
    if (rows.times.back() < num_cfg.t_max) rows.times.push_back(num_cfg.t_max);

    const auto factors = map_factors_on_grid(spec, rows.times);
    for (const auto& f : factors) {
        const SquareMatrix native = propagate_native(spec, native0, f);
        const DensityOperator rho = validate_density(hermitized(from_basis_coordinates(native, basis)), 1e-8);
        rows.l1.push_back(l1_offdiagonal(native));
        rows.re.push_back(c_re(rho, basis).value);
        rows.states.push_back(rho.matrix());
    }
    return rows;
}

std::string wide_trajectories(std::string_view figure, const std::vector<Series>& series, const RunConfig& cfg) {
    std::ostringstream os;
    common_header(os, "figure", cfg);
    os << "# figure=" << figure << '\n';
    os << "# channel=" << to_string(series.front().spec.kind) << '\n';
    os << "# units=" << units_of(series.front().spec) << '\n';
    os << "# initial_state=max_coherent_zero_phase\n";
    for (const auto& s : series) os << "# series=" << s.label << '\n';

    std::vector<TrajectoryRows> data;
    for (const auto& s : series) data.push_back(trajectory_rows(s.spec, cfg.numeric));
    os << 't';
    for (const auto& s : series) os << ",c_l1_" << s.label << ",c_re_" << s.label;
    os << '\n';
    for (std::size_t k = 0; k < data.front().times.size(); ++k) {
        os << num(data.front().times[k]);
        for (const auto& d : data) os << ',' << num(d.l1[k]) << ',' << num(d.re[k]);
        os << '\n';
    }
    return os.str();
}

void set_axis_value(ChannelSpec& spec, const std::string& name, double v) {
    if (name == "s") {
        spec.s = v;
    } else if (name == "ratio") {
        spec.ratio = v;
    } else if (name == "B") {
        spec.b = v;
    } else if (name == "delta_over_gamma0") {
        spec.delta_over_gamma0 = v;
    } else {
        throw ConfigError("unknown sweep axis '" + name + "'");
    }
}

std::string sweep_content(const RunConfig& cfg, const SweepGrid& grid, std::string_view figure) {
    cfg.validate();
    grid.validate(cfg.channel.kind);
    const auto v1 = grid.axis1.values();
    const auto v2 = grid.axis2 ? grid.axis2->values() : std::vector<double>{};
    const std::size_t n2 = grid.axis2 ? v2.size() : 1;
    const std::size_t total = v1.size() * n2;

    std::vector<ChannelSpec> specs;
    for (std::size_t i = 0; i < v1.size(); ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            ChannelSpec s = cfg.channel;
            set_axis_value(s, grid.axis1.name, v1[i]);
            if (grid.axis2) set_axis_value(s, grid.axis2->name, v2[j]);
            try {
                s.validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("sweep point out of range: ") + e.what());
            }
            specs.push_back(s);
        }
    }

    struct Row {
        double value = 0.0;
        std::size_t intervals = 0;
        double seconds = 0.0;
    };
    std::vector<Row> rows(total);
    std::vector<std::exception_ptr> errors(total);
    std::atomic<std::size_t> next{0};
    OptimizerConfig opt;
    opt.grid = cfg.numeric.phase_grid;

    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            const auto start = std::chrono::steady_clock::now();
            try {
                const MeasureReport r = measure_full(specs[k], cfg.numeric.t_max, cfg.numeric.dt, opt);
                rows[k].value = r.value;
                rows[k].intervals = r.intervals.size();
            } catch (...) {
                errors[k] = std::current_exception();
            }
            rows[k].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            spdlog::debug("sweep point {}/{} done in {:.3f} s", k + 1, total, rows[k].seconds);
        }
    };
    const auto jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(jobs, total); ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::ostringstream os;
    common_header(os, figure.empty() ? "sweep" : "figure", cfg);
    if (!figure.empty()) os << "# figure=" << figure << '\n';
    channel_header(os, cfg.channel, grid.axis1.name, grid.axis2 ? std::string_view(grid.axis2->name) : "");
    os << "# phase_grid=" << cfg.numeric.phase_grid << '\n';
    auto axis_line = [&](const char* key, const Axis& a) {
        os << "# " << key << '=' << a.name << ':' << num(a.min) << ':' << num(a.max) << ':' << a.steps << '\n';
    };
    axis_line("axis1", grid.axis1);
    if (grid.axis2) axis_line("axis2", *grid.axis2);
    os << "# measure=" << (specs.front().dim() == 4 ? "simplified_NCm" : "full_NC") << '\n';

    os << grid.axis1.name;
    if (grid.axis2) os << ',' << grid.axis2->name;
    os << ",measure,intervals";
    if (cfg.timing) os << ",wall_time_s";
    os << '\n';
    for (std::size_t i = 0; i < v1.size(); ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            const Row& r = rows[i * n2 + j];
            os << num(v1[i]);
            if (grid.axis2) os << ',' << num(v2[j]);
            os << ',' << num(r.value) << ',' << r.intervals;
            if (cfg.timing) os << ',' << num(r.seconds);
            os << '\n';
        }
    }
    return os.str();
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

ValidationResult validate_json(const std::string& content) {
    ValidationResult r{true, "json", 0, {}};
    Json j;
    try {
        j = Json::parse(content);
    } catch (const std::exception& e) {
        return {false, "json", 0, {std::string("not valid JSON: ") + e.what()}};
    }
    auto need = [&](const char* key) {
        if (!j.contains(key)) r.problems.push_back(std::string("missing key '") + key + "'");
        return j.contains(key);
    };
    if (need("tool") && (!j["tool"].is_string() || j["tool"].get<std::string>().rfind("cohmark", 0) != 0)) {
        r.problems.emplace_back("tool is not cohmark");
    }
    if (need("command") && j["command"] == "check") {
        for (const char* key : {"seed", "trials", "violations", "ok"}) need(key);
        if (j.contains("trials") && j["trials"].is_number()) r.rows = j["trials"].get<std::size_t>();
        r.ok = r.problems.empty();
        return r;
    }
    need("channel");
    if (need("value") && (!j["value"].is_number() || j["value"].get<double>() < 0.0)) {
        r.problems.emplace_back("value must be a non-negative number");
    }
    need("variant");
    need("grid");
    need("maximizer");
    if (need("intervals")) {
        double sum = 0.0;
        for (const auto& iv : j["intervals"]) {
            const double a = iv.value("t_start", 0.0);
            const double b = iv.value("t_end", 0.0);
            const double g = iv.value("gain", -1.0);
            if (!(a < b) || g < 0.0) r.problems.emplace_back("malformed growth interval");
            sum += g;
            ++r.rows;
        }
        if (j.contains("value") && j["value"].is_number() && std::abs(sum - j["value"].get<double>()) > 1e-8) {
            r.problems.emplace_back("interval gains do not add up to the value");
        }
    }
    r.ok = r.problems.empty();
    return r;
}

ValidationResult validate_csv(const std::string& content) {
    ValidationResult r{true, "csv", 0, {}};
    std::istringstream is(content);
    std::string line;
    std::map<std::string, std::string> meta;
    std::size_t columns = 0;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.rfind("# ", 0) == 0) {
            if (columns != 0) {
                r.problems.push_back("header line after column row at line " + std::to_string(lineno));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                r.problems.push_back("header line without key=value at line " + std::to_string(lineno));
                continue;
            }
            meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
            continue;
        }
        if (columns == 0) {
            const auto names = split(line, ',');
            for (const auto& n : names)
                if (n.empty()) r.problems.push_back("empty column name");
            columns = names.size();
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != columns) {
            r.problems.push_back("wrong field count at line " + std::to_string(lineno));
            continue;
        }
        for (const auto& f : fields) {
            double v;
            if (!parse_double(f, v) || !std::isfinite(v)) {
                r.problems.push_back("non-numeric field '" + f + "' at line " + std::to_string(lineno));
                break;
            }
        }
        ++r.rows;
    }
    for (const char* key : {"tool", "command", "channel", "units", "dt", "t_max"}) {
        if (!meta.count(key)) r.problems.push_back(std::string("missing header key '") + key + "'");
    }
    if (meta.count("tool") && meta["tool"].rfind("cohmark", 0) != 0) r.problems.emplace_back("tool is not cohmark");
    for (const char* key : {"dt", "t_max"}) {
        double v;
        if (meta.count(key) && (!parse_double(meta[key], v) || !(v > 0.0))) {
            r.problems.push_back(std::string("header ") + key + " is not a positive number");
        }
    }
    if (columns == 0) r.problems.emplace_back("no column row");
    if (r.rows == 0) r.problems.emplace_back("no data rows");
    r.ok = r.problems.empty();
    return r;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
    case Command::trajectory: return "trajectory";
    case Command::measure: return "measure";
    case Command::sweep: return "sweep";
    case Command::figure: return "figure";
    case Command::validate: return "validate";
    case Command::check: return "check";
    }
    return "unknown";
}

void RunConfig::validate() const {
    try {
        channel.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(numeric.t_max > 0.0) || !std::isfinite(numeric.t_max)) throw ConfigError("--tmax must be positive");
    if (!(numeric.dt > 0.0) || numeric.dt > numeric.t_max) throw ConfigError("--dt must be positive and at most --tmax");
    if (numeric.t_max / numeric.dt > 1e8) throw ConfigError("--tmax / --dt exceeds 1e8 samples");
    if (numeric.phase_grid < 1) throw ConfigError("--phase-grid must be positive");
    if (numeric.stride < 1) throw ConfigError("--stride must be positive");
    if (jobs < 1) throw ConfigError("--jobs must be positive");
}

std::vector<double> Axis::values() const {
    std::vector<double> v(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) v[static_cast<std::size_t>(k)] = min + (max - min) * k / (steps - 1);
    return v;
}

void SweepGrid::validate(ChannelKind kind) const {
    auto check = [kind](const Axis& a) {
        if (a.steps < 2) throw ConfigError("axis '" + a.name + "' needs at least 2 steps");
        if (!(a.min < a.max)) throw ConfigError("axis '" + a.name + "' needs min < max");
        const bool deph = kind == ChannelKind::deph1q || kind == ChannelKind::deph2q_common ||
                          kind == ChannelKind::deph2q_independent;
        const bool ok = (a.name == "s" && deph) || (a.name == "ratio" && !deph) ||
                        (a.name == "B" && kind == ChannelKind::diss2q_common) ||
                        (a.name == "delta_over_gamma0" && kind == ChannelKind::diss1q);
        if (!ok) throw ConfigError("axis '" + a.name + "' is not a parameter of channel " + std::string(to_string(kind)));
    };
    check(axis1);
    if (axis2) {
        check(*axis2);
        if (axis2->name == axis1.name) throw ConfigError("the two sweep axes must differ");
    }
}

Axis parse_axis(std::string_view text) {
    const auto parts = split(std::string(text), ':');
    if (parts.size() != 4) throw ConfigError("axis must look like name:min:max:steps");
    Axis a;
    a.name = parts[0];
    double steps = 0.0;
    if (!parse_double(parts[1], a.min) || !parse_double(parts[2], a.max) || !parse_double(parts[3], steps) ||
        steps != std::floor(steps)) {
        throw ConfigError("axis bounds and steps must be numbers: " + std::string(text));
    }
    a.steps = static_cast<int>(steps);
    return a;
}

std::string run_trajectory(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.output.format != Format::csv) throw ConfigError("trajectory output is CSV only");
    const TrajectoryRows rows = trajectory_rows(cfg.channel, cfg.numeric);
    const std::size_t d = cfg.channel.dim();

    std::ostringstream os;
    common_header(os, "trajectory", cfg);
    channel_header(os, cfg.channel);
    os << "# basis=" << to_string(cfg.channel.basis().label()) << '\n';
    os << "# initial_state=max_coherent_zero_phase\n";
    os << "# state_coordinates=computational\n";
    os << "t,c_l1,c_re";
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) os << ",rho_" << i << j << "_re,rho_" << i << j << "_im";
    os << '\n';
    for (std::size_t k = 0; k < rows.times.size(); ++k) {
        os << num(rows.times[k]) << ',' << num(rows.l1[k]) << ',' << num(rows.re[k]);
        const SquareMatrix& m = rows.states[k];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) os << ',' << num(m(i, j).real()) << ',' << num(m(i, j).imag());
        os << '\n';
    }
    return os.str();
}

std::string run_measure(const RunConfig& cfg) {
    cfg.validate();
    const ChannelSpec& spec = cfg.channel;
    OptimizerConfig opt;
    opt.grid = cfg.numeric.phase_grid;
    const MeasureReport r = measure_full(spec, cfg.numeric.t_max, cfg.numeric.dt, opt);
    const std::optional<double> closed = closed_form(spec, cfg.numeric.t_max);

    Json j;
    j["tool"] = std::string(kToolVersion);
    j["command"] = "measure";
    j["channel"] = channel_json(spec);
    j["variant"] = std::string(to_string(r.variant));
    j["value"] = r.value;
    j["converged"] = r.converged;
    j["parameters"] = r.parameters;
    const std::size_t d = r.maximizer.dim();
    Json re = Json::array();
    Json im = Json::array();
    for (std::size_t i = 0; i < d; ++i) {
        Json rr = Json::array();
        Json ii = Json::array();
        for (std::size_t k = 0; k < d; ++k) {
            rr.push_back(r.maximizer(i, k).real());
            ii.push_back(r.maximizer(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    j["maximizer"] = {{"coordinates", "computational"}, {"re", re}, {"im", im}};
    Json ivs = Json::array();
    for (const auto& iv : r.intervals) ivs.push_back({{"t_start", iv.t_start}, {"t_end", iv.t_end}, {"gain", iv.gain}});
    j["intervals"] = ivs;
    j["grid"] = {{"t_max", r.grid.t_max}, {"dt", r.grid.dt}, {"phase_grid", r.grid.phase_grid}};
    j["tolerances"] = {{"noise_floor", r.tolerances.noise_floor},
                       {"min_angle_step", r.tolerances.min_angle_step},
                       {"refine_time_tol", r.tolerances.refine_time_tol}};
    if (closed) {
        const double rel = *closed == 0.0 ? (r.value == 0.0 ? 0.0 : INFINITY) : std::abs(r.value - *closed) / *closed;
        j["closed_form"] = {{"value", *closed}, {"relative_difference", std::isfinite(rel) ? Json(rel) : Json()}};
    } else {
        j["closed_form"] = nullptr;
    }
    if (!r.references.empty()) {
        Json refs = Json::array();
        for (const auto& ref : r.references) {
            refs.push_back({{"state", ref.label},
                            {"phases", ref.phases},
                            {"value", ref.value},
                            {"matches_optimum", ref.matches_optimum}});
        }
        j["reference_states"] = refs;
    }
    if (spec.kind == ChannelKind::diss2q_common) {
        const auto lc = diss2q_lambda_check(spec.ratio, cfg.numeric.t_max);
        j["lambda_check"] = {{"t", cfg.numeric.t_max},
                             {"g2_continuation", lc.lambda_g2},
                             {"pole_excluded_integral", lc.lambda_pole_excluded},
                             {"principal_value_integral", lc.lambda_principal_value},
                             {"poles", lc.poles}};
    }

    if (cfg.output.format == Format::json) return j.dump(2) + "\n";

    std::ostringstream os;
    common_header(os, "measure", cfg);
    channel_header(os, spec);
    os << "# variant=" << to_string(r.variant) << '\n';
    os << "value,intervals,closed_form\n";
    os << num(r.value) << ',' << r.intervals.size() << ',' << (closed ? num(*closed) : "nan") << '\n';
    return os.str();
}

std::string run_sweep(const RunConfig& cfg, const SweepGrid& grid) {
    if (cfg.output.format != Format::csv) throw ConfigError("sweep output is CSV only");
    return sweep_content(cfg, grid, {});
}

std::string run_figure(std::string_view name, const RunConfig& base) {
    RunConfig cfg = base;
    cfg.numeric.dt = kDefaultDt;
    cfg.numeric.phase_grid = 12;
    cfg.numeric.stride = 10;
    cfg.output.format = Format::csv;
    if (name == "fig1a" || name == "fig1b") {
        cfg.numeric.t_max = default_t_max(ChannelKind::deph1q);
        cfg.channel = ChannelSpec::deph1q(3.5);
        if (name == "fig1a") return sweep_content(cfg, {{"s", 0.5, 6.0, 56}, std::nullopt}, name);
        return wide_trajectories(name, {{"s1.5", ChannelSpec::deph1q(1.5)}, {"s3.5", ChannelSpec::deph1q(3.5)}}, cfg);
    }
    if (name == "fig2a" || name == "fig2b") {
        cfg.numeric.t_max = default_t_max(ChannelKind::diss1q);
        cfg.channel = ChannelSpec::diss1q(4.0, 0.001);
        if (name == "fig2a") return sweep_content(cfg, {{"ratio", 0.1, 5.0, 50}, std::nullopt}, name);
        return wide_trajectories(
            name, {{"R0.4", ChannelSpec::diss1q(0.4, 0.001)}, {"R4", ChannelSpec::diss1q(4.0, 0.001)}}, cfg);
    }
    if (name == "fig3a" || name == "fig3b") {
        cfg.numeric.t_max = default_t_max(ChannelKind::diss2q_common);
        cfg.channel = ChannelSpec::diss2q(4.0, 0.5);
        if (name == "fig3a") {
            return sweep_content(cfg, {{"ratio", 0.1, 5.0, 20}, Axis{"B", 0.0, 1.0, 11}}, name);
        }
        return wide_trajectories(name, {{"R0.4", ChannelSpec::diss2q(0.4, 0.5)}, {"R4", ChannelSpec::diss2q(4.0, 0.5)}},
                                 cfg);
    }
    throw ConfigError("unknown figure '" + std::string(name) + "' (expected fig1a, fig1b, fig2a, fig2b, fig3a, fig3b)");
}

void write_output(const OutputConfig& out, const std::string& content) {
    if (out.path.empty() || out.path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + out.path + "' for writing");
    f << content;
    if (!f) throw ConfigError("failed writing '" + out.path + "'");
    spdlog::debug("wrote {}", out.path);
}

void cmd_trajectory(const RunConfig& cfg) { write_output(cfg.output, run_trajectory(cfg)); }
void cmd_measure(const RunConfig& cfg) { write_output(cfg.output, run_measure(cfg)); }
void cmd_sweep(const RunConfig& cfg, const SweepGrid& grid) { write_output(cfg.output, run_sweep(cfg, grid)); }

void cmd_figure(std::string_view name, const RunConfig& base) {
    OutputConfig out = base.output;
    if (out.path.empty()) out.path = std::string(name) + ".csv";
    write_output(out, run_figure(name, base));
}

ValidationResult validate_content(const std::string& content) {
    const auto first = content.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {false, "unknown", 0, {"file is empty"}};
    return content[first] == '{' ? validate_json(content) : validate_csv(content);
}

ValidationResult validate_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return validate_content(ss.str());
}

}  // namespace cohmark::app
