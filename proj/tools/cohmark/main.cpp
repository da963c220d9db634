// cohmark: coherence-based non-Markovianity of qubit channels

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cohmark/lindblad.hpp>
#include <cohmark/nonmarkov.hpp>

#include "app.hpp"
#include "properties.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("cohmark");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("COHMARK_LOG")) {
        const auto level = spdlog::level::from_str(env);
        if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
    }
}

int numeric_failure(const std::string& kind, const std::string& message, std::optional<double> t = std::nullopt) {
    nlohmann::ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    if (t) j["t"] = *t;
    std::cerr << j.dump() << '\n';
    return kExitNumeric;
}

struct ChannelFlags {
    std::string channel = "deph1q";
    std::optional<double> s;
    std::optional<double> ratio;
    std::optional<double> delta;
    std::optional<double> b;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double coupling = 0.0;
};

struct NumericFlags {
    std::optional<double> t_max;
    double dt = cohmark::kDefaultDt;
    int phase_grid = 12;
    int stride = 10;
};

void add_channel_flags(CLI::App* cmd, ChannelFlags& f) {
    cmd->add_option("--channel", f.channel, "deph1q, diss1q, deph2q_common, deph2q_independent, diss2q_common")
        ->capture_default_str();
    cmd->add_option("--s", f.s, "Ohmicity (dephasing channels, default 3.5)");
    cmd->add_option("--ratio", f.ratio, "gamma0 / lambda (dissipative channels, default 4)");
    cmd->add_option("--delta-over-gamma0", f.delta, "detuning relative to gamma0 (diss1q, default 0.001)");
    cmd->add_option("--B", f.b, "spatial correlation sin(qd)/qd (diss2q_common, default 0.5)");
    cmd->add_option("--eps1", f.eps1, "qubit 1 splitting (two-qubit dephasing)");
    cmd->add_option("--eps2", f.eps2, "qubit 2 splitting (two-qubit dephasing)");
    cmd->add_option("--coupling", f.coupling, "zz coupling (two-qubit dephasing)");
}

void add_numeric_flags(CLI::App* cmd, NumericFlags& f) {
    cmd->add_option("--tmax", f.t_max, "time horizon (default 20 for dephasing, 30 for dissipative)");
    cmd->add_option("--dt", f.dt, "time step")->capture_default_str();
    cmd->add_option("--phase-grid", f.phase_grid, "phase grid points per angle")->capture_default_str();
}

cohmark::ChannelSpec build_channel(const ChannelFlags& f) {
    using namespace cohmark;
    const auto kind = parse_channel_kind(f.channel);
    if (!kind) throw app::ConfigError("unknown channel '" + f.channel + "'");
    const auto reject = [&](bool given, const char* flag) {
        if (given) throw app::ConfigError(std::string(flag) + " does not apply to channel " + f.channel);
    };
    ChannelSpec c;
    switch (*kind) {
    case ChannelKind::deph1q:
        reject(f.ratio || f.delta || f.b, "--ratio/--delta-over-gamma0/--B");
        reject(f.eps1 != 0.0 || f.eps2 != 0.0 || f.coupling != 0.0, "--eps1/--eps2/--coupling");
        c = ChannelSpec::deph1q(f.s.value_or(3.5));
        break;
    case ChannelKind::deph2q_common:
    case ChannelKind::deph2q_independent:
        reject(f.ratio || f.delta || f.b, "--ratio/--delta-over-gamma0/--B");
        c = ChannelSpec::deph2q(f.s.value_or(3.5),
                                *kind == ChannelKind::deph2q_common ? DephasingMode::common : DephasingMode::independent,
                                {f.eps1, f.eps2, f.coupling});
        break;
    case ChannelKind::diss1q:
        reject(f.s || f.b, "--s/--B");
        reject(f.eps1 != 0.0 || f.eps2 != 0.0 || f.coupling != 0.0, "--eps1/--eps2/--coupling");
        c = ChannelSpec::diss1q(f.ratio.value_or(4.0), f.delta.value_or(0.001));
        break;
    case ChannelKind::diss2q_common:
        reject(f.s || f.delta, "--s/--delta-over-gamma0");
        reject(f.eps1 != 0.0 || f.eps2 != 0.0 || f.coupling != 0.0, "--eps1/--eps2/--coupling");
        c = ChannelSpec::diss2q(f.ratio.value_or(4.0), f.b.value_or(0.5));
        break;
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw app::ConfigError(e.what());
    }
    return c;
}

cohmark::app::NumericConfig build_numeric(const NumericFlags& f, const cohmark::ChannelSpec& c) {
    cohmark::app::NumericConfig n;
    n.t_max = f.t_max.value_or(cohmark::default_t_max(c.kind));
    n.dt = f.dt;
    n.phase_grid = f.phase_grid;
    n.stride = f.stride;
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cohmark;
    setup_logging();

    CLI::App cli{"Coherence-based non-Markovianity of qubit channels"};
    cli.set_version_flag("--version", std::string(app::kToolVersion));
    cli.require_subcommand(1);

    ChannelFlags chan;
    NumericFlags numf;
    std::string out_path;
    std::string format;
    int jobs = 1;
    bool timing = false;
    std::uint64_t seed = 7;
    std::size_t trials = 500;
    std::vector<std::string> axes;
    std::string figure_name;
    std::string validate_path;

    auto* traj = cli.add_subcommand("trajectory", "coherence and state along the exact map (CSV)");
    add_channel_flags(traj, chan);
    add_numeric_flags(traj, numf);
    traj->add_option("--stride", numf.stride, "write every stride-th time step")->capture_default_str();
    traj->add_option("--out", out_path, "output file (default stdout)");
    traj->add_option("--format", format, "csv")->check(CLI::IsMember({"csv"}));

    auto* meas = cli.add_subcommand("measure", "non-Markovianity measure of one channel (JSON)");
    add_channel_flags(meas, chan);
    add_numeric_flags(meas, numf);
    meas->add_option("--out", out_path, "output file (default stdout)");
    meas->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* sweep = cli.add_subcommand("sweep", "measure over a parameter grid (CSV)");
    add_channel_flags(sweep, chan);
    add_numeric_flags(sweep, numf);
    sweep->add_option("--axis", axes, "name:min:max:steps, once or twice")->required()->expected(1, 2);
    sweep->add_option("--out", out_path, "output file (default stdout)");
    sweep->add_option("--format", format, "csv")->check(CLI::IsMember({"csv"}));
    sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    sweep->add_flag("--timing", timing, "add a wall_time_s column");

    auto* fig = cli.add_subcommand("figure", "regenerate a figure panel (CSV)");
    fig->add_option("name", figure_name, "fig1a, fig1b, fig2a, fig2b, fig3a or fig3b")->required();
    fig->add_option("--out", out_path, "output file (default <name>.csv, '-' for stdout)");
    fig->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    fig->add_flag("--timing", timing, "add a wall_time_s column to sweep panels");

    auto* val = cli.add_subcommand("validate", "check an emitted CSV or JSON file");
    val->add_option("path", validate_path, "file to check")->required();

    auto* chk = cli.add_subcommand("check", "randomized coherence-axiom and invariant checks (JSON)");
    chk->add_option("--seed", seed, "random seed")->capture_default_str();
    chk->add_option("--trials", trials, "number of trials")->capture_default_str();
    chk->add_option("--out", out_path, "output file (default stdout)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        app::RunConfig cfg;
        cfg.output.path = out_path;
        cfg.jobs = jobs;
        cfg.timing = timing;
        cfg.seed = seed;

        if (*traj || *meas || *sweep) {
            cfg.channel = build_channel(chan);
            cfg.numeric = build_numeric(numf, cfg.channel);
            cfg.output.format = format == "json" || (format.empty() && *meas) ? app::Format::json : app::Format::csv;
        }
        if (*traj) {
            cfg.command = app::Command::trajectory;
            app::cmd_trajectory(cfg);
        } else if (*meas) {
            cfg.command = app::Command::measure;
            app::cmd_measure(cfg);
        } else if (*sweep) {
            cfg.command = app::Command::sweep;
            app::SweepGrid grid{app::parse_axis(axes.at(0)), std::nullopt};
            if (axes.size() == 2) grid.axis2 = app::parse_axis(axes[1]);
            app::cmd_sweep(cfg, grid);
        } else if (*fig) {
            cfg.command = app::Command::figure;
            if (jobs < 1) throw app::ConfigError("--jobs must be positive");
            app::cmd_figure(figure_name, cfg);
        } else if (*val) {
            const app::ValidationResult r = app::validate_file(validate_path);
            if (r.ok) {
                std::cout << "ok " << r.kind << ' ' << r.rows << " rows\n";
                return kExitOk;
            }
            for (const auto& p : r.problems) std::cerr << validate_path << ": " << p << '\n';
            return kExitConfig;
        } else if (*chk) {
            const app::PropertyReport r = app::run_property_suite(seed, trials);
            app::write_output(cfg.output, app::to_json(r));
            if (!r.ok()) return kExitNumeric;
        }
        return kExitOk;
    } catch (const app::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegrationError& e) {
        return numeric_failure("integration", e.what(), e.time());
    } catch (const DensityValidationError& e) {
        return numeric_failure("invalid_state", e.what());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        return numeric_failure("numeric", e.what());
    }
}
