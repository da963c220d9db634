// app.hpp: command implementations behind the cohmark executable

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <cohmark/channels.hpp>

namespace cohmark::app {

inline constexpr std::string_view kToolVersion = "cohmark 0.1.0";

enum class Command { trajectory, measure, sweep, figure, validate, check };
enum class Format { csv, json };

std::string_view to_string(Command c) noexcept;

struct NumericConfig {
    double t_max = 20.0;
    double dt = 1e-3;
    int phase_grid = 12;
    int stride = 10;  // trajectory rows every stride * dt
};

struct OutputConfig {
    std::string path;  // empty or "-" means standard output
    Format format = Format::csv;
};

struct RunConfig {
    Command command = Command::measure;
    ChannelSpec channel{};
    NumericConfig numeric{};
    OutputConfig output{};
    std::uint64_t seed = 7;
    int jobs = 1;
    bool timing = false;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
};

struct Axis {
    std::string name;  // s, ratio, B or delta_over_gamma0
    double min;
    double max;
    int steps;

    std::vector<double> values() const;
};

struct SweepGrid {
    Axis axis1;
    std::optional<Axis> axis2;

    void validate(ChannelKind kind) const;
};

/// "name:min:max:steps"
Axis parse_axis(std::string_view text);

/// Invalid configuration (exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Content of the file each command writes.
std::string run_trajectory(const RunConfig& cfg);
std::string run_measure(const RunConfig& cfg);
std::string run_sweep(const RunConfig& cfg, const SweepGrid& grid);

inline constexpr std::string_view kFigureNames[] = {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a", "fig3b"};

/// Preset for a figure panel; jobs, timing and output are taken from `base`.
std::string run_figure(std::string_view name, const RunConfig& base);

void write_output(const OutputConfig& out, const std::string& content);

void cmd_trajectory(const RunConfig& cfg);
void cmd_measure(const RunConfig& cfg);
void cmd_sweep(const RunConfig& cfg, const SweepGrid& grid);
void cmd_figure(std::string_view name, const RunConfig& base);

struct ValidationResult {
    bool ok;
    std::string kind;  // csv or json
    std::size_t rows = 0;
    std::vector<std::string> problems;
};

/// Re-reads an emitted file and checks header and schema.
ValidationResult validate_content(const std::string& content);
ValidationResult validate_file(const std::string& path);

}  // namespace cohmark::app
