// properties.hpp: randomized checks of the coherence axioms and channel invariants

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cohmark::app {

struct PropertyReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t violations = 0;
    std::map<std::string, std::size_t> checks;      // property -> number of evaluations
    std::map<std::string, std::size_t> failures;    // property -> number of violations
    std::vector<std::string> examples;              // first few violations, human readable

    bool ok() const noexcept { return violations == 0; }
};

/// Each trial draws a channel, parameters, times and states, then checks
///   monotonicity of C_l1 and C_RE along Markovian channels,
///   convexity of both measures,
///   vanishing on incoherent states and their invariance under the channel,
///   trace, Hermiticity and positivity along exact maps and integrated trajectories.
PropertyReport run_property_suite(std::uint64_t seed, std::size_t trials = 500);

std::string to_json(const PropertyReport& r);

}  // namespace cohmark::app
