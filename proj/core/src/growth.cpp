#include <stdexcept>

#include "cohmark/nonmarkov.hpp"

namespace cohmark {

std::vector<GrowthInterval> detect_growth(std::span<const double> times, std::span<const double> values,
                                          double noise_floor) {
    if (times.size() != values.size()) throw std::invalid_argument("detect_growth: times and values differ in length");
    if (times.size() < 3) throw std::invalid_argument("detect_growth: need at least 3 samples");
    if (!(noise_floor >= 0.0)) throw std::invalid_argument("detect_growth: noise floor must be non-negative");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) throw std::invalid_argument("detect_growth: times must be strictly ascending");
    }

    std::vector<GrowthInterval> out;
    const std::size_t n = values.size();
    std::size_t k = 0;
    while (k + 1 < n) {
        if (!(values[k + 1] > values[k])) {
            ++k;
            continue;
        }
        const std::size_t start = k;
        std::size_t end = k + 1;
        while (end + 1 < n) {
            const double step = values[end + 1] - values[end];
            if (step > 0.0) {
                ++end;
            } else if (-step <= noise_floor && end + 2 < n && values[end + 2] > values[end + 1]) {
                end += 2;
            } else {
                break;
            }
        }
        const double gain = values[end] - values[start];
        if (gain > noise_floor) out.push_back({times[start], times[end], gain});
        k = end;
    }
    return out;
}

}  // namespace cohmark
