#pragma once

#include <string>
#include <vector>

namespace vncap::cli {

/// Locale-independent shortest form with 12 significant digits. Magnitudes
/// below 1e-13 print as 0.
std::string format_number(double x);

struct Range {
    double start = 0;
    double stop = 0;
    double step = 0;

    /// start + i*step for i = 0.. while <= stop (1e-9 slack), clamped to [0, 1].
    std::vector<double> values() const;
};

/// "start[:stop[:step]]". Throws std::invalid_argument on malformed or empty
/// ranges and on bounds outside [0, 1].
Range parse_range(const std::string& text, double default_step);

}  // namespace vncap::cli
