#include "vncap/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace vncap::cli {

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

}  // namespace

std::string format_number(double x) {
    if (std::abs(x) < 1e-13) x = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return {buf, res.ptr};
}

std::vector<double> Range::values() const {
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (v > 1.0) v = 1.0;
        out.push_back(v);
    }
    return out;
}

Range parse_range(const std::string& text, double default_step) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() > 3) throw std::invalid_argument("range must be start[:stop[:step]]");

    Range r;
    r.start = parse_double(parts[0]);
    r.stop = parts.size() > 1 ? parse_double(parts[1]) : r.start;
    r.step = parts.size() > 2 ? parse_double(parts[2]) : default_step;
    if (!(r.step > 0.0)) throw std::invalid_argument("range step must be positive");
    if (r.start < 0.0 || r.stop > 1.0) throw std::invalid_argument("range must lie within [0, 1]");
    if (r.stop < r.start) throw std::invalid_argument("empty range");
    return r;
}

}  // namespace vncap::cli
