#pragma once

#include <cstdio>
#include <string>

namespace tonal {

/// Fixed-point rendering at the given number of decimals. printf carries the
/// binary value to the correctly rounded decimal string, which realizes
/// round-half-to-even at the printed precision (log2 6 = 2.58496... must
/// print as 2.58).
inline std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

/// Exact probability rendering, e.g. "2/35".
inline std::string fraction(long long numerator, long long denominator) {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
}

} // namespace tonal
