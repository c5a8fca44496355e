#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "measure.hpp"
#include "pcset.hpp"

namespace tonal {

/// Stirling number of the second kind S(n, k) via the recurrence
/// S(n, k) = k * S(n-1, k) + S(n-1, k-1), in checked 64-bit arithmetic.
/// Overflow is detected and reported, never wrapped; the unbounded-width
/// path used by the draw distributions lives in detail::stirling2_row.
inline std::uint64_t stirling2(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (n == 0) return 1; // S(0,0)
    if (k == 0) return 0;
    // Only cells (i, j) with j in [k - (n - i), min(i, k)] can reach (n, k),
    // so S(64, 64) and friends never touch the huge mid-table values.
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1; // S(0, 0)
    for (unsigned i = 1; i <= n; ++i) {
        unsigned lo = k > (n - i) ? k - (n - i) : 1;
        unsigned hi = std::min(i, k);
        for (unsigned j = hi; j >= lo; --j) {
            std::uint64_t term;
            if (__builtin_mul_overflow(row[j], static_cast<std::uint64_t>(j), &term) ||
                __builtin_add_overflow(term, row[j - 1], &row[j]))
                throw OverflowError("Stirling number exceeds 64-bit range");
        }
        if (lo == 1) row[0] = 0; // S(i, 0) = 0 for i >= 1
    }
    return row[k];
}

namespace detail {

/// S(n, j) for j = 0..k in exact arbitrary-width integers.
inline std::vector<mpz_class> stirling2_row(int n, int k) {
    std::vector<mpz_class> row(static_cast<std::size_t>(k) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, k); j >= 1; --j)
            row[static_cast<std::size_t>(j)] =
                j * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)];
        row[0] = 0;
    }
    return row;
}

} // namespace detail

/// Occupancy distribution of n draws with repetition from an m-note set:
/// probabilities[k-1] = P(exactly k distinct pitches).
struct DrawDistribution {
    int draws = 0;
    int set_size = 0;
    std::vector<double> probabilities;

    double probability(int k) const {
        return k >= 1 && k <= set_size ? probabilities[static_cast<std::size_t>(k) - 1] : 0.0;
    }
};

/// P_k = m^-n * S(n, k) * C(m, k) * k! computed from exact integers
/// (each P_k is an exact rational converted to the nearest double, so the
/// distribution sums to 1 up to conversion error).
inline DrawDistribution distinct_count_distribution(int draws, int set_size) {
    if (draws < 1) throw DomainError("draw count must be at least 1");
    if (set_size < 1 || set_size > PitchClassSet::max_edo)
        throw DomainError("set size out of range");

    DrawDistribution dist{draws, set_size, {}};
    dist.probabilities.assign(static_cast<std::size_t>(set_size), 0.0);

    auto stirling = detail::stirling2_row(draws, std::min(draws, set_size));
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(set_size),
                  static_cast<unsigned long>(draws));

    for (int k = 1; k <= std::min(draws, set_size); ++k) {
        mpz_class binom, fact;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(set_size),
                     static_cast<unsigned long>(k));
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
        mpq_class p(stirling[static_cast<std::size_t>(k)] * binom * fact, denom);
        p.canonicalize();
        dist.probabilities[static_cast<std::size_t>(k) - 1] = p.get_d();
    }
    return dist;
}

namespace detail {

/// E over k-subsets of I_S, for every k = 1..|S|, without class grouping.
inline std::vector<double> per_cardinality_bits(const PitchClassSet& s) {
    std::vector<double> bits;
    bits.reserve(static_cast<std::size_t>(s.size()));
    for (int k = 1; k <= s.size(); ++k) {
        double n = static_cast<double>(binomial(s.size(), k));
        bits.push_back(log2_int(s.edo()) - sum_log2_tonics(s, k) / n);
    }
    return bits;
}

} // namespace detail

/// Expected information after n draws with repetition from S:
/// E_S[I | n] = sum_k P_k * E over k-subsets of I_S, and its reading as
/// the surviving tonic count t_n = c / 2^E.
inline AmbiguityValue expected_info_after_draws(const PitchClassSet& s, int draws) {
    if (s.empty()) throw DomainError("context set is empty");
    auto bits = detail::per_cardinality_bits(s);
    DrawDistribution dist = distinct_count_distribution(draws, s.size());
    double expected = 0.0;
    for (int k = 1; k <= s.size(); ++k)
        expected += dist.probability(k) * bits[static_cast<std::size_t>(k) - 1];
    return {expected, static_cast<double>(s.edo()) * std::exp2(-expected)};
}

struct ConvergencePoint {
    int draws = 0;
    double bits = 0.0;
    double tonic_count = 0.0;
};

/// t_n as a function of n; starts at |S| and decreases toward the full-set
/// information floor (the symmetry order of S).
struct ConvergenceCurve {
    PitchClassSet set;
    std::vector<ConvergencePoint> points; // draws = 1..n_max
};

inline ConvergenceCurve convergence_curve(const PitchClassSet& s, int n_max) {
    if (s.empty()) throw DomainError("context set is empty");
    if (n_max < 1) throw DomainError("curve length must be at least 1");
    auto bits = detail::per_cardinality_bits(s);
    ConvergenceCurve curve{s, {}};
    curve.points.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        DrawDistribution dist = distinct_count_distribution(n, s.size());
        double expected = 0.0;
        for (int k = 1; k <= s.size(); ++k)
            expected += dist.probability(k) * bits[static_cast<std::size_t>(k) - 1];
        curve.points.push_back({n, expected, static_cast<double>(s.edo()) * std::exp2(-expected)});
    }
    return curve;
}

/// Reference level subtracted from the tonic-count curve before integrating.
enum class AucBaseline {
    Asymptote, // symmetry order of the set (the curve's limit)
    Unity,     // 1
    Zero,      // 0
};

/// Trapezoidal area between the tonic-count curve and a baseline over the
/// integer draw range [n_start, n_end]. Baseline and range are explicit
/// parameters; defaults elsewhere are Asymptote over (1, 32).
inline double area_under_curve(const ConvergenceCurve& curve, AucBaseline baseline,
                               int n_start, int n_end) {
    int n_max = static_cast<int>(curve.points.size());
    if (n_start < 1 || n_end > n_max || n_start > n_end)
        throw DomainError("requested range outside the tabulated curve");
    double base = 0.0;
    switch (baseline) {
    case AucBaseline::Asymptote: base = static_cast<double>(symmetry_order(curve.set)); break;
    case AucBaseline::Unity: base = 1.0; break;
    case AucBaseline::Zero: base = 0.0; break;
    }
    double area = 0.0;
    for (int n = n_start; n < n_end; ++n) {
        double a = curve.points[static_cast<std::size_t>(n) - 1].tonic_count - base;
        double b = curve.points[static_cast<std::size_t>(n)].tonic_count - base;
        area += 0.5 * (a + b);
    }
    return area;
}

/// Default passage length for the time-aware measure: long enough to cover
/// 8-note sets, short enough to avoid trivial convergence.
constexpr int default_draw_length() { return 8; }

} // namespace tonal
