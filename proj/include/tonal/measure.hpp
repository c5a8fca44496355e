#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "pcset.hpp"

namespace tonal {

namespace detail {

/// log2 of small positive integers, cached so repeated expectation sums are
/// cheap and bit-for-bit reproducible.
inline double log2_int(int v) {
    static const std::array<double, PitchClassSet::max_edo + 1> table = [] {
        std::array<double, PitchClassSet::max_edo + 1> t{};
        for (int i = 1; i <= PitchClassSet::max_edo; ++i)
            t[static_cast<std::size_t>(i)] = std::log2(static_cast<double>(i));
        return t;
    }();
    return table.at(static_cast<std::size_t>(v));
}

/// C(n, k) in checked 64-bit arithmetic.
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > ~std::uint64_t{0}) throw OverflowError("binomial coefficient overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace detail

/// Information carried by a combination, in bits, together with the
/// equivalent number of candidate tonics (tonic_count = c / 2^bits).
struct AmbiguityValue {
    double bits = 0.0;
    double tonic_count = 0.0;
};

/// All transpositions tau with X included in tau + S, sorted ascending.
/// The empty combination survives everywhere; a singleton survives in
/// exactly |S| transpositions.
inline std::vector<int> candidate_transpositions(const PitchClassSet& s, const Combination& x) {
    if (s.edo() != x.edo()) throw DomainError("set and combination use different EDOs");
    if (s.empty()) throw DomainError("context set is empty");
    std::vector<int> out;
    for (int tau = 0; tau < s.edo(); ++tau)
        if (s.transposed(tau).contains(x)) out.push_back(tau);
    return out;
}

/// t_S(X): how many candidate tonics remain once X has been heard.
/// Zero means X occurs in no transposition of S.
inline int tonal_ambiguity(const PitchClassSet& s, const Combination& x) {
    if (s.edo() != x.edo()) throw DomainError("set and combination use different EDOs");
    if (s.empty()) throw DomainError("context set is empty");
    int count = 0;
    for (int tau = 0; tau < s.edo(); ++tau)
        if (s.transposed(tau).contains(x)) ++count;
    return count;
}

/// I_S(X) = log2(c / t_S(X)) in bits. Throws AbsentCombinationError when
/// t = 0; absence is reported, never mapped to a number.
inline AmbiguityValue self_information(const PitchClassSet& s, const Combination& x) {
    int t = tonal_ambiguity(s, x);
    if (t == 0)
        throw AbsentCombinationError("combination absent from all transpositions of the set");
    return {detail::log2_int(s.edo()) - detail::log2_int(t), static_cast<double>(t)};
}

/// One Tn-class of k-subsets inside a context set: its representative with
/// instance multiplicity, the shared candidate-tonic count (well defined by
/// translation invariance) and the information in bits.
struct ClassBreakdown {
    TnClass cls;
    int tonic_count = 0;
    double bits = 0.0;

    double probability(std::uint64_t combination_count) const {
        return static_cast<double>(cls.multiplicity) / static_cast<double>(combination_count);
    }
};

/// Expected information over all k-subsets of a set, with the per-class
/// breakdown (multiplicities sum to C(m, k)).
struct CardinalityExpectation {
    int cardinality = 0;
    std::uint64_t combination_count = 0;
    double expected_bits = 0.0;
    double expected_tonics = 0.0;
    std::vector<ClassBreakdown> classes; // lexicographic by representative
};

namespace detail {

struct ClassTally {
    Combination representative;
    int tonic_count = 0;
    long long instances = 0;
};

/// Sum of log2(t_S(X)) across all k-subsets X of s, in enumeration order.
/// Every X <= S survives at tau = 0, so t >= 1 throughout. When `groups`
/// is given, also tallies subsets per Tn-class.
inline double sum_log2_tonics(const PitchClassSet& s, int k,
                              std::map<std::uint64_t, ClassTally>* groups = nullptr) {
    double sum_log_t = 0.0;
    for_each_combination(s.members(), k, [&](const std::vector<int>& pick) {
        Combination x = PitchClassSet::from_members(s.edo(), pick);
        int t = tonal_ambiguity(s, x);
        sum_log_t += log2_int(t);
        if (groups) {
            Combination nf = normal_form(x);
            auto [it, inserted] = groups->try_emplace(nf.mask());
            if (inserted) {
                it->second.representative = nf;
                it->second.tonic_count = t;
            }
            ++it->second.instances;
        }
    });
    return sum_log_t;
}

} // namespace detail

/// E over all k-subsets of S of I_S(X), with class breakdown.
inline CardinalityExpectation expected_info_at_cardinality(const PitchClassSet& s, int k) {
    if (s.empty()) throw DomainError("context set is empty");
    if (k < 1 || k > s.size()) throw DomainError("cardinality out of range");
    CardinalityExpectation out;
    out.cardinality = k;
    out.combination_count = detail::binomial(s.size(), k);

    std::map<std::uint64_t, detail::ClassTally> groups;
    double sum_log_t = detail::sum_log2_tonics(s, k, &groups);

    double n = static_cast<double>(out.combination_count);
    out.expected_bits = detail::log2_int(s.edo()) - sum_log_t / n;
    out.expected_tonics = static_cast<double>(s.edo()) * std::exp2(-out.expected_bits);

    for (auto& [mask, tally] : groups) {
        ClassBreakdown cb;
        cb.cls.representative = tally.representative;
        cb.cls.multiplicity = tally.instances;
        cb.tonic_count = tally.tonic_count;
        cb.bits = detail::log2_int(s.edo()) - detail::log2_int(cb.tonic_count);
        out.classes.push_back(std::move(cb));
    }
    std::sort(out.classes.begin(), out.classes.end(), [](const ClassBreakdown& a, const ClassBreakdown& b) {
        return lexicographic_less(a.cls.representative, b.cls.representative);
    });
    return out;
}

/// Per-cardinality expectations for k = 1..|S|.
struct CardinalityProfile {
    PitchClassSet set;
    std::vector<CardinalityExpectation> rows;
};

inline CardinalityProfile cardinality_profile(const PitchClassSet& s) {
    if (s.empty()) throw DomainError("context set is empty");
    CardinalityProfile profile{s, {}};
    profile.rows.reserve(static_cast<std::size_t>(s.size()));
    for (int k = 1; k <= s.size(); ++k)
        profile.rows.push_back(expected_info_at_cardinality(s, k));
    return profile;
}

/// E_S[I]: expectation of I_S(X) over all non-empty subsets of S, i.e. the
/// per-cardinality expectations combined with binomial weights
/// C(m,k)/(2^m - 1).
inline double set_expected_info(const PitchClassSet& s) {
    if (s.empty()) throw DomainError("context set is empty");
    // Same quantity as the weighted per-k combination, accumulated directly:
    // E_S[I] = log2(c) - (sum over all non-empty X of log2 t) / (2^m - 1).
    double sum_log_t = 0.0;
    for (int k = 1; k <= s.size(); ++k)
        sum_log_t += detail::sum_log2_tonics(s, k);
    double total = std::exp2(static_cast<double>(s.size())) - 1.0;
    return detail::log2_int(s.edo()) - sum_log_t / total;
}

/// Set-level summary: expected information, the Tonal Ambiguity Index
/// tai = c / 2^E (geometric-mean count of surviving tonal interpretations),
/// and the EDO-normalized scores nmi = E / log2 c, na = 1 - nmi
/// (so tai = c^na).
struct SetReport {
    PitchClassSet set;
    CardinalityProfile profile;
    double expected_bits = 0.0;
    double tai = 0.0;
    double nmi = 0.0;
    double na = 0.0;
};

inline SetReport tai(const PitchClassSet& s) {
    SetReport report{s, cardinality_profile(s), 0.0, 0.0, 0.0, 0.0};
    report.expected_bits = set_expected_info(s);
    report.tai = static_cast<double>(s.edo()) * std::exp2(-report.expected_bits);
    report.nmi = report.expected_bits / detail::log2_int(s.edo());
    report.na = 1.0 - report.nmi;
    return report;
}

/// Tn-classes of k-subsets of S that pin the transposition by themselves
/// (t_S = 1 for every instance).
inline std::vector<TnClass> diagnostic_combinations(const PitchClassSet& s, int k) {
    std::vector<TnClass> out;
    for (const ClassBreakdown& cb : expected_info_at_cardinality(s, k).classes)
        if (cb.tonic_count == 1) out.push_back(cb.cls);
    return out;
}

/// A prior over which transposition (tonic) is in play.
struct TonicPrior {
    std::vector<double> probabilities; // indexed by tau in [0, edo)

    static TonicPrior uniform(int edo) {
        TonicPrior p;
        p.probabilities.assign(static_cast<std::size_t>(edo), 1.0 / static_cast<double>(edo));
        return p;
    }
};

/// Information gained about the tonic from X under an arbitrary prior:
/// H(T) minus the entropy of the prior restricted and renormalized to the
/// transpositions that survive X. Reduces exactly to self_information for
/// the uniform prior.
inline double info_gain_with_prior(const PitchClassSet& s, const Combination& x,
                                   const TonicPrior& prior) {
    int c = s.edo();
    if (prior.probabilities.size() != static_cast<std::size_t>(c))
        throw DomainError("prior length does not match the EDO");
    double total = 0.0;
    for (double p : prior.probabilities) {
        if (p < 0.0) throw DomainError("prior has a negative entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("prior does not sum to 1");

    auto entropy_term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    double h_prior = 0.0;
    for (double p : prior.probabilities) h_prior += entropy_term(p);

    double mass = 0.0;
    for (int tau : candidate_transpositions(s, x))
        mass += prior.probabilities[static_cast<std::size_t>(tau)];
    if (mass <= 0.0) throw DomainError("evidence inconsistent with prior: posterior mass is zero");

    double h_post = 0.0;
    for (int tau : candidate_transpositions(s, x))
        h_post += entropy_term(prior.probabilities[static_cast<std::size_t>(tau)] / mass);
    return h_prior - h_post;
}

} // namespace tonal
