#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace tonal {

/// A set of pitch classes in an equal division of the octave (EDO).
///
/// Stored as a characteristic bit vector over Z_c, so membership tests,
/// transposition (bit rotation) and subset tests are single word operations.
/// Values are immutable; every operation returns a new set.
class PitchClassSet {
public:
    /// Largest supported chromatic size (bit width of the mask word).
    static constexpr int max_edo = 64;

    PitchClassSet() = default; // empty set in 12-EDO

    explicit PitchClassSet(int edo) : edo_(check_edo(edo)) {}

    PitchClassSet(int edo, std::initializer_list<int> pcs) : edo_(check_edo(edo)) {
        for (int pc : pcs) {
            check_pc(pc);
            mask_ |= std::uint64_t{1} << pc;
        }
    }

    static PitchClassSet from_mask(int edo, std::uint64_t mask) {
        PitchClassSet s(edo);
        if (mask & ~full_mask(s.edo_))
            throw DomainError("pitch-class mask has bits outside [0, edo)");
        s.mask_ = mask;
        return s;
    }

    static PitchClassSet from_members(int edo, const std::vector<int>& pcs) {
        PitchClassSet s(edo);
        for (int pc : pcs) {
            s.check_pc(pc);
            s.mask_ |= std::uint64_t{1} << pc;
        }
        return s;
    }

    /// Parses a set spec: either the compact one-character-per-pitch-class
    /// form ('0'..'9', 'T' = 10, 'E' = 11; only for edo <= 12) or a
    /// comma-separated list of integers. Duplicate members are rejected.
    /// An empty string yields the empty set.
    static PitchClassSet parse(std::string_view text, int edo = 12);

    int edo() const { return edo_; }
    int size() const { return __builtin_popcountll(mask_); }
    bool empty() const { return mask_ == 0; }
    std::uint64_t mask() const { return mask_; }

    bool contains(int pc) const {
        return pc >= 0 && pc < edo_ && (mask_ >> pc & 1u);
    }

    /// True when every member of `other` is a member of this set.
    bool contains(const PitchClassSet& other) const {
        require_same_edo(other);
        return (other.mask_ & ~mask_) == 0;
    }

    bool subset_of(const PitchClassSet& other) const { return other.contains(*this); }

    /// The set shifted by `tau` semitone steps, modulo the EDO.
    PitchClassSet transposed(int tau) const {
        int t = ((tau % edo_) + edo_) % edo_;
        PitchClassSet out(edo_);
        out.mask_ = rotl(mask_, t);
        return out;
    }

    /// Members in ascending order.
    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t m = mask_; m;) {
            int pc = __builtin_ctzll(m);
            out.push_back(pc);
            m &= m - 1;
        }
        return out;
    }

    /// Canonical text form: compact for edo <= 12, comma list otherwise.
    std::string spelling() const {
        std::string out;
        bool compact = edo_ <= 12;
        for (int pc : members()) {
            if (compact) {
                out += pc < 10 ? static_cast<char>('0' + pc) : (pc == 10 ? 'T' : 'E');
            } else {
                if (!out.empty()) out += ',';
                out += std::to_string(pc);
            }
        }
        return out;
    }

    friend bool operator==(const PitchClassSet&, const PitchClassSet&) = default;

private:
    static int check_edo(int edo) {
        if (edo < 1 || edo > max_edo)
            throw DomainError("edo must be in [1, " + std::to_string(max_edo) + "]");
        return edo;
    }

    void check_pc(int pc) const {
        if (pc < 0 || pc >= edo_)
            throw DomainError("pitch class " + std::to_string(pc) + " outside [0, " +
                              std::to_string(edo_) + ")");
    }

    void require_same_edo(const PitchClassSet& other) const {
        if (edo_ != other.edo_)
            throw DomainError("mismatched EDO between pitch-class sets");
    }

    static constexpr std::uint64_t full_mask(int edo) {
        return edo == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edo) - 1;
    }

    std::uint64_t rotl(std::uint64_t m, int t) const {
        if (t == 0) return m;
        return ((m << t) | (m >> (edo_ - t))) & full_mask(edo_);
    }

    int edo_ = 12;
    std::uint64_t mask_ = 0;
};

/// A combination is an observed subset of pitch classes; same value shape.
using Combination = PitchClassSet;

/// Lexicographic order on the sorted member sequences (the enumeration and
/// report order used throughout, so output is byte-reproducible).
inline bool lexicographic_less(const PitchClassSet& a, const PitchClassSet& b) {
    auto ma = a.members(), mb = b.members();
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

inline PitchClassSet PitchClassSet::parse(std::string_view text, int edo) {
    PitchClassSet out(edo);
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return out;

    auto add = [&](int pc) {
        if (pc < 0 || pc >= edo)
            throw ParseError("pitch class " + std::to_string(pc) + " outside [0, " +
                             std::to_string(edo) + ")");
        std::uint64_t bit = std::uint64_t{1} << pc;
        if (out.mask_ & bit)
            throw ParseError("duplicate pitch class " + std::to_string(pc));
        out.mask_ |= bit;
    };

    if (text.find(',') == std::string_view::npos && edo <= 12) {
        // compact form, one character per pitch class
        for (char ch : text) {
            int pc;
            if (ch >= '0' && ch <= '9') pc = ch - '0';
            else if (ch == 'T') pc = 10;
            else if (ch == 'E') pc = 11;
            else throw ParseError(std::string("invalid character '") + ch + "' in set spec");
            add(pc);
        }
        return out;
    }

    // comma-separated integer list
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view item = trim(text.substr(pos, comma == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : comma - pos));
        if (item.empty()) throw ParseError("empty item in comma-separated set spec");
        int value = 0;
        for (char ch : item) {
            if (ch < '0' || ch > '9')
                throw ParseError(std::string("invalid character '") + ch + "' in set spec");
            value = value * 10 + (ch - '0');
            if (value > max_edo) break; // avoid overflow on absurd input
        }
        add(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

/// Counts of unordered pitch-class pairs per interval class 1..floor(c/2).
struct IntervalVector {
    std::vector<int> counts;

    /// Count for interval class `ic` (1-based).
    int at(int ic) const { return counts.at(static_cast<std::size_t>(ic) - 1); }

    std::string str() const {
        std::string out = "<";
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(counts[i]);
        }
        return out + ">";
    }

    friend bool operator==(const IntervalVector&, const IntervalVector&) = default;
};

inline IntervalVector interval_vector(const PitchClassSet& s) {
    int c = s.edo();
    IntervalVector iv;
    iv.counts.assign(static_cast<std::size_t>(c / 2), 0);
    auto pcs = s.members();
    for (std::size_t i = 0; i < pcs.size(); ++i)
        for (std::size_t j = i + 1; j < pcs.size(); ++j) {
            int d = pcs[j] - pcs[i];
            int ic = std::min(d, c - d);
            if (ic > 0) ++iv.counts[static_cast<std::size_t>(ic) - 1];
        }
    return iv;
}

namespace detail {

/// Visits all k-element subsets of `items` in lexicographic order.
template <typename Fn>
void for_each_combination(const std::vector<int>& items, int k, Fn&& fn) {
    int n = static_cast<int>(items.size());
    if (k < 0 || k > n) throw DomainError("subset cardinality out of range");
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::vector<int> pick(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        fn(pick);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace detail

/// All k-element subsets of `s`, ordered lexicographically by sorted members.
/// Yields exactly C(|s|, k) sets; k = 0 yields one empty combination.
inline std::vector<Combination> subsets_of_cardinality(const PitchClassSet& s, int k) {
    if (k < 0 || k > s.size()) throw DomainError("subset cardinality out of range");
    std::vector<Combination> out;
    detail::for_each_combination(s.members(), k, [&](const std::vector<int>& pick) {
        out.push_back(PitchClassSet::from_members(s.edo(), pick));
    });
    return out;
}

/// The Forte-packed normal form of a non-empty combination, transposed to
/// start at 0. Transposition only (no inversion), so 037 and 047 stay
/// distinct. Among rotations of minimal span, ties break on successively
/// smaller intervals measured from the first element, left to right;
/// equivalently the lexicographically smallest normalized rotation wins.
/// Idempotent.
inline Combination normal_form(const Combination& x) {
    if (x.empty()) throw DomainError("normal form of an empty combination");
    int c = x.edo();
    auto pcs = x.members();
    std::size_t n = pcs.size();
    std::vector<int> best, rot(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i)
            rot[i] = ((pcs[(r + i) % n] - pcs[r]) % c + c) % c;
        if (best.empty() || rot[n - 1] < best[n - 1] ||
            (rot[n - 1] == best[n - 1] && rot < best))
            best = rot;
    }
    return PitchClassSet::from_members(c, best);
}

/// A transposition class of combinations: its normal-form representative and,
/// where meaningful, the number of instances inside a context set.
struct TnClass {
    Combination representative;
    long long multiplicity = 0;

    friend bool operator==(const TnClass&, const TnClass&) = default;
};

/// One representative per Tn-class of k-subsets of Z_c, in lexicographic
/// order. Complete and duplicate-free; every class is represented by its
/// normal form (which always contains 0).
inline std::vector<Combination> tn_class_census(int c, int k) {
    if (c < 1 || c > PitchClassSet::max_edo) throw DomainError("edo out of range");
    if (k < 1 || k > c) throw DomainError("census cardinality out of range");
    std::vector<int> rest(static_cast<std::size_t>(c - 1));
    for (int i = 1; i < c; ++i) rest[static_cast<std::size_t>(i - 1)] = i;
    std::unordered_set<std::uint64_t> seen;
    std::vector<Combination> out;
    detail::for_each_combination(rest, k - 1, [&](const std::vector<int>& pick) {
        std::vector<int> pcs;
        pcs.reserve(static_cast<std::size_t>(k));
        pcs.push_back(0);
        pcs.insert(pcs.end(), pick.begin(), pick.end());
        Combination nf = normal_form(PitchClassSet::from_members(c, pcs));
        if (seen.insert(nf.mask()).second) out.push_back(nf);
    });
    std::sort(out.begin(), out.end(), lexicographic_less);
    return out;
}

/// Number of transpositions that map the set onto itself; 1 for sets with
/// uniqueness, larger for modes of limited transposition. Divides the EDO.
inline int symmetry_order(const PitchClassSet& s) {
    if (s.empty()) throw DomainError("symmetry order of an empty set");
    int count = 0;
    for (int tau = 0; tau < s.edo(); ++tau)
        if (s.transposed(tau) == s) ++count;
    return count;
}

} // namespace tonal
