#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "measure.hpp"
#include "pcset.hpp"

namespace tonal {

/// A named registry of reference sets sharing one EDO, used for cross-set
/// disambiguation and the combination-by-combination survey table.
struct ScaleFamily {
    struct Entry {
        std::string name;
        std::string label; // short column header; defaults to the name
        PitchClassSet set;
    };

    std::vector<Entry> entries;

    int edo() const {
        if (entries.empty()) throw DomainError("scale family is empty");
        return entries.front().set.edo();
    }

    std::size_t size() const { return entries.size(); }

    const Entry* find(std::string_view name) const {
        for (const Entry& e : entries)
            if (e.name == name) return &e;
        return nullptr;
    }

    ScaleFamily without(std::string_view name) const {
        ScaleFamily out;
        for (const Entry& e : entries)
            if (e.name != name) out.entries.push_back(e);
        return out;
    }
};

namespace detail {

inline ScaleFamily::Entry make_entry(std::string name, std::string label, const char* spec) {
    return {std::move(name), std::move(label), PitchClassSet::parse(spec, 12)};
}

} // namespace detail

/// The seven 12-EDO reference scales, in survey-column order.
inline ScaleFamily reference_scales(int edo = 12) {
    if (edo != 12) throw DomainError("built-in reference scales exist only for 12-EDO");
    ScaleFamily f;
    f.entries = {
        detail::make_entry("Major", "M", "024579E"),
        detail::make_entry("Asc. Melodic Minor", "mm", "023579E"),
        detail::make_entry("Harmonic Minor", "hm", "023578E"),
        detail::make_entry("Whole-Tone", "WT", "02468T"),
        detail::make_entry("Octatonic", "O", "0235689E"),
        detail::make_entry("Major Pentatonic", "P", "02479"),
        detail::make_entry("Augmented", "A", "03478E"),
    };
    return f;
}

/// The six scales that dominate common practice: the reference registry
/// minus the augmented scale. Default pool for the viable-set statistics.
inline ScaleFamily common_scale_pool(int edo = 12) {
    return reference_scales(edo).without("Augmented");
}

/// Which family members remain consistent with a combination, and the
/// disambiguation gain D_F(X) = log2(|F| / survivors) in bits.
struct SurvivorReport {
    Combination combination;
    std::vector<std::pair<std::string, int>> survivors; // (name, t), family order
    double gain_bits = 0.0;
};

inline SurvivorReport family_survivors(const ScaleFamily& family, const Combination& x) {
    if (family.entries.empty()) throw DomainError("scale family is empty");
    SurvivorReport report{x, {}, 0.0};
    for (const auto& entry : family.entries) {
        int t = tonal_ambiguity(entry.set, x);
        if (t >= 1) report.survivors.emplace_back(entry.name, t);
    }
    if (report.survivors.empty())
        throw AbsentCombinationError("combination occurs in no member of the family");
    report.gain_bits = detail::log2_int(static_cast<int>(family.size())) -
                       detail::log2_int(static_cast<int>(report.survivors.size()));
    return report;
}

/// How the per-combination survivor counts are averaged.
enum class CensusWeighting {
    DistinctClasses,  // each occurring combination Tn-class counts once
    InstanceWeighted, // classes weighted by orbit size (labeled subsets of Z_c)
};

/// Average / min / max surviving set count over a combination population.
/// The exact sum and population are kept so reports can print the average
/// at the intended precision.
struct DisambiguationStats {
    long long survivor_sum = 0;
    long long population = 0;
    int min = 0;
    int max = 0;

    double average() const { return static_cast<double>(survivor_sum) / static_cast<double>(population); }
    bool integral() const { return population != 0 && survivor_sum % population == 0; }
};

/// Over the family of all Tn-classes of `set_cardinality`-subsets of Z_c:
/// for each combination Tn-class of `combo_cardinality` occurring in at
/// least one member class, counts the surviving set classes. DistinctClasses
/// weighting averages each occurring combination class once.
inline DisambiguationStats census_disambiguation(int edo, int set_cardinality, int combo_cardinality,
                                                 CensusWeighting weighting = CensusWeighting::DistinctClasses) {
    auto sets = tn_class_census(edo, set_cardinality);
    auto combos = tn_class_census(edo, combo_cardinality);
    DisambiguationStats stats;
    for (const Combination& x : combos) {
        int survivors = 0;
        for (const PitchClassSet& s : sets)
            if (tonal_ambiguity(s, x) >= 1) ++survivors;
        if (survivors == 0) continue;
        long long weight = 1;
        if (weighting == CensusWeighting::InstanceWeighted)
            weight = edo / symmetry_order(x); // orbit size of the class
        stats.survivor_sum += weight * survivors;
        stats.population += weight;
        if (stats.min == 0 || survivors < stats.min) stats.min = survivors;
        if (survivors > stats.max) stats.max = survivors;
    }
    if (stats.population == 0) throw DomainError("no combination class occurs in any member set");
    return stats;
}

/// Same statistic over a supplied small family (each occurring combination
/// Tn-class counted once, matching the census convention).
inline DisambiguationStats common_pool_profile(const ScaleFamily& pool, int combo_cardinality) {
    if (pool.entries.empty()) throw DomainError("scale family is empty");
    DisambiguationStats stats;
    for (const Combination& x : tn_class_census(pool.edo(), combo_cardinality)) {
        int survivors = 0;
        for (const auto& entry : pool.entries)
            if (tonal_ambiguity(entry.set, x) >= 1) ++survivors;
        if (survivors == 0) continue;
        stats.survivor_sum += survivors;
        stats.population += 1;
        if (stats.min == 0 || survivors < stats.min) stats.min = survivors;
        if (survivors > stats.max) stats.max = survivors;
    }
    if (stats.population == 0) throw DomainError("no combination class occurs in any member set");
    return stats;
}

/// One row of the combination survey: a Tn-class representative, t for each
/// family member (0 = the combination never occurs in that scale), and how
/// many members admit it at all.
struct AppendixRow {
    Combination combination;
    std::vector<int> tonic_counts; // aligned with family entries; 0 = absent
    int possible_sets = 0;
};

/// Every Tn-class of cardinality 1..max_cardinality occurring in at least
/// one family member, ordered by cardinality then lexicographically.
/// Per-scale t values are computed at the class representative, which is
/// safe because t is translation invariant.
inline std::vector<AppendixRow> appendix_table(const ScaleFamily& family, int max_cardinality = 6) {
    if (family.entries.empty()) throw DomainError("scale family is empty");
    int edo = family.edo();
    if (max_cardinality < 1 || max_cardinality > edo)
        throw DomainError("cardinality out of range");
    std::vector<AppendixRow> rows;
    for (int k = 1; k <= max_cardinality; ++k) {
        for (const Combination& rep : tn_class_census(edo, k)) {
            AppendixRow row{rep, {}, 0};
            row.tonic_counts.reserve(family.size());
            for (const auto& entry : family.entries) {
                int t = tonal_ambiguity(entry.set, rep);
                row.tonic_counts.push_back(t);
                if (t >= 1) ++row.possible_sets;
            }
            if (row.possible_sets >= 1) rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Parses the family definition format: an `edo = N` line followed by one
/// `name = setspec` line per scale. Blank lines and `#` comments are
/// ignored. Set specs use the pitch-class set text forms.
inline ScaleFamily parse_family(std::istream& in) {
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };

    ScaleFamily family;
    int edo = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("family file line is not 'name = setspec': " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("family file entry has an empty name");
        if (edo == 0) {
            if (key != "edo")
                throw ParseError("family file must start with an 'edo = N' line");
            try {
                edo = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("invalid edo value: " + value);
            }
            if (edo < 1 || edo > PitchClassSet::max_edo)
                throw ParseError("edo out of range: " + value);
            continue;
        }
        if (key == "edo") throw ParseError("duplicate edo line in family file");
        if (family.find(key)) throw ParseError("duplicate scale name: " + key);
        PitchClassSet set;
        try {
            set = PitchClassSet::parse(value, edo);
        } catch (const Error& e) {
            throw ParseError("scale '" + key + "': " + e.what());
        }
        if (set.empty()) throw ParseError("scale '" + key + "' is empty");
        family.entries.push_back({key, key, set});
    }
    if (edo == 0) throw ParseError("family file is missing the 'edo = N' line");
    if (family.entries.empty()) throw ParseError("family file defines no scales");
    return family;
}

inline ScaleFamily load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open family file: " + path);
    return parse_family(in);
}

} // namespace tonal
