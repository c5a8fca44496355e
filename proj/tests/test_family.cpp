#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include <tonal/family.hpp>

using Catch::Approx;
using tonal::PitchClassSet;

TEST_CASE("reference scale registry") {
    auto family = tonal::reference_scales();
    REQUIRE(family.size() == 7);
    CHECK(family.edo() == 12);

    CHECK(family.find("Major")->set.spelling() == "024579E");
    CHECK(family.find("Asc. Melodic Minor")->set.spelling() == "023579E");
    CHECK(family.find("Harmonic Minor")->set.spelling() == "023578E");
    CHECK(family.find("Whole-Tone")->set.spelling() == "02468T");
    CHECK(family.find("Octatonic")->set.spelling() == "0235689E");
    CHECK(family.find("Major Pentatonic")->set.spelling() == "02479");
    CHECK(family.find("Augmented")->set.spelling() == "03478E");
    CHECK(family.find("Dorian") == nullptr);

    CHECK_THROWS_AS(tonal::reference_scales(19), tonal::DomainError);

    auto pool = tonal::common_scale_pool();
    CHECK(pool.size() == 6);
    CHECK(pool.find("Augmented") == nullptr);
}

TEST_CASE("family survivors") {
    auto family = tonal::reference_scales();

    auto report = tonal::family_survivors(family, PitchClassSet::parse("0167"));
    REQUIRE(report.survivors.size() == 1);
    CHECK(report.survivors[0].first == "Octatonic");
    CHECK(report.survivors[0].second == 4);
    CHECK(report.gain_bits == Approx(std::log2(7.0)).margin(1e-12));

    auto pool = tonal::common_scale_pool();
    auto hm = tonal::family_survivors(pool, PitchClassSet::parse("0145"));
    REQUIRE(hm.survivors.size() == 1);
    CHECK(hm.survivors[0].first == "Harmonic Minor");

    // a single pitch rules nothing out
    auto single = tonal::family_survivors(family, PitchClassSet::parse("4"));
    CHECK(single.survivors.size() == 7);
    CHECK(single.gain_bits == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(tonal::family_survivors(family, PitchClassSet::parse("012")),
                    tonal::AbsentCombinationError);
}

TEST_CASE("survivor monotonicity under subset growth") {
    auto family = tonal::reference_scales();
    auto smaller = tonal::family_survivors(family, PitchClassSet::parse("025"));
    auto larger = tonal::family_survivors(family, PitchClassSet::parse("0257"));
    std::set<std::string> small_names, large_names;
    for (const auto& [name, t] : smaller.survivors) small_names.insert(name);
    for (const auto& [name, t] : larger.survivors) large_names.insert(name);
    for (const auto& name : large_names) CHECK(small_names.count(name) == 1);
    CHECK(larger.gain_bits >= smaller.gain_bits - 1e-12);
}

TEST_CASE("heptachord census disambiguation") {
    // (sum, population, min, max) for each combination cardinality
    struct Row {
        int k;
        long long sum, population;
        int min, max;
    };
    const Row expected[] = {
        {1, 66, 1, 66, 66},    {2, 396, 6, 66, 66},   {3, 1192, 19, 39, 66},
        {4, 1807, 43, 14, 48}, {5, 1275, 66, 13, 21}, {6, 458, 80, 1, 6},
    };
    for (const auto& row : expected) {
        auto stats = tonal::census_disambiguation(12, 7, row.k);
        CHECK(stats.survivor_sum == row.sum);
        CHECK(stats.population == row.population);
        CHECK(stats.min == row.min);
        CHECK(stats.max == row.max);
    }

    // the orbit-weighted variant shifts the averages where classes are symmetric
    auto weighted = tonal::census_disambiguation(12, 7, 3, tonal::CensusWeighting::InstanceWeighted);
    CHECK(weighted.survivor_sum == 13992);
    CHECK(weighted.population == 220);
    CHECK(weighted.average() == Approx(63.6).margin(1e-9));
    auto weighted6 = tonal::census_disambiguation(12, 7, 6, tonal::CensusWeighting::InstanceWeighted);
    CHECK(weighted6.survivor_sum == 5416);
    CHECK(weighted6.population == 924);
}

TEST_CASE("most diagnostic pentachord still leaves 13 heptachord classes") {
    auto hepta = tonal::tn_class_census(12, 7);
    auto x = PitchClassSet::parse("01369");
    int survivors = 0;
    for (const auto& s : hepta)
        if (tonal::tonal_ambiguity(s, x) >= 1) ++survivors;
    CHECK(survivors == 13);
}

TEST_CASE("common pool profile") {
    auto pool = tonal::common_scale_pool();
    struct Row {
        int k;
        long long sum, population;
        int min, max;
    };
    const Row expected[] = {
        {1, 6, 1, 6, 6},    {2, 31, 6, 4, 6},   {3, 74, 18, 3, 5},
        {4, 102, 35, 1, 5}, {5, 71, 37, 1, 4},  {6, 29, 23, 1, 2},
    };
    for (const auto& row : expected) {
        auto stats = tonal::common_pool_profile(pool, row.k);
        CHECK(stats.survivor_sum == row.sum);
        CHECK(stats.population == row.population);
        CHECK(stats.min == row.min);
        CHECK(stats.max == row.max);
    }
}

TEST_CASE("appendix survey rows") {
    auto family = tonal::reference_scales();
    auto rows = tonal::appendix_table(family);
    REQUIRE(rows.size() == 122);

    auto find = [&](const char* spelling) -> const tonal::AppendixRow* {
        for (const auto& row : rows)
            if (row.combination.spelling() == spelling) return &row;
        return nullptr;
    };

    const auto* first = find("0");
    REQUIRE(first != nullptr);
    CHECK(first->tonic_counts == std::vector<int>{7, 7, 7, 6, 8, 5, 6});
    CHECK(first->possible_sets == 7);
    CHECK(&rows.front() == first);

    const auto* major_third = find("04");
    REQUIRE(major_third != nullptr);
    CHECK(major_third->tonic_counts == std::vector<int>{3, 4, 4, 6, 4, 1, 6});
    CHECK(major_third->possible_sets == 7);

    const auto* whole_tone = find("02468T");
    REQUIRE(whole_tone != nullptr);
    CHECK(whole_tone->tonic_counts == std::vector<int>{0, 0, 0, 6, 0, 0, 0});
    CHECK(whole_tone->possible_sets == 1);
    CHECK(&rows.back() == whole_tone);

    // rows whose combination identifies the scale type outright
    std::set<std::string> unique_rows;
    for (const auto& row : rows)
        if (row.possible_sets == 1) unique_rows.insert(row.combination.spelling());
    CHECK(unique_rows.size() == 30);
    for (const char* spelling : {"0167", "01347", "03478", "02468T"})
        CHECK(unique_rows.count(spelling) == 1);

    // ordering: cardinality first, then lexicographic representative
    for (std::size_t i = 1; i < rows.size(); ++i) {
        int prev = rows[i - 1].combination.size(), cur = rows[i].combination.size();
        CHECK(prev <= cur);
        if (prev == cur)
            CHECK(tonal::lexicographic_less(rows[i - 1].combination, rows[i].combination));
    }
}

TEST_CASE("appendix agrees with per-scale enumeration and the measure") {
    auto family = tonal::reference_scales();
    auto rows = tonal::appendix_table(family);

    // independent route: collect classes by enumerating subsets per scale
    std::set<std::uint64_t> by_enumeration;
    for (const auto& entry : family.entries)
        for (int k = 1; k <= std::min(6, entry.set.size()); ++k)
            for (const auto& x : tonal::subsets_of_cardinality(entry.set, k))
                by_enumeration.insert(tonal::normal_form(x).mask());
    CHECK(by_enumeration.size() == rows.size());

    for (const auto& row : rows) {
        CHECK(by_enumeration.count(row.combination.mask()) == 1);
        int present = 0;
        for (std::size_t i = 0; i < family.entries.size(); ++i) {
            int recomputed = tonal::tonal_ambiguity(family.entries[i].set, row.combination);
            CHECK(recomputed == row.tonic_counts[i]);
            if (recomputed >= 1) ++present;
        }
        CHECK(present == row.possible_sets);
    }
}

TEST_CASE("family definition files") {
    std::istringstream good(
        "# two scales in 19-EDO\n"
        "edo = 19\n"
        "Chain = 0,3,6,9,12,15\n"
        "Cluster = 0,1,2\n");
    auto family = tonal::parse_family(good);
    REQUIRE(family.size() == 2);
    CHECK(family.edo() == 19);
    CHECK(family.find("Chain")->set.size() == 6);
    CHECK(family.find("Cluster")->set.members() == std::vector<int>{0, 1, 2});

    auto rows = tonal::appendix_table(family, 3);
    CHECK(!rows.empty());

    auto fail = [](const char* text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(tonal::parse_family(in), tonal::ParseError);
    };
    fail("Major = 024579E\n");                    // missing edo header
    fail("edo = 12\n");                           // no scales
    fail("edo = 12\nA = 047\nA = 047\n");         // duplicate name
    fail("edo = 12\nedo = 12\nA = 047\n");        // duplicate edo
    fail("edo = 12\nA = 0,3,13\n");               // member out of range
    fail("edo = 12\nA =\n");                      // empty scale
    fail("edo = twelve\nA = 047\n");              // bad edo value
    fail("edo = 12\njust some text\n");           // not a key = value line
}
