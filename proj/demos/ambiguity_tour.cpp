// Quick tour of the library: how much tonal uncertainty do combinations of
// notes remove, and how ambiguous are whole scales?

#include <cstdio>

#include <tonal/tonal.hpp>

int main() {
    auto major = tonal::PitchClassSet::parse("024579E");
    auto pentatonic = tonal::PitchClassSet::parse("02479");

    // A single interval can be worth very different amounts of information.
    for (const char* dyad : {"05", "01", "06"}) {
        auto x = tonal::PitchClassSet::parse(dyad);
        auto info = tonal::self_information(major, x);
        std::printf("dyad %s in the major scale: %d candidate tonics, %.2f bits\n",
                    dyad, static_cast<int>(info.tonic_count), info.bits);
    }

    // Trichords that pin down the transposition by themselves.
    std::printf("diagnostic trichords of the major scale:");
    for (const auto& cls : tonal::diagnostic_combinations(major, 3))
        std::printf(" %s", cls.representative.spelling().c_str());
    std::printf("\n");

    // Set-level ambiguity, and what eight random notes leave unresolved.
    for (const auto* s : {&major, &pentatonic}) {
        auto report = tonal::tai(*s);
        auto after = tonal::expected_info_after_draws(*s, tonal::default_draw_length());
        std::printf("set %-8s TAI = %.2f, after 8 draws ~ %.2f tonics\n",
                    s->spelling().c_str(), report.tai, after.tonic_count);
    }

    // Which common scale does an exotic tetrachord point to?
    auto x = tonal::PitchClassSet::parse("0167");
    auto survivors = tonal::family_survivors(tonal::reference_scales(), x);
    std::printf("0167 survives only in:");
    for (const auto& [name, t] : survivors.survivors) std::printf(" %s (t=%d)", name.c_str(), t);
    std::printf("  gain %.2f bits\n", survivors.gain_bits);
    return 0;
}
