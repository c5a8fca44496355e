// Command-line front end: per-combination measures, set-level ambiguity
// reports, survey/statistics tables, and convergence-curve datasets in
// csv, json or markdown. Output is byte-reproducible across runs.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <tonal/tonal.hpp>

namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Tabular document model shared by the three output formats.

struct Cell {
    std::string text;
    std::optional<double> raw;       // full-precision value behind a rounded text
    std::optional<long long> ivalue; // exact integer cells
};

Cell text_cell(std::string s) { return {std::move(s), std::nullopt, std::nullopt}; }
Cell absent_cell() { return text_cell("--"); }
Cell int_cell(long long v) { return {std::to_string(v), std::nullopt, v}; }
Cell num_cell(double v, int decimals) { return {tonal::fixed(v, decimals), v, std::nullopt}; }

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::vector<Cell>& add_row() {
        rows.emplace_back();
        rows.back().reserve(columns.size());
        return rows.back();
    }
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void render_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << csv_escape(row[i].text);
        out << '\n';
    }
}

void render_markdown(const Table& table, std::ostream& out) {
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        width[i] = table.columns[i].size();
    for (const auto& row : table.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].text.size());

    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    out << '|';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << ' ' << pad(table.columns[i], width[i]) << " |";
    out << "\n|";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << ' ' << std::string(width[i], '-') << " |";
    out << '\n';
    for (const auto& row : table.rows) {
        out << '|';
        for (std::size_t i = 0; i < row.size(); ++i)
            out << ' ' << pad(row[i].text, width[i]) << " |";
        out << '\n';
    }
}

void render_json(const Table& table, std::ostream& out) {
    ordered_json doc;
    doc["table"] = table.name;
    doc["columns"] = table.columns;
    doc["rows"] = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json jrow;
        ordered_json raw;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            if (cell.ivalue)
                jrow[table.columns[i]] = *cell.ivalue;
            else
                jrow[table.columns[i]] = cell.text;
            if (cell.raw) raw[table.columns[i]] = *cell.raw;
        }
        if (!raw.empty()) jrow["raw"] = raw;
        doc["rows"].push_back(std::move(jrow));
    }
    out << doc.dump(2) << '\n';
}

void render(const Table& table, const std::string& format, std::ostream& out = std::cout) {
    if (format == "csv") render_csv(table, out);
    else if (format == "markdown") render_markdown(table, out);
    else render_json(table, out);
}

// ---------------------------------------------------------------------------
// Set-spec handling.

const std::map<std::string, const char*>& scale_aliases() {
    static const std::map<std::string, const char*> aliases = {
        {"major", "024579E"},          {"melodic-minor", "023579E"},
        {"harmonic-minor", "023578E"}, {"whole-tone", "02468T"},
        {"octatonic", "0235689E"},     {"pentatonic", "02479"},
        {"augmented", "03478E"},
    };
    return aliases;
}

tonal::PitchClassSet resolve_set(const std::string& spec, int edo) {
    auto it = scale_aliases().find(spec);
    if (it != scale_aliases().end()) {
        if (edo != 12)
            throw tonal::ParseError("scale alias '" + spec + "' is only defined for 12-EDO");
        return tonal::PitchClassSet::parse(it->second, 12);
    }
    return tonal::PitchClassSet::parse(spec, edo);
}

// ---------------------------------------------------------------------------
// interpretations: surviving transpositions for one combination.

int run_interpretations(const std::string& set_spec, const std::string& combo_spec,
                        int edo, const std::string& format) {
    auto s = resolve_set(set_spec, edo);
    auto x = tonal::PitchClassSet::parse(combo_spec, edo);
    auto taus = tonal::candidate_transpositions(s, x);
    int t = static_cast<int>(taus.size());

    Table table;
    table.name = "interpretations";
    table.columns = {"set", "combination", "t", "bits", "tonics", "transpositions"};
    auto& row = table.add_row();
    row.push_back(text_cell(s.spelling()));
    row.push_back(text_cell(x.spelling()));
    row.push_back(int_cell(t));
    if (t > 0) {
        auto info = tonal::self_information(s, x);
        row.push_back(num_cell(info.bits, 2));
        row.push_back(num_cell(info.tonic_count, 2));
        std::string list;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            if (i) list += ' ';
            list += std::to_string(taus[i]);
        }
        row.push_back(text_cell(list));
    } else {
        row.push_back(absent_cell());
        row.push_back(absent_cell());
        row.push_back(text_cell(""));
    }
    render(table, format);
    return t == 0 ? 3 : 0;
}

// ---------------------------------------------------------------------------
// tai: per-set ambiguity report with the full cardinality profile.

int run_tai(const std::vector<std::string>& set_specs, int edo, int draws,
            const std::string& format) {
    Table table;
    table.name = "tai";
    table.columns = {"set", "k", "combinations", "bits", "tonics",
                     "nmi", "na", "draws", "draws_bits", "draws_tonics"};
    for (const auto& spec : set_specs) {
        auto s = resolve_set(spec, edo);
        auto report = tonal::tai(s);
        for (const auto& level : report.profile.rows) {
            auto& row = table.add_row();
            row.push_back(text_cell(s.spelling()));
            row.push_back(int_cell(level.cardinality));
            row.push_back(int_cell(static_cast<long long>(level.combination_count)));
            row.push_back(num_cell(level.expected_bits, 2));
            row.push_back(num_cell(level.expected_tonics, 2));
            for (int i = 0; i < 5; ++i) row.push_back(text_cell(""));
        }
        auto after = tonal::expected_info_after_draws(s, draws);
        auto& row = table.add_row();
        row.push_back(text_cell(s.spelling()));
        row.push_back(text_cell("set"));
        row.push_back(int_cell((1LL << s.size()) - 1));
        row.push_back(num_cell(report.expected_bits, 2));
        row.push_back(num_cell(report.tai, 2));
        row.push_back(num_cell(report.nmi, 4));
        row.push_back(num_cell(report.na, 4));
        row.push_back(int_cell(draws));
        row.push_back(num_cell(after.bits, 2));
        row.push_back(num_cell(after.tonic_count, 2));
    }
    render(table, format);
    return 0;
}

// ---------------------------------------------------------------------------
// tables: the survey and statistics tables, regenerated from scratch.

std::string scale_header(const tonal::ScaleFamily::Entry& e) {
    return e.name + " (" + e.set.spelling() + ")";
}

Table build_dyads_table() {
    auto major = tonal::PitchClassSet::parse("024579E");
    auto exp = tonal::expected_info_at_cardinality(major, 2);
    Table table;
    table.name = "t1";
    table.columns = {"combination", "t", "bits", "instances", "fraction"};
    for (const auto& cls : exp.classes) {
        auto& row = table.add_row();
        row.push_back(text_cell(cls.cls.representative.spelling()));
        row.push_back(int_cell(cls.tonic_count));
        row.push_back(num_cell(cls.bits, 2));
        row.push_back(int_cell(cls.cls.multiplicity));
        row.push_back(text_cell(tonal::fraction(cls.cls.multiplicity,
                                                static_cast<long long>(exp.combination_count))));
    }
    return table;
}

Table build_trichords_table() {
    auto major = tonal::PitchClassSet::parse("024579E");
    auto exp = tonal::expected_info_at_cardinality(major, 3);
    std::map<std::uint64_t, const tonal::ClassBreakdown*> by_mask;
    for (const auto& cls : exp.classes) by_mask[cls.cls.representative.mask()] = &cls;

    Table table;
    table.name = "t2";
    table.columns = {"combination", "bits", "probability", "fraction", "instances"};
    long long total = static_cast<long long>(exp.combination_count);
    for (const auto& rep : tonal::tn_class_census(12, 3)) {
        auto& row = table.add_row();
        row.push_back(text_cell(rep.spelling()));
        auto it = by_mask.find(rep.mask());
        long long instances = it != by_mask.end() ? it->second->cls.multiplicity : 0;
        if (it != by_mask.end())
            row.push_back(num_cell(it->second->bits, 2));
        else
            row.push_back(absent_cell());
        row.push_back(num_cell(static_cast<double>(instances) / static_cast<double>(total), 3));
        row.push_back(text_cell(tonal::fraction(instances, total)));
        row.push_back(int_cell(instances));
    }
    return table;
}

Table build_interpretation_table(const char* name, const std::vector<std::string>& names) {
    auto family = tonal::reference_scales();
    std::vector<const tonal::ScaleFamily::Entry*> entries;
    for (const auto& n : names) entries.push_back(family.find(n));

    std::vector<tonal::SetReport> reports;
    int max_k = 0;
    for (const auto* e : entries) {
        reports.push_back(tonal::tai(e->set));
        max_k = std::max(max_k, e->set.size());
    }

    Table table;
    table.name = name;
    table.columns = {"k"};
    for (const auto* e : entries) table.columns.push_back(scale_header(*e));
    for (int k = 1; k <= max_k; ++k) {
        auto& row = table.add_row();
        row.push_back(int_cell(k));
        for (const auto& report : reports) {
            if (k <= report.set.size())
                row.push_back(num_cell(report.profile.rows[static_cast<std::size_t>(k) - 1].expected_tonics, 2));
            else
                row.push_back(absent_cell());
        }
    }
    auto& row = table.add_row();
    row.push_back(text_cell("set"));
    for (const auto& report : reports) row.push_back(num_cell(report.tai, 2));
    return table;
}

Table build_ambiguity_ranking() {
    auto family = tonal::reference_scales();
    std::vector<std::pair<double, const tonal::ScaleFamily::Entry*>> ranked;
    for (const auto& e : family.entries)
        ranked.emplace_back(tonal::tai(e.set).tai, &e);
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    Table table;
    table.name = "t5";
    table.columns = {"set", "spelling", "tai"};
    for (const auto& [value, entry] : ranked) {
        auto& row = table.add_row();
        row.push_back(text_cell(entry->name));
        row.push_back(text_cell(entry->set.spelling()));
        row.push_back(num_cell(value, 2));
    }
    return table;
}

Cell average_cell(const tonal::DisambiguationStats& stats) {
    // Whole-number averages print without a decimal point, as in "66 (66)".
    if (stats.integral()) return int_cell(stats.survivor_sum / stats.population);
    return num_cell(stats.average(), 1);
}

Table build_census_table(tonal::CensusWeighting weighting) {
    Table table;
    table.name = "t6";
    table.columns = {"cardinality", "average", "min", "max"};
    for (int k = 1; k <= 6; ++k) {
        auto stats = tonal::census_disambiguation(12, 7, k, weighting);
        auto& row = table.add_row();
        row.push_back(int_cell(k));
        row.push_back(average_cell(stats));
        row.push_back(int_cell(stats.min));
        row.push_back(int_cell(stats.max));
    }
    return table;
}

Table build_pool_table(const tonal::ScaleFamily& pool) {
    Table table;
    table.name = "t7";
    table.columns = {"cardinality", "average", "min", "max"};
    for (int k = 1; k <= 6; ++k) {
        auto stats = tonal::common_pool_profile(pool, k);
        auto& row = table.add_row();
        row.push_back(int_cell(k));
        row.push_back(average_cell(stats));
        row.push_back(int_cell(stats.min));
        row.push_back(int_cell(stats.max));
    }
    return table;
}

Table build_appendix_table(const tonal::ScaleFamily& family) {
    Table table;
    table.name = "appendix";
    table.columns = {"combination"};
    for (const auto& e : family.entries) table.columns.push_back(e.label);
    table.columns.push_back("possible_sets");
    for (const auto& row_data : tonal::appendix_table(family)) {
        auto& row = table.add_row();
        row.push_back(text_cell(row_data.combination.spelling()));
        for (int t : row_data.tonic_counts)
            row.push_back(t >= 1 ? int_cell(t) : absent_cell());
        row.push_back(int_cell(row_data.possible_sets));
    }
    return table;
}

int run_tables(const std::string& which, const std::string& format, bool instance_weighted,
               const std::string& family_path) {
    if (instance_weighted && which != "t6")
        throw tonal::ParseError("--instance-weighted applies only to t6");
    if (!family_path.empty() && which != "t7" && which != "appendix")
        throw tonal::ParseError("--family applies only to t7 and appendix");

    Table table;
    if (which == "t1") table = build_dyads_table();
    else if (which == "t2") table = build_trichords_table();
    else if (which == "t3")
        table = build_interpretation_table(
            "t3", {"Major", "Major Pentatonic", "Asc. Melodic Minor", "Harmonic Minor"});
    else if (which == "t4")
        table = build_interpretation_table("t4", {"Whole-Tone", "Octatonic", "Augmented"});
    else if (which == "t5") table = build_ambiguity_ranking();
    else if (which == "t6")
        table = build_census_table(instance_weighted ? tonal::CensusWeighting::InstanceWeighted
                                                     : tonal::CensusWeighting::DistinctClasses);
    else if (which == "t7")
        table = build_pool_table(family_path.empty() ? tonal::common_scale_pool()
                                                     : tonal::load_family(family_path));
    else
        table = build_appendix_table(family_path.empty() ? tonal::reference_scales()
                                                         : tonal::load_family(family_path));
    render(table, format);
    return 0;
}

// ---------------------------------------------------------------------------
// curve: convergence-curve datasets, optionally with an AUC summary column.

int run_curve(const std::vector<std::string>& set_specs, int all_tnclasses, int edo, int nmax,
              bool with_auc, const std::string& baseline_name, std::pair<int, int> auc_range,
              bool range_given, const std::string& format) {
    std::vector<std::pair<std::string, tonal::PitchClassSet>> sets;
    if (all_tnclasses > 0) {
        if (!set_specs.empty())
            throw tonal::ParseError("pass either set specs or --all-tnclasses, not both");
        for (const auto& rep : tonal::tn_class_census(edo, all_tnclasses))
            sets.emplace_back(rep.spelling(), rep);
    } else {
        if (set_specs.empty()) throw tonal::ParseError("no sets given");
        for (const auto& spec : set_specs) {
            auto s = resolve_set(spec, edo);
            sets.emplace_back(s.spelling(), s);
        }
    }

    tonal::AucBaseline baseline = tonal::AucBaseline::Asymptote;
    if (baseline_name == "unity") baseline = tonal::AucBaseline::Unity;
    else if (baseline_name == "zero") baseline = tonal::AucBaseline::Zero;
    if (!range_given) auc_range = {1, nmax};

    Table table;
    table.name = "curve";
    table.columns = {"set", "n", "bits", "tonics"};
    if (with_auc) table.columns.push_back("auc");
    for (const auto& [label, s] : sets) {
        auto curve = tonal::convergence_curve(s, nmax);
        double auc = with_auc
                         ? tonal::area_under_curve(curve, baseline, auc_range.first, auc_range.second)
                         : 0.0;
        for (const auto& point : curve.points) {
            auto& row = table.add_row();
            row.push_back(text_cell(label));
            row.push_back(int_cell(point.draws));
            row.push_back(num_cell(point.bits, 6));
            row.push_back(num_cell(point.tonic_count, 6));
            if (with_auc) row.push_back(num_cell(auc, 6));
        }
    }
    render(table, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tonal-ambiguity measures for pitch-class sets in any EDO"};
    app.require_subcommand(1);

    auto add_format = [](CLI::App* cmd, std::string& format) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"csv", "json", "markdown"}))
            ->capture_default_str();
    };

    // interpretations
    std::string in_set, in_combo, in_format = "csv";
    int in_edo = 12;
    auto* interp = app.add_subcommand(
        "interpretations", "Surviving transpositions and information for one combination");
    interp->add_option("set", in_set, "Context set (spec or 12-EDO alias)")->required();
    interp->add_option("combination", in_combo, "Observed pitch classes")->required();
    interp->add_option("--edo", in_edo, "Octave divisions")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    add_format(interp, in_format);

    // tai
    std::vector<std::string> tai_sets;
    std::string tai_format = "csv";
    int tai_edo = 12, tai_draws = tonal::default_draw_length();
    auto* tai_cmd =
        app.add_subcommand("tai", "Set-level ambiguity report with cardinality profile");
    tai_cmd->add_option("sets", tai_sets, "One or more set specs")->required();
    tai_cmd->add_option("--edo", tai_edo, "Octave divisions")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    tai_cmd->add_option("--draws", tai_draws, "Melody length for the draws model")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_format(tai_cmd, tai_format);

    // tables
    std::string tables_which, tables_format = "csv", tables_family;
    bool tables_weighted = false;
    auto* tables_cmd = app.add_subcommand("tables", "Regenerate a survey/statistics table");
    tables_cmd->add_option("which", tables_which, "Table selector")
        ->required()
        ->check(CLI::IsMember({"t1", "t2", "t3", "t4", "t5", "t6", "t7", "appendix"}));
    tables_cmd->add_flag("--instance-weighted", tables_weighted,
                         "Weight census combination classes by orbit size (t6)");
    tables_cmd->add_option("--family", tables_family, "Custom family definition file");
    add_format(tables_cmd, tables_format);

    // curve
    std::vector<std::string> curve_sets;
    std::string curve_format = "csv", curve_baseline = "asymptote";
    int curve_edo = 12, curve_nmax = 32, curve_classes = 0;
    bool curve_auc = false, curve_range_given = false;
    std::pair<int, int> curve_range{1, 32};
    auto* curve_cmd = app.add_subcommand("curve", "Convergence curves t_n(S) for n = 1..nmax");
    curve_cmd->add_option("sets", curve_sets, "Set specs");
    curve_cmd->add_option("--all-tnclasses", curve_classes,
                          "Sweep every Tn-class of this cardinality");
    curve_cmd->add_option("--nmax", curve_nmax, "Largest draw count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    curve_cmd->add_flag("--auc", curve_auc, "Append the area-under-curve column");
    curve_cmd->add_option("--auc-baseline", curve_baseline, "Baseline for the AUC")
        ->check(CLI::IsMember({"asymptote", "unity", "zero"}))
        ->capture_default_str();
    auto* range_opt =
        curve_cmd->add_option("--auc-range", curve_range, "Integration range (two draw counts)");
    curve_cmd->add_option("--edo", curve_edo, "Octave divisions")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    add_format(curve_cmd, curve_format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*interp) return run_interpretations(in_set, in_combo, in_edo, in_format);
        if (*tai_cmd) return run_tai(tai_sets, tai_edo, tai_draws, tai_format);
        if (*tables_cmd)
            return run_tables(tables_which, tables_format, tables_weighted, tables_family);
        curve_range_given = range_opt->count() > 0;
        return run_curve(curve_sets, curve_classes, curve_edo, curve_nmax, curve_auc,
                         curve_baseline, curve_range, curve_range_given, curve_format);
    } catch (const tonal::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const tonal::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
