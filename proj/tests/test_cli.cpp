// End-to-end checks of the command-line tool: exit codes, determinism,
// formats and a few spot values. Each case spawns the real binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string command = std::string("'") + TONAL_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else {
            cell += ch;
        }
    }
    cells.push_back(cell);
    return cells;
}

} // namespace

TEST_CASE("exit codes are machine checkable") {
    CHECK(run_cli("tai 024579E").exit_code == 0);
    CHECK(run_cli("--help").exit_code == 0);

    CHECK(run_cli("").exit_code == 2);                       // missing subcommand
    CHECK(run_cli("tables t9").exit_code == 2);              // unknown selector
    CHECK(run_cli("interpretations 024579E").exit_code == 2); // missing argument
    CHECK(run_cli("tai 0,3,13").exit_code == 2);             // set spec out of range
    CHECK(run_cli("tai 024579E --nonsense").exit_code == 2); // unknown flag
    CHECK(run_cli("tables t1 --family nowhere.txt").exit_code == 2);
    CHECK(run_cli("curve 024579E --nmax 0").exit_code == 2); // rejected by validation

    // domain condition: combination absent from every transposition
    auto absent = run_cli("interpretations 024579E 012");
    CHECK(absent.exit_code == 3);
    CHECK(absent.output.find("012,0,--,--,") != std::string::npos);

    // range outside the tabulated curve
    CHECK(run_cli("curve 024579E --nmax 8 --auc --auc-range 1 32").exit_code == 3);
}

TEST_CASE("interpretations reports survivors") {
    auto result = run_cli("interpretations 024579E 05");
    CHECK(result.exit_code == 0);
    auto rows = lines_of(result.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "set,combination,t,bits,tonics,transpositions");
    CHECK(rows[1] == "024579E,05,6,1.00,6.00,0 1 3 5 8 10");

    auto pent = run_cli("interpretations 02479 0");
    CHECK(split_csv(lines_of(pent.output)[1])[2] == "5");

    auto tritone = run_cli("interpretations 024579E 06");
    CHECK(split_csv(lines_of(tritone.output)[1])[2] == "2");
    CHECK(split_csv(lines_of(tritone.output)[1])[5] == "1 7");
}

TEST_CASE("tai report carries profile and draws columns") {
    auto result = run_cli("tai 024579E --format csv");
    REQUIRE(result.exit_code == 0);
    auto rows = lines_of(result.output);
    REQUIRE(rows.size() == 9); // header + k=1..7 + set row
    CHECK(rows[0] == "set,k,combinations,bits,tonics,nmi,na,draws,draws_bits,draws_tonics");
    CHECK(split_csv(rows[2]) ==
          std::vector<std::string>{"024579E", "2", "21", "1.54", "4.12", "", "", "", "", ""});
    auto set_row = split_csv(rows[8]);
    CHECK(set_row[1] == "set");
    CHECK(set_row[2] == "127");
    CHECK(set_row[3] == "2.31"); // E_S[I]
    CHECK(set_row[4] == "2.41"); // TAI
    CHECK(set_row[7] == "8");    // default draw length
    CHECK(set_row[9] == "1.56"); // surviving tonics after eight draws

    auto custom = run_cli("tai 02468T --draws 3");
    auto wt_rows = lines_of(custom.output);
    auto wt_set = split_csv(wt_rows.back());
    CHECK(wt_set[4] == "6.00");
    CHECK(wt_set[7] == "3");
    CHECK(wt_set[9] == "6.00");

    // aliases resolve to the same spelling
    CHECK(run_cli("tai major").output == run_cli("tai 024579E").output);
    CHECK(run_cli("tai harmonic-minor").output == run_cli("tai 023578E").output);
}

TEST_CASE("multiple sets in one report") {
    auto result = run_cli("tai 024579E 02479 02468T");
    auto rows = lines_of(result.output);
    CHECK(rows.size() == 1 + 8 + 6 + 7); // header + (7+1) + (5+1) + (6+1)
}

TEST_CASE("byte-identical output across runs") {
    for (const char* args : {"tables appendix --format csv", "tables t6 --format json",
                             "tai 024579E 0235689E --format markdown",
                             "curve 02479 --nmax 12 --auc --format csv"}) {
        auto first = run_cli(args);
        auto second = run_cli(args);
        CHECK(first.exit_code == 0);
        CHECK(first.output == second.output);
        CHECK(!first.output.empty());
    }
}

TEST_CASE("csv numbers re-render identically") {
    auto result = run_cli("curve 024579E 0235689E --nmax 16 --auc --format csv");
    auto rows = lines_of(result.output);
    REQUIRE(rows.size() == 1 + 32);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto cells = split_csv(rows[i]);
        REQUIRE(cells.size() == 5);
        for (std::size_t col = 2; col < 5; ++col) {
            double value = std::strtod(cells[col].c_str(), nullptr);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", value);
            CHECK(cells[col] == buf);
        }
    }
}

TEST_CASE("table spot checks") {
    auto t1 = run_cli("tables t1");
    auto t1_rows = lines_of(t1.output);
    REQUIRE(t1_rows.size() == 7);
    CHECK(t1_rows[0] == "combination,t,bits,instances,fraction");
    CHECK(t1_rows[1] == "01,2,2.58,2,2/21");
    CHECK(t1_rows[5] == "05,6,1.00,6,6/21");
    CHECK(t1_rows[6] == "06,2,2.58,1,1/21");

    auto t2 = run_cli("tables t2");
    auto t2_rows = lines_of(t2.output);
    REQUIRE(t2_rows.size() == 20); // 19 trichord classes
    CHECK(t2_rows[1] == "012,--,0.000,0/35,0");
    CHECK(t2_rows[5] == "016,3.58,0.029,1/35,1");
    CHECK(t2_rows[10] == "027,1.26,0.143,5/35,5");

    auto t5 = run_cli("tables t5");
    auto t5_rows = lines_of(t5.output);
    REQUIRE(t5_rows.size() == 8);
    CHECK(split_csv(t5_rows[1])[0] == "Harmonic Minor");
    CHECK(split_csv(t5_rows[1])[2] == "1.87");
    CHECK(split_csv(t5_rows[7])[0] == "Whole-Tone");
    CHECK(split_csv(t5_rows[7])[2] == "6.00");

    auto t7 = run_cli("tables t7");
    auto t7_rows = lines_of(t7.output);
    REQUIRE(t7_rows.size() == 7);
    CHECK(t7_rows[1] == "1,6,6,6");
    CHECK(t7_rows[2] == "2,5.2,4,6");
    CHECK(t7_rows[6] == "6,1.3,1,2");

    auto appendix = run_cli("tables appendix");
    auto app_rows = lines_of(appendix.output);
    REQUIRE(app_rows.size() == 123);
    CHECK(app_rows[0] == "combination,M,mm,hm,WT,O,P,A,possible_sets");
    CHECK(app_rows[1] == "0,7,7,7,6,8,5,6,7");
    CHECK(app_rows[122] == "02468T,--,--,--,6,--,--,--,1");

    // census table under both averaging conventions
    auto t6 = run_cli("tables t6");
    CHECK(lines_of(t6.output)[5] == "5,19.3,13,21");
    auto t6w = run_cli("tables t6 --instance-weighted");
    CHECK(lines_of(t6w.output)[3] == "3,63.6,39,66");
}

TEST_CASE("curve output and sweeps") {
    auto wt = run_cli("curve 02468T --nmax 16");
    auto rows = lines_of(wt.output);
    REQUIRE(rows.size() == 17);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(split_csv(rows[i])[3] == "6.000000");

    auto sweep = run_cli("curve --all-tnclasses 5 --nmax 4");
    CHECK(lines_of(sweep.output).size() == 1 + 66u * 4);

    auto octatonic = run_cli("curve 0235689E --nmax 32");
    auto last = split_csv(lines_of(octatonic.output).back());
    CHECK(last[3].substr(0, 4) == "4.00");

    CHECK(run_cli("curve 024579E --all-tnclasses 5").exit_code == 2);
    CHECK(run_cli("curve").exit_code == 2);
}

TEST_CASE("json output parses and carries raw precision") {
    auto result = run_cli("tai 024579E --format json");
    REQUIRE(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["table"] == "tai");
    REQUIRE(doc["rows"].size() == 8);
    auto set_row = doc["rows"][7];
    CHECK(set_row["k"] == "set");
    CHECK(set_row["tonics"] == "2.41");
    double raw = set_row["raw"]["tonics"].get<double>();
    CHECK(raw > 2.4133226);
    CHECK(raw < 2.4133227);

    auto json_appendix = run_cli("tables appendix --format json");
    auto app = nlohmann::json::parse(json_appendix.output);
    CHECK(app["rows"].size() == 122);
}

TEST_CASE("markdown tables are well formed") {
    auto result = run_cli("tables t3 --format markdown");
    auto rows = lines_of(result.output);
    REQUIRE(rows.size() == 2 + 8); // header, separator, k=1..7, set row
    CHECK(rows[0].find("| k") == 0);
    CHECK(rows[0].find("Major (024579E)") != std::string::npos);
    CHECK(rows.back().find("set") != std::string::npos);
    CHECK(rows.back().find("2.41") != std::string::npos);
    for (const auto& line : rows) {
        CHECK(line.front() == '|');
        CHECK(line.back() == '|');
    }
    // pentatonic column runs out after k = 5
    CHECK(rows[7].find("--") != std::string::npos);
}

TEST_CASE("custom families flow through tables") {
    std::string path = std::string(TONAL_CLI_PATH) + ".family.txt";
    {
        std::ofstream out(path);
        out << "edo = 12\n"
            << "Ionian = 024579E\n"
            << "Blues = 03567T\n";
    }
    auto appendix = run_cli("tables appendix --family '" + path + "'");
    REQUIRE(appendix.exit_code == 0);
    auto rows = lines_of(appendix.output);
    CHECK(rows[0] == "combination,Ionian,Blues,possible_sets");
    CHECK(rows.size() > 10);

    auto pool = run_cli("tables t7 --family '" + path + "'");
    CHECK(pool.exit_code == 0);
    CHECK(lines_of(pool.output)[1] == "1,2,2,2");
    std::remove(path.c_str());
}
