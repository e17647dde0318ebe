#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "report.hpp"

using namespace slet;
using namespace slet::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "slet");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("slet_test_" + name);
}

}  // namespace

TEST_CASE("ranges") {
    CHECK(parse_range("3") == std::vector<int>{3});
    CHECK(parse_range("0:2") == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(parse_range("2:1"), Error);
    CHECK_THROWS_AS(parse_range("a"), Error);
}

TEST_CASE("exit codes by error kind") {
    CHECK(exit_code_for(ErrorKind::invalid_input) == 2);
    CHECK(exit_code_for(ErrorKind::domain) == 2);
    CHECK(exit_code_for(ErrorKind::convergence) == 3);
    CHECK(exit_code_for(ErrorKind::bracketing) == 3);
    CHECK(exit_code_for(ErrorKind::supercritical_coupling) == 4);
    CHECK(exit_code_for(ErrorKind::unphysical_coupling) == 4);
}

TEST_CASE("solve a Cornell ground state") {
    const auto r = invoke({"solve", "--potential", "cornell:alpha=0.25,b=0.18", "--m1", "1.45", "--m2", "1.45",
                           "--n", "0", "--l", "0", "--method", "slet", "--format", "csv"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == kCsvHeader);
    CHECK(row.find(",slet,0.49") != std::string::npos);
    CHECK(row.ends_with(",ok"));
}

TEST_CASE("CSV output is bit-stable") {
    const std::vector<std::string> args{"solve", "--potential", "oscillator:k=1", "--m1", "1.31", "--m2", "1.31",
                                        "--n-range", "0:2", "--l-range", "0:1", "--format", "csv", "--jobs", "4"};
    const auto a = invoke(args);
    const auto b = invoke(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    // header plus six rows ordered by (n, l)
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 7);
    CHECK(a.out.find(",0,1,slet") < a.out.find(",1,0,slet"));
}

TEST_CASE("JSON output round-trips") {
    const auto r = invoke({"breakdown", "--potential", "cornell:alpha=0.25,b=0.18", "--m1", "1.45", "--m2", "1.45",
                           "--n", "1", "--l", "2", "--format", "json"});
    CHECK(r.code == 0);
    const auto parsed = nlohmann::ordered_json::parse(r.out);
    CHECK(parsed.dump(2) + "\n" == r.out);
    const auto& bd = parsed["records"][0]["breakdown"];
    CHECK(bd.contains("alpha2"));
    CHECK(bd["eps"].size() == 4);
    CHECK(bd["delta"].size() == 6);
}

TEST_CASE("invalid input and unphysical regimes") {
    CHECK(invoke({"solve", "--potential", "cornell:alpha=", "--m1", "1", "--m2", "1"}).code == 2);
    CHECK(invoke({"solve", "--potential", "oscillator:k=1", "--m1", "-1", "--m2", "1"}).code == 2);
    CHECK(invoke({"solve", "--potential", "oscillator:k=1", "--m1", "1", "--m2", "1", "--method", "magic"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    const auto r = invoke({"solve", "--potential", "coulomb:alpha=3.0", "--m1", "1", "--m2", "1", "--n", "0", "--l",
                           "0", "--method", "oracle"});
    CHECK(r.code == 4);
    CHECK(r.out.find("supercritical_coupling") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override it") {
    const auto path = temp_file("config.ini");
    {
        std::ofstream f(path);
        f << "potential=oscillator:k=1\nm1=1.31\nm2=1.31\nn=2\nformat=csv\n";
    }
    const auto r = invoke({"solve", "--config", path.string(), "--n", "0"});
    std::filesystem::remove(path);
    CHECK(r.code == 0);
    CHECK(r.out.find("oscillator:k=1,1.31,1.31,0,0,slet,1.6397") != std::string::npos);
}

TEST_CASE("table 1 reproduces and writes to a file") {
    const auto path = temp_file("table1.json");
    const auto r = invoke({"table", "1", "--format", "json", "--out", path.string()});
    CHECK(r.code == 0);
    std::ifstream f(path);
    const auto j = nlohmann::ordered_json::parse(f);
    std::filesystem::remove(path);
    CHECK(j["pass"] == true);
    CHECK(j["cells"].size() == 6);
}

TEST_CASE("closed-form method needs an S-wave Coulomb state") {
    CHECK(invoke({"solve", "--potential", "coulomb:alpha=0.25", "--m1", "1.45", "--m2", "1.45", "--n-range", "0:5",
                  "--method", "closed-form"})
              .code == 0);
    CHECK(invoke({"solve", "--potential", "cornell:alpha=0.25,b=0.18", "--m1", "1.45", "--m2", "1.45", "--method",
                  "closed-form"})
              .code == 2);
}

TEST_CASE("compare pairs both methods and attaches published cells") {
    const auto r = invoke({"compare", "--potential", "cornell:alpha=0.25,b=0.18", "--m1", "1.45", "--m2", "1.45",
                           "--n", "0", "--l", "1", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    const auto& row = j["rows"][0];
    CHECK(std::abs(row["difference_GeV"].get<double>()) <= 2e-2);
    CHECK(row["published"]["slet"].get<double>() == doctest::Approx(0.8342));
    CHECK(j["summary"]["compared"] == 1);
}
