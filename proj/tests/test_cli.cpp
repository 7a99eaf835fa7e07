#include "cstre/cli.hpp"
#include "cstre/criteria.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace cstre;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name)
{
    return std::string(CSTRE_TEST_TMPDIR) + "/" + name;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        for (std::string cell; std::getline(fields, cell, ',');) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

// Usage errors: nonzero exit, nothing on stdout, exactly one line on stderr.
void check_usage_error(const std::vector<std::string>& args)
{
    const auto r = run_cli(args);
    INFO(args.front(), " -> ", r.err);
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.out.empty());
    REQUIRE_FALSE(r.err.empty());
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(r.err.find('\n') == r.err.size() - 1);
}

} // namespace

TEST_CASE("threshold prints one csv row")
{
    const auto r = run_cli({"threshold", "--family", "pp-w", "--n", "3", "--criterion", "cstre-inf"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.err.empty());
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"family", "n", "criterion", "q", "x_threshold"});
    REQUIRE(rows[1].size() == 5);
    CHECK(rows[1][0] == "pp-w");
    CHECK(rows[1][1] == "3");
    CHECK(rows[1][2] == "cstre-inf");
    CHECK(rows[1][3].empty());
    CHECK(std::abs(std::stod(rows[1][4]) - 0.3083) <= 5e-4);

    const auto werner = run_cli({"threshold", "--family", "wl-ghz", "--n", "2", "--criterion", "ppt"});
    CHECK(werner.code == cli::kExitOk);
    CHECK(std::abs(std::stod(parse_csv(werner.out)[1][4]) - 1.0 / 3.0) <= 1e-6);

    const auto finite = run_cli({"threshold", "--family", "wl-w", "--n", "3", "--criterion", "ar", "--q", "2.5"});
    CHECK(finite.code == cli::kExitOk);
    const auto row = parse_csv(finite.out)[1];
    CHECK(row[3] == "2.5");
    const double want = threshold(FamilyKind::WernerLikeW, 3, Criterion::ar(2.5)).x_star;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", want);
    CHECK(row[4] == buf);
}

TEST_CASE("threshold honours --tol")
{
    const auto fine = run_cli({"threshold", "--family", "pp-ghz", "--n", "3", "--criterion", "ppt"});
    const auto coarse =
        run_cli({"threshold", "--family", "pp-ghz", "--n", "3", "--criterion", "ppt", "--tol", "1e-3"});
    CHECK(coarse.code == cli::kExitOk);
    const double a = std::stod(parse_csv(fine.out)[1][4]);
    const double b = std::stod(parse_csv(coarse.out)[1][4]);
    CHECK(std::abs(a - 0.3) <= 1e-9);
    CHECK(std::abs(b - 0.3) <= 1e-3);
}

TEST_CASE("threshold usage errors")
{
    check_usage_error({"threshold", "--family", "pp-w", "--n", "2", "--criterion", "cstre-inf"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "9", "--criterion", "cstre-inf"});
    check_usage_error({"threshold", "--family", "pp-x", "--n", "3", "--criterion", "ppt"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "3", "--criterion", "renyi"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "3", "--criterion", "cstre"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "3", "--criterion", "ppt", "--q", "2"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "3", "--criterion", "ar", "--q", "0.5"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "3", "--criterion", "ppt", "--tol", "0"});
    check_usage_error({"threshold", "--family", "pp-w", "--criterion", "ppt"});
    check_usage_error({"threshold", "--family", "pp-w", "--n", "three", "--criterion", "ppt"});
    check_usage_error({"frobnicate"});
    check_usage_error({});
}

TEST_CASE("table files")
{
    const auto path = tmp_path("table1.csv");
    const auto r = run_cli({"table", "--id", "1", "--out", path});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.empty());
    const auto text = slurp(path);
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"n", "vn", "ar", "cstre", "ppt"});
    CHECK(text.find('\r') == std::string::npos);

    // Round trip: every cell equals a fresh threshold rounded the same way.
    const Criterion columns[] = {Criterion::von_neumann(), Criterion::ar_infinity(), Criterion::cstre_infinity(),
                                 Criterion::ppt()};
    for (int n = 3; n <= 6; ++n) {
        const auto& row = rows[n - 2];
        REQUIRE(row.size() == 5);
        CHECK(row[0] == std::to_string(n));
        for (int c = 0; c < 4; ++c) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f",
                          round_half_up(threshold(FamilyKind::PseudopureW, n, columns[c]).x_star, 4));
            CHECK(row[c + 1] == buf);
        }
    }

    const auto ghz_path = tmp_path("pp-ghz.csv");
    CHECK(run_cli({"table", "--id", "pp-ghz", "--out", ghz_path}).code == cli::kExitOk);
    const auto ghz = parse_csv(slurp(ghz_path));
    REQUIRE(ghz.size() == 5);
    CHECK(ghz[0] == std::vector<std::string>{"n", "threshold"});
    CHECK(ghz[3] == std::vector<std::string>{"5", "0.0882"});

    const auto wl_path = tmp_path("table2.csv");
    CHECK(run_cli({"table", "--id", "2", "--out", wl_path}).code == cli::kExitOk);
    const auto wl = parse_csv(slurp(wl_path));
    REQUIRE(wl.size() == 5);
    CHECK(wl[4][0] == "6");
    CHECK(wl[4][3] == "0.0402");
    CHECK(wl[4][4] == "0.0402");

    CHECK(run_cli({"table", "--id", "1", "--out", path}).code == cli::kExitOk);
    CHECK(slurp(path) == text);

    check_usage_error({"table", "--id", "3", "--out", path});
    check_usage_error({"table", "--id", "1", "--out", tmp_path("missing-dir/x.csv")});
    check_usage_error({"table", "--id", "1"});
}

TEST_CASE("curve files")
{
    const auto path = tmp_path("curve.csv");
    const auto r = run_cli({"curve", "--family", "wl-ghz", "--n", "3", "--criterion", "cstre,ar", "--q-min", "1.5",
                            "--q-max", "100", "--q-steps", "5", "--log-spacing", "--out", path});
    CHECK(r.code == cli::kExitOk);
    const auto text = slurp(path);
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == std::vector<std::string>{"criterion", "q", "x_threshold"});
    for (int k = 1; k <= 5; ++k) CHECK(rows[k][0] == "cstre");
    for (int k = 6; k <= 10; ++k) CHECK(rows[k][0] == "ar");
    CHECK(rows[1][1] == "1.5");
    CHECK(rows[5][1] == "100");
    CHECK(std::stod(rows[3][1]) == doctest::Approx(std::sqrt(1.5 * 100.0)).epsilon(1e-9));
    for (int k = 1; k <= 5; ++k) CHECK(std::stod(rows[k][2]) >= std::stod(rows[k + 5][2]));

    CHECK(run_cli({"curve", "--family", "wl-ghz", "--n", "3", "--criterion", "cstre,ar", "--q-min", "1.5", "--q-max",
                   "100", "--q-steps", "5", "--log-spacing", "--out", path})
              .code == cli::kExitOk);
    CHECK(slurp(path) == text);

    const auto single = tmp_path("single.csv");
    CHECK(run_cli({"curve", "--family", "pp-ghz", "--n", "3", "--criterion", "cstre,ar", "--q-steps", "1", "--out",
                   single})
              .code == cli::kExitOk);
    const auto one = parse_csv(slurp(single));
    REQUIRE(one.size() == 3);
    CHECK(one[1][0] == "cstre");
    CHECK(one[2][0] == "ar");

    check_usage_error({"curve", "--family", "wl-ghz", "--n", "3", "--criterion", "ppt", "--out", path});
    check_usage_error({"curve", "--family", "wl-ghz", "--n", "3", "--criterion", "cstre", "--q-min", "1", "--out", path});
    check_usage_error({"curve", "--family", "wl-ghz", "--n", "3", "--criterion", "cstre", "--q-steps", "0", "--out", path});
}

TEST_CASE("eigs prints spectra")
{
    const auto analytic = run_cli(
        {"eigs", "--family", "pp-ghz", "--n", "3", "--x", "0.2", "--q", "1.000001", "--source", "analytic"});
    CHECK(analytic.code == cli::kExitOk);
    const auto rows = parse_csv(analytic.out);
    CHECK(rows[0] == std::vector<std::string>{"eigenvalue", "multiplicity"});
    long total = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double value = std::stod(rows[k][0]);
        const long mult = std::stol(rows[k][1]);
        total += mult;
        if (std::abs(value - 0.2) < 1e-4) {
            CHECK(mult == 1);
        } else {
            CHECK(std::abs(value - 0.8 / 7.0) < 1e-4);
        }
    }
    CHECK(total == 8);

    for (const char* family : {"pp-ghz", "wl-ghz", "wl-w"}) {
        const auto num = parse_csv(
            run_cli({"eigs", "--family", family, "--n", "4", "--x", "0.3", "--q", "3", "--source", "numeric"}).out);
        const auto ana = parse_csv(
            run_cli({"eigs", "--family", family, "--n", "4", "--x", "0.3", "--q", "3", "--source", "analytic"}).out);
        std::vector<double> expanded;
        for (std::size_t k = 1; k < ana.size(); ++k)
            for (long m = 0; m < std::stol(ana[k][1]); ++m) expanded.push_back(std::stod(ana[k][0]));
        REQUIRE(num.size() == 17);
        REQUIRE(expanded.size() == 16);
        for (std::size_t k = 0; k < 16; ++k) {
            CHECK(num[k + 1][1] == "1");
            CHECK(std::abs(std::stod(num[k + 1][0]) - expanded[k]) <= 1e-9);
        }
    }

    const auto endpoint = run_cli({"eigs", "--family", "wl-w", "--n", "3", "--x", "1", "--q", "2"});
    CHECK(endpoint.code == cli::kExitOk);
    CHECK(endpoint.err.rfind("warning: ", 0) == 0);
    CHECK(parse_csv(endpoint.out).size() == 9);

    const auto defect = run_cli({"eigs", "--family", "pp-w", "--n", "3", "--x", "0.2", "--q", "2", "--source", "analytic"});
    CHECK(defect.code == cli::kExitOk);
    CHECK(defect.err.rfind("warning: pp-w", 0) == 0);

    check_usage_error({"eigs", "--family", "wl-w", "--n", "3", "--x", "1.5", "--q", "2"});
    check_usage_error({"eigs", "--family", "wl-w", "--n", "3", "--x", "0.5", "--q", "2", "--source", "guess"});
    check_usage_error({"eigs", "--family", "wl-w", "--n", "3", "--x", "1", "--q", "2", "--source", "analytic"});
    check_usage_error({"eigs", "--family", "wl-w", "--n", "2", "--x", "0.5", "--q", "2", "--source", "analytic"});
    check_usage_error({"eigs", "--family", "wl-w", "--n", "3", "--x", "0.5", "--q", "1"});
}

TEST_CASE("verify command")
{
    const auto ok = run_cli({"verify", "--n-max", "3"});
    CHECK(ok.code == cli::kExitOk);
    CHECK(ok.out.find("SUMMARY: PASS") != std::string::npos);
    CHECK(ok.out.find("N=4") == std::string::npos);

    const auto broken = run_cli({"verify", "--n-max", "3", "--inject-fault"});
    CHECK(broken.code != cli::kExitOk);
    CHECK(broken.out.find("SUMMARY: FAIL") != std::string::npos);

    check_usage_error({"verify", "--n-max", "2"});
    check_usage_error({"verify", "--n-max", "9"});
}

TEST_CASE("help")
{
    const auto r = run_cli({"--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("threshold") != std::string::npos);
    CHECK(r.out.find("inject-fault") == std::string::npos);
}
