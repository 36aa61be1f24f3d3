// End-to-end checks of the command-line driver: output values, exit codes,
// and byte-for-byte determinism.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#ifndef TB_CLI_PATH
#error "TB_CLI_PATH must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(TB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
    const std::string path = "/tmp/tb_cli_" + name;
    std::ofstream out(path);
    out << body;
    return path;
}

const std::string kExpAbs =
    R"({"kind": "absolute", "family": "exp", "params": {"rate": 1.0}})";

}  // namespace

TEST_CASE("example1 prints the closed-form value") {
    const auto r = run_cli("example1 --exp-rate 1 --a1 1 --b1 2 --a2 2 --b2 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.0629428589583\n");
}

TEST_CASE("validate reports violations with exit code 2") {
    const auto good = write_temp("good.json", kExpAbs);
    const auto ok = run_cli("validate " + good);
    CHECK(ok.exit_code == 0);
    CHECK(nlohmann::json::parse(ok.out).at("ok").get<bool>());

    const auto bad = write_temp(
        "bad.json",
        R"({"kind": "right", "family": "exp", "params": {"rate": -1.0}})");
    const auto fail = run_cli("validate " + bad);
    CHECK(fail.exit_code == 2);
    CHECK_FALSE(nlohmann::json::parse(fail.out).at("violations").empty());
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("no-such-subcommand").exit_code == 1);
    CHECK(run_cli("solve-finite").exit_code == 1);  // missing required options
}

TEST_CASE("solve-finite reproduces the antichain optimum") {
    const auto tails =
        write_temp("tails.json", R"({"tails": [)" + kExpAbs + "," + kExpAbs + "]}");
    const auto points =
        write_temp("points.json", R"({"points": [[1, 2], [2, 1]]})");
    const auto r = run_cli("solve-finite --tails " + tails + " --points " + points);
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("value").get<double>() ==
          Catch::Approx(0.062942858958259532).margin(1e-12));
    CHECK(j.contains("witness"));
}

TEST_CASE("solve-dep methods agree on the antichain") {
    const auto tails =
        write_temp("tails.json", R"({"tails": [)" + kExpAbs + "," + kExpAbs + "]}");
    const auto points =
        write_temp("points.json", R"({"points": [[1, 2], [2, 1]]})");
    const auto lp = run_cli("solve-dep --tails " + tails + " --points " + points);
    REQUIRE(lp.exit_code == 0);
    const auto two = run_cli("solve-dep --method 2d --tails " + tails +
                             " --points " + points);
    REQUIRE(two.exit_code == 0);
    const double vl = nlohmann::json::parse(lp.out).at("value").get<double>();
    const double v2 = nlohmann::json::parse(two.out).at("value").get<double>();
    CHECK(vl == Catch::Approx(0.2706705664732254).margin(1e-9));
    CHECK(v2 == Catch::Approx(vl).margin(1e-9));
}

TEST_CASE("xtilde answers quantile queries") {
    const auto tail = write_temp(
        "right.json",
        R"({"kind": "right", "family": "exp", "params": {"rate": 1.0}})");
    const auto r = run_cli("xtilde --tail " + tail + " --s 0.5");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at(0).at("x").get<double>() ==
          Catch::Approx(0.69314718055994529).margin(1e-9));
}

TEST_CASE("shift emits atoms as JSON and rcdf tables as CSV") {
    const auto tail = write_temp(
        "right.json",
        R"({"kind": "right", "family": "exp", "params": {"rate": 1.0}})");
    const auto grid = write_temp("grid.json", R"({"grid": [[0, 1, 2]]})");
    const auto r = run_cli("shift --tail " + tail + " --grid " + grid);
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("atoms").size() == 3);
    CHECK(j.at("residual_mass").get<double>() == 0.0);

    const auto csv = run_cli("shift --tail " + tail + " --grid " + grid +
                             " --csv --tmin 0 --tmax 2 --steps 4");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.substr(0, 7) == "t,rcdf\n");
    CHECK(csv.out.find("\n0.5,") != std::string::npos);
}

TEST_CASE("gaussian-sum prints the erf formula value") {
    const auto r = run_cli("gaussian-sum --mus 1,2 --sigmas 3,4 --t 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.5\n");
}

TEST_CASE("computation caps exit with code 3") {
    std::string pts = R"({"points": [)";
    for (int i = 1; i <= 17; ++i) {
        pts += (i > 1 ? "," : "") + std::string("[") + std::to_string(i) + "]";
    }
    pts += "]}";
    const auto tails = write_temp("one_tail.json", kExpAbs);
    const auto points = write_temp("many_points.json", pts);
    const auto r =
        run_cli("solve-finite --tails " + tails + " --points " + points);
    CHECK(r.exit_code == 3);
}

TEST_CASE("verify passes on a well-posed problem") {
    const auto tails =
        write_temp("tails.json", R"({"tails": [)" + kExpAbs + "," + kExpAbs + "]}");
    const auto points =
        write_temp("points.json", R"({"points": [[1, 2], [2, 1]]})");
    const auto r = run_cli("verify --tails " + tails + " --points " + points +
                           " --restarts 30 --seed 7");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out).at("ok").get<bool>());
}

TEST_CASE("output is byte-for-byte deterministic") {
    const auto tails =
        write_temp("tails.json", R"({"tails": [)" + kExpAbs + "," + kExpAbs + "]}");
    const auto points =
        write_temp("points.json", R"({"points": [[1, 2], [2, 1]]})");
    const std::string cmd =
        "solve-finite --tails " + tails + " --points " + points;
    CHECK(run_cli(cmd).out == run_cli(cmd).out);
    const std::string mono = "monotone-tail --g sum --tails " + tails +
                             " --t 2 --mode mc --samples 20000 --seed 9";
    CHECK(run_cli(mono).out == run_cli(mono).out);
}
