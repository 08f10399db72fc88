#include <catch2/catch.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string binary_path() {
    const char* env = std::getenv("SCHURZ_BIN");
    REQUIRE(env != nullptr);
    return env;
}

RunResult run(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("cli eval", "[cli]") {
    RunResult r = run("eval 2 --N 100000 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["value"].get<double>() - 1.64492) < 1e-4);
    CHECK(j["N"] == 100000);
    CHECK(j["error_estimate"].get<double>() < 2e-5);
    CHECK(j["mode"] == "float");

    RunResult q = run("eval \"1(2)1\" --N 20 --mode rational --json");
    REQUIRE(q.exit_code == 0);
    auto jq = nlohmann::json::parse(q.out);
    CHECK(jq["mode"] == "rational");
    CHECK(jq["value"].get<std::string>().find('/') != std::string::npos);
}

TEST_CASE("cli exit codes", "[cli]") {
    CHECK(run("eval \"2x\"").exit_code == 2);      // parse error
    CHECK(run("eval 1d1").exit_code == 3);         // admissibility error
    CHECK(run("relations lr --weight-max 99").exit_code == 4); // cap
    CHECK(run("eval 2 --bogus-flag").exit_code == 2);
}

TEST_CASE("cli eval via tableau file matches the sequence route", "[cli]") {
    const std::string path = "/tmp/schurz_square22.json";
    {
        std::ofstream out(path);
        out << R"({"cells":[{"row":1,"col":1,"k":2},{"row":1,"col":2,"k":1},)"
            << R"({"row":2,"col":1,"k":1},{"row":2,"col":2,"k":2}]})";
    }
    RunResult a = run("eval --tableau " + path + " --N 1000 --mode rational --json");
    RunResult b = run("eval \"1(2)1\" --N 1000 --mode rational --json");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(nlohmann::json::parse(a.out)["value"] ==
          nlohmann::json::parse(b.out)["value"]);
}

TEST_CASE("cli convert round trip", "[cli]") {
    RunResult tab = run("convert seq2tab 1u2d1");
    REQUIRE(tab.exit_code == 0);
    const std::string path = "/tmp/schurz_hook.json";
    {
        std::ofstream out(path);
        out << tab.out;
    }
    RunResult seq = run("convert tab2seq " + path);
    REQUIRE(seq.exit_code == 0);
    CHECK(seq.out == "1u2d1\n");
}

TEST_CASE("cli dual", "[cli]") {
    RunResult r = run("dual lr 2d1d1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "1u2d1\n");
    RunResult t = run("dual tau \"1u2(2)4\" --json");
    REQUIRE(t.exit_code == 0);
    CHECK(nlohmann::json::parse(t.out)["dual"] == "1u1u2(2)3");
}

TEST_CASE("cli poset and dot", "[cli]") {
    RunResult dot = run("poset \"1(2)1\" --dot");
    REQUIRE(dot.exit_code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);
    std::size_t edges = 0, pos = 0;
    while ((pos = dot.out.find("->", pos)) != std::string::npos) {
        ++edges;
        pos += 2;
    }
    CHECK(edges == 7);

    RunResult js = run("poset \"1(2)1\" --json");
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["elements"].size() == 6);
}

TEST_CASE("cli relations with verification", "[cli]") {
    RunResult r = run("relations lr --weight-max 4 --verify --N 2000 --json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "lr");
    REQUIRE(j["pairs"].size() >= 1);
    bool found = false;
    for (auto& p : j["pairs"])
        if (p["lhs"] == "1u2d1" && p["rhs"] == "2d1d1") {
            found = true;
            CHECK(p["verified"]["N"] == 2000);
        }
    CHECK(found);
}

TEST_CASE("cli verify subcommands", "[cli]") {
    CHECK(run("verify lemma1 --case I --u 0,1/3,1 --n 1,2").exit_code == 0);
    CHECK(run("verify lemma1 --case III --u 0,1/2 --n 0,1 --N 50").exit_code ==
          0);
    CHECK(run("verify relation2 --base 1 --append plus1 --u 0,1 --N 4000")
              .exit_code == 0);
    CHECK(run("verify main2 --weight-max 4 --N 2000").exit_code == 0);
    CHECK(run("verify duality --kind lr --weight-max 5 --N 1000").exit_code ==
          0);
    RunResult mc = run("verify mc \"1(2)1\" --mc-samples 100000 --N 2000 --json");
    REQUIRE(mc.exit_code == 0);
    auto j = nlohmann::json::parse(mc.out);
    CHECK(j["rng"] == "mt19937_64");
    CHECK(j["pass"] == true);
}

TEST_CASE("cli env overrides", "[cli]") {
    const std::string cmd = "SCHURZ_N=500 " + binary_path() + " eval 2 --json";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    pclose(pipe);
    CHECK(nlohmann::json::parse(out)["N"] == 500);
}
