#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using Json = nlohmann::ordered_json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("SYMDYN_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SYMDYN_CLI must point at the built binary");
    return p;
}

RunResult run_cli(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string canonical_json(const std::string& text) {
    Json j = Json::parse(text);
    j.erase("wall_time_ms");
    return j.dump();
}

}  // namespace

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("analyze-substitution").exit_code == 2);  // missing --rules
    // domain failure inside the library: invariant/input error
    CHECK(run_cli("analyze-substitution --rules \"a->\"").exit_code == 1);
    CHECK(run_cli("classify-set --set no-such-family").exit_code == 1);
}

TEST_CASE("cli: replays are byte-identical modulo wall time") {
    std::vector<std::string> commands{
        "analyze-substitution --rules \"a->aab;b->bad;c->ccd;d->dcb\" --depth 5",
        "verify-pair --construction twoletter-fixed-points --horizon 2187",
        "check-circular --family zero-tail --n 2 --test-length 60",
        "classify-set --set evens --horizon 2000",
        "sft-info --alphabet 01 --forbidden 11 --derive-blocks 0 --synchronizing 1",
        "interval-trace --map tent --depth 4 --alpha 010",
        "rotation-example --n-max 20 --horizon 210",
        "construct-witness --construction base-scrambled --length 64 --seed 9",
    };
    for (const auto& cmd : commands) {
        CAPTURE(cmd);
        auto first = run_cli(cmd);
        auto second = run_cli(cmd);
        REQUIRE(first.exit_code == 0);
        REQUIRE(second.exit_code == 0);
        CHECK(canonical_json(first.out) == canonical_json(second.out));
    }
}

TEST_CASE("cli: report envelope") {
    auto r = run_cli("verify-pair --construction twoletter-fixed-points --horizon 729");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["schema"] == "symdyn-report/1");
    CHECK(j["command"] == "verify-pair");
    CHECK(j["recipe"]["horizon"] == 729);
    CHECK(j["verdicts"]["pair"]["horizon"] == 729);
    CHECK(j.contains("tool_version"));
    CHECK(j.contains("wall_time_ms"));
}

TEST_CASE("cli: analyze-substitution on the four-letter example") {
    auto r = run_cli(
        "analyze-substitution --rules \"a->aab;b->bad;c->ccd;d->dcb\" --depth 5");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["verdicts"]["primitive"]["primitive"] == true);
    CHECK(j["verdicts"]["coincidence"].is_null());
    CHECK(j["verdicts"]["column_number"]["value"] == 2);
    CHECK(j["verdicts"]["column_number"]["certified"] == true);
    bool saw_bd = false;
    for (const auto& p : j["verdicts"]["pairs"]) {
        if (p["pair"] == "bd") {
            saw_bd = true;
            CHECK(p["class"] == "exclusive");
        }
    }
    CHECK(saw_bd);
}

TEST_CASE("cli: coincidence certificates render as (t, i, e)") {
    auto r = run_cli("analyze-substitution --rules \"0->001;1->100\" --output text");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("coincidence_display: \"(t=1, i=1, e='0')\"") != std::string::npos);
}

TEST_CASE("cli: text and csv renderings") {
    auto text = run_cli("classify-set --set evens --horizon 500 --output text");
    REQUIRE(text.exit_code == 0);
    CHECK(text.out.find("command: \"classify-set\"") != std::string::npos);
    CHECK(text.out.find("verdicts.classification.syndetic.gap: 2") != std::string::npos);

    auto csv = run_cli("rotation-example --n-max 10 --horizon 55 --output csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.rfind("n,distance,height,coeff", 0) == 0);

    auto trace_csv = run_cli("interval-trace --map tent --depth 4 --alpha 01 --output csv");
    REQUIRE(trace_csv.exit_code == 0);
    CHECK(trace_csv.out.rfind("j,orbit_rational,orbit_decimal", 0) == 0);
}

TEST_CASE("cli: config file supplies defaults") {
    std::string path = "/tmp/symdyn_test_config.ini";
    {
        std::ofstream cfg(path);
        cfg << "output=text\n";
    }
    auto r = run_cli("--config " + path + " classify-set --set evens --horizon 100");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("command: \"classify-set\"") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli: verify-pair on the named constructions") {
    auto r = run_cli(
        "verify-pair --construction spread-pair --horizon 16384 --epsilon-levels 1,2,3,4 "
        "--seed 3");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["verdicts"]["pair"]["sprox_evidence"] == true);

    // horizon placed so the thick far block [256, 1024) lands in the tail
    auto q = run_cli("verify-pair --construction quartic-pair --horizon 1600 --seed 3");
    REQUIRE(q.exit_code == 0);
    Json jq = Json::parse(q.out);
    CHECK(jq["verdicts"]["pair"]["sprox_evidence"] == false);
}
