#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct cmd_result {
    int status = -1;
    std::string out;
};

cmd_result run_cmd(const std::string& args) {
    const std::string cmd = std::string("\"") + POLYBELL_CLI_PATH + "\" " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    cmd_result result;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
    const int rc = pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

std::vector<std::string> csv_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (const char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

TEST_CASE("table: stirling2 row 4") {
    const auto r = run_cmd("table --family stirling2 --n-max 4");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["family"] == "stirling2");
    const auto& row4 = doc["rows"][4];
    CHECK(row4["n"] == 4);
    CHECK(row4["coeffs"] == nlohmann::json({"0", "1", "7", "6", "1"}));
}

TEST_CASE("table: lah row 3") {
    const auto r = run_cmd("table --family lah --n-max 3");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["rows"][3]["coeffs"] == nlohmann::json({"0", "6", "6", "1"}));
}

TEST_CASE("table: polybell classical row 3") {
    const auto r = run_cmd("table --family polybell --dist point:1 --lambda 0 --k 1 --n-max 3");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["rows"][3]["coeffs"] == nlohmann::json({"0", "1", "3", "1"}));
    CHECK(doc["params"]["dist"] == "point:1");
    CHECK(doc["params"]["lambda"] == "0");
    CHECK(doc["params"]["k"] == 1);
}

TEST_CASE("table: csv and json encode the same values") {
    const auto j = run_cmd("table --family deg-stirling2 --lambda 1/3 --n-max 5");
    const auto c = run_cmd("table --family deg-stirling2 --lambda 1/3 --n-max 5 --format csv");
    REQUIRE(j.status == 0);
    REQUIRE(c.status == 0);
    const auto doc = nlohmann::json::parse(j.out);
    std::istringstream lines(c.out);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "n,c0,c1,c2,c3,c4,c5");
    for (int n = 0; n <= 5; ++n) {
        REQUIRE(std::getline(lines, line));
        const auto fields = csv_fields(line);
        REQUIRE(fields.size() == 7);
        CHECK(fields[0] == std::to_string(n));
        const auto& coeffs = doc["rows"][n]["coeffs"];
        for (int i = 0; i <= 5; ++i) {
            const std::string expected =
                i < static_cast<int>(coeffs.size()) ? coeffs[i].get<std::string>() : "0";
            CHECK(fields[static_cast<std::size_t>(i + 1)] == expected);
        }
    }
}

TEST_CASE("verify: small grids pass and repeat byte-identically") {
    const std::string args = "verify --id T2.3b --grid \"n<=3;l<=6\"";
    const auto first = run_cmd(args);
    REQUIRE(first.status == 0);
    const auto second = run_cmd(args);
    CHECK(second.status == 0);
    CHECK(first.out == second.out);
    const auto doc = nlohmann::json::parse(first.out);
    CHECK(doc["id"] == "T2.3b");
    CHECK(doc["passed"] == true);
}

TEST_CASE("verify: alternating sums print exact zeros") {
    const auto r = run_cmd("verify --id R2.4c --grid \"n<=4;alpha=1,2\"");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["failures"].empty());
}

TEST_CASE("verify: exit 1 when a report fails") {
    const auto r = run_cmd(
        "verify --id T2.4-variant-nl --grid \"n<=3;k=1;lambda=0;dist=point:1\" 2>/dev/null");
    CHECK(r.status == 1);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["passed"] == false);
    CHECK(!doc["failures"].empty());
}

TEST_CASE("verify: unknown identity exits 2 with a diagnostic") {
    const auto r = run_cmd("verify --id NOPE 2>&1");
    CHECK(r.status == 2);
    CHECK(r.out.find("unknown identity: NOPE") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cmd("table --family nope --n-max 3 2>/dev/null").status == 2);
    CHECK(run_cmd("table --family deg-bell --lambda abc --n-max 3 2>/dev/null").status == 2);
    CHECK(run_cmd("table --family polybell --dist point:1 --lambda 0 --n-max 3 2>/dev/null").status == 2);
    CHECK(run_cmd("table --family bell 2>/dev/null").status == 2);            // missing --n-max
    CHECK(run_cmd("table --family bell --n-max -2 2>/dev/null").status == 2); // negative
    CHECK(run_cmd("series --name nope --order 3 --lambda 0 2>/dev/null").status == 2);
    CHECK(run_cmd("series --name deg-mgf --order 3 --lambda 0 --dist bernoulli:3/2 2>/dev/null").status == 2);
    CHECK(run_cmd("verify --id T2.1 --grid \"bogus\" 2>/dev/null").status == 2);
    CHECK(run_cmd("2>/dev/null").status == 2); // missing subcommand
}

TEST_CASE("series: degenerate exponential at lambda = 1") {
    const auto r = run_cmd("series --name deg-exp --x 1 --lambda 1 --order 4");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["coeffs"] == nlohmann::json({"1", "1", "0", "0", "0"}));
}

TEST_CASE("series: polyexp EGF coefficients") {
    const auto r = run_cmd("series --name polyexp --k 2 --lambda 0 --order 2");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["coeffs"] == nlohmann::json({"0", "1", "1/2"}));
}

TEST_CASE("series: symbolic x produces coefficient arrays") {
    const auto r = run_cmd("series --name deg-exp --x x --lambda 0 --order 2");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["coeffs"][0] == "1");
    CHECK(doc["coeffs"][1] == nlohmann::json({"0", "1"}));
    CHECK(doc["coeffs"][2] == nlohmann::json({"0", "0", "1"}));
}

TEST_CASE("series: dual-path gamma(1,1) MGF surfaces the closed form values") {
    const auto r = run_cmd("series --name deg-mgf --dist gamma:1,1 --lambda 1/2 --order 3");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    // EGF coefficients are E[(Y)_{n,lambda}]; n=0,1 give 1 and 1
    CHECK(doc["coeffs"][0] == "1");
    CHECK(doc["coeffs"][1] == "1");
}

TEST_CASE("POLYBELL_OUTPUT overrides the output path") {
    const std::string path = "/tmp/polybell_cli_env_test.json";
    std::remove(path.c_str());
    // the env var wins even when --output names a different file
    const std::string cmd = std::string("POLYBELL_OUTPUT=") + path + " \"" + POLYBELL_CLI_PATH +
                            "\" table --family bell --n-max 2 --output /tmp/polybell_cli_ignored.json";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int rc = pclose(pipe);
    REQUIRE(WIFEXITED(rc));
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(out.empty()); // everything went to the file
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream contents;
    contents << in.rdbuf();
    const auto doc = nlohmann::json::parse(contents.str());
    CHECK(doc["family"] == "bell");
    std::remove(path.c_str());
}
