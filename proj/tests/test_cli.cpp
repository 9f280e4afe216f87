#include <catch_amalgamated.hpp>

#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run hhcalc(const std::string& args, bool merge_stderr = false, const std::string& env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + HHCALC_PATH + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) {
        r.out.append(buf, got);
    }
    const int w = pclose(p);
    r.status = WIFEXITED(w) ? WEXITSTATUS(w) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

} // namespace

TEST_CASE("table json records", "[cli]")
{
    const auto r = hhcalc("table --n 2 --ring Z --max-degree 3 --format json --kind homology");
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    const auto k1 = nlohmann::json::parse(ls[1]);
    CHECK(k1["k"] == 1);
    CHECK(k1["free"] == 4);
    CHECK(k1["kind"] == "homology");
    CHECK(k1["ring"] == "Z");
    CHECK(k1["method"] == "closed");
    CHECK(k1["torsion"] == nlohmann::json::array({2, 2, 2}));
    CHECK(ls[0] == R"({"flagged":false,"free":3,"k":0,"kind":"homology","method":"closed","n":2,"ring":"Z","torsion":[2]})");
}

TEST_CASE("table json cohomology line for k = 1", "[cli]")
{
    const auto r = hhcalc("table --n 2 --ring Z --max-degree 3 --format json --kind cohomology");
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == R"({"flagged":false,"free":4,"k":1,"kind":"cohomology","method":"closed","n":2,"ring":"Z","torsion":[2,2]})");
}

TEST_CASE("table methods agree", "[cli]")
{
    for (const char* ring : {"Z", "F3"}) {
        const std::string base = std::string("table --n 2 --max-degree 3 --format csv --ring ") + ring;
        const auto closed = hhcalc(base);
        const auto reduced = hhcalc(base + " --method reduced");
        const auto oracle = hhcalc(base + " --method oracle");
        REQUIRE(closed.status == 0);
        REQUIRE(reduced.status == 0);
        REQUIRE(oracle.status == 0);
        auto strip_method = [](std::string s) {
            for (const char* m : {",closed,", ",reduced,", ",oracle,"}) {
                for (auto p = s.find(m); p != std::string::npos; p = s.find(m)) {
                    s.replace(p, std::string(m).size(), ",*,");
                }
            }
            return s;
        };
        CHECK(strip_method(closed.out) == strip_method(reduced.out));
        CHECK(strip_method(closed.out) == strip_method(oracle.out));
    }
}

TEST_CASE("table over F2 for n = 1 in degree 0", "[cli]")
{
    const auto r = hhcalc("table --n 1 --ring F2 --max-degree 0");
    REQUIRE(r.status == 0);
    CHECK(contains(r.out, "HH_0 over F2 = F2^2"));
    CHECK(contains(r.out, "HH^0 over F2 = F2^2"));
    const auto j = hhcalc("table --n 1 --ring F2 --max-degree 0 --format json --kind homology");
    CHECK(nlohmann::json::parse(lines(j.out).at(0))["free"] == 2);
}

TEST_CASE("flagged cohomology in degree 0", "[cli]")
{
    const auto r = hhcalc("table --n 1 --ring Z --max-degree 0 --format json --kind cohomology");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(j["free"] == 2);
    CHECK(j["torsion"].empty());
    CHECK(j["flagged"] == true);
    CHECK(j.contains("raw_torsion"));
    const auto f2 = hhcalc("table --n 1 --ring F2 --max-degree 0 --format json --kind cohomology");
    CHECK(nlohmann::json::parse(lines(f2.out).at(0))["flagged"] == false);
}

TEST_CASE("csv header and rows", "[cli]")
{
    const auto r = hhcalc("table --n 2 --all-rings --max-degree 2 --format csv");
    REQUIRE(r.status == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1 + 2 * 4 * 3);
    CHECK(ls[0] == "n,k,ring,free_rank,torsion_divisors,method,elapsed_ms,kind");
    CHECK(ls[1] == "2,0,Z,3,2,closed,0,homology");
    CHECK(ls[2] == "2,1,Z,4,2;2;2,closed,0,homology");
}

TEST_CASE("verify reports the agreement count", "[cli]")
{
    const auto r = hhcalc("verify --n 1 --max-degree 5");
    CHECK(r.status == 0);
    CHECK(contains(r.out, "oracle=reduced=closed-form for 12 (k,ring) cells"));
    CHECK_FALSE(contains(r.out, "FAIL"));
    const auto all = hhcalc("verify --n 1 --max-degree 3 --all-rings");
    CHECK(all.status == 0);
    CHECK(contains(all.out, "for 32 (k,ring) cells"));
    const auto j = hhcalc("verify --n 2 --max-degree 2 --format json");
    CHECK(j.status == 0);
    for (const auto& l : lines(j.out)) {
        const auto rec = nlohmann::json::parse(l);
        CHECK(rec.value("agree", rec.value("passed", false)));
    }
}

TEST_CASE("resolution output", "[cli]")
{
    const auto r = hhcalc("resolution --n 2 --max-degree 2");
    REQUIRE(r.status == 0);
    CHECK(contains(r.out, "PASS reduced resolution is minimal n=2"));
    const auto j = hhcalc("resolution --n 2 --max-degree 2 --format json");
    REQUIRE(j.status == 0);
    const auto ls = lines(j.out);
    REQUIRE_FALSE(ls.empty());
    CHECK(nlohmann::json::parse(ls.back())["minimal"] == true);
    CHECK(nlohmann::json::parse(ls[0])["basis"].size() == 1);
}

TEST_CASE("cup output", "[cli]")
{
    const auto q = hhcalc("cup --n 2 --max-degree 2");
    CHECK(q.status == 0);
    CHECK(contains(q.out, "over Q"));
    CHECK(contains(q.out, "PASS bar-level products agree"));
    CHECK(contains(q.out, "generator span: spans"));
    const auto f2 = hhcalc("cup --n 1 --max-degree 2 --ring F2 --format json");
    CHECK(f2.status == 0);
    CHECK(nlohmann::json::parse(lines(f2.out).back())["bar_agrees"] == true);
}

TEST_CASE("output is deterministic", "[cli]")
{
    for (const char* args : {"table --n 3 --all-rings --max-degree 4 --format json",
                             "table --n 2 --max-degree 3 --method reduced --format csv",
                             "verify --n 2 --max-degree 2", "cup --n 2 --max-degree 2 --format json"}) {
        CHECK(hhcalc(args).out == hhcalc(args).out);
    }
}

TEST_CASE("exit codes", "[cli]")
{
    CHECK(hhcalc("").status == 2);
    CHECK(hhcalc("table --max-degree 2").status == 2);
    CHECK(hhcalc("table --n 0 --max-degree 2").status == 2);
    CHECK(hhcalc("table --n 2 --max-degree 2 --ring F4").status == 2);
    CHECK(hhcalc("table --n 2 --max-degree 2 --format yaml").status == 2);
    CHECK(hhcalc("cup --n 2 --max-degree 2 --ring Z").status == 2);
    CHECK(hhcalc("resolution --n 2 --max-degree 2 --format csv").status == 2);
    CHECK(hhcalc("verify --n 2 --max-degree 2 --format csv").status == 2);
    const auto limited = hhcalc("table --n 3 --max-degree 3 --method oracle --size-limit 10", true);
    CHECK(limited.status == 3);
    CHECK(contains(limited.out, "degree 1 needs 56"));
    CHECK(hhcalc("table --n 3 --max-degree 3 --method oracle", true).status == 0);
    CHECK(hhcalc("table --n 3 --max-degree 3 --method oracle", true, "HH_SIZE_LIMIT=10").status == 3);
    CHECK(hhcalc("table --n 3 --max-degree 3 --method oracle", true, "HH_SIZE_LIMIT=abc").status == 2);
}
