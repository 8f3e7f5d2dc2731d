#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qlab/cli.hpp"
#include "qlab/series_io.hpp"

using namespace qlab;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

}  // namespace

TEST_CASE("bipartition CSV over the integers")
{
    auto r = run({"bipartition", "--u", "3", "--v", "7", "--trunc", "20", "--mod", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,a(n)\n0,1\n1,2\n2,5\n", 0) == 0);
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    CHECK(lines == 22);
}

TEST_CASE("bipartition JSON and files")
{
    const std::string path = temp_path("b.json");
    auto r = run({"bipartition", "--u", "3", "--v", "7", "--trunc", "30", "--mod", "3", "--json", "--out", path});
    CHECK(r.code == 0);
    std::ifstream f(path);
    QSeries s = series_from_json(json::parse(f));
    CHECK(s.ring() == Ring::mod(3));
    CHECK(s.trunc() == 30);
    CHECK(s[2] == 2);
    std::remove(path.c_str());
    CHECK(run({"bipartition", "--u", "3", "--v", "7", "--trunc", "5", "--mod", "1"}).code == 2);
    CHECK(run({"bipartition", "--u", "1", "--v", "7", "--trunc", "5"}).code == 2);
}

TEST_CASE("series subcommand")
{
    auto r = run({"series", "--factors", "1:-1", "--trunc", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n10,42\n") != std::string::npos);
    auto s = run({"series", "--factors", "1:1", "--trunc", "3", "--shift", "1", "--json"});
    CHECK(json::parse(s.out)["coeffs"] == json{"0", "1", "-1", "-1"});
}

TEST_CASE("usage errors exit 2")
{
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    auto r = run({"verify", "--family", "no_such"});
    CHECK(r.code == 2);
    CHECK(r.err.find("no_such") != std::string::npos);
    CHECK(run({"verify"}).code == 2);
    CHECK(run({"verify", "--family", "eq006a", "--p", "x"}).code == 2);
    CHECK(run({"verify", "--family", "eq006a", "--nmax", "-3"}).code == 2);
    CHECK(run({"hecke", "--form", "eta3_21", "--p", "7"}).code == 2);
    CHECK(run({"hecke", "--form", "eta9", "--p", "5"}).code == 2);
    CHECK(run({"density", "--p", "6"}).code == 2);
    CHECK(run({"newman", "--identity", "III", "--p", "5"}).code == 2);
    CHECK(run({"verify", "--help"}).code == 0);
}

TEST_CASE("verify writes a PASS report")
{
    auto r = run({"verify", "--family", "eq006a", "--nmax", "1000"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["schema"] == 1);
    REQUIRE(j["reports"].size() == 1);
    CHECK(j["reports"][0]["status"] == "PASS");
    CHECK(j["reports"][0]["checked"] == 1001);
}

TEST_CASE("exit code follows FAIL status")
{
    auto fail = run({"verify", "--family", "thm1.10ii", "--p", "5", "--nmax", "20", "--json", "-"});
    CHECK(fail.code == 1);
    CHECK(json::parse(fail.out)["summary"]["fail"] == 1);
    auto skip = run({"verify", "--family", "thm1.7i", "--p", "73", "--json", "-"});
    CHECK(skip.code == 0);
    CHECK(json::parse(skip.out)["summary"]["skip"] == 2);
    CHECK(run({"newman", "--identity", "II", "--q", "5", "--r", "2", "--s", "1", "--p", "5"}).code == 1);
    CHECK(run({"newman", "--identity", "II", "--q", "3", "--r", "2", "--s", "1", "--p", "7"}).code == 0);
    CHECK(run({"newman", "--identity", "I", "--series", "f1f7", "--p", "7"}).code == 0);
    CHECK(run({"hecke", "--form", "eta8_16", "--p", "17", "--bound", "300"}).code == 0);
}

TEST_CASE("reports replay identically")
{
    const std::string path = temp_path("r.json");
    auto r = run({"verify", "--family", "thm1.5i", "--nmax", "300", "--json", path, "--jobs", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("summary:") != std::string::npos);
    std::ifstream f(path);
    AggregateReport saved = aggregate_from_json(json::parse(f));
    CHECK(saved.config["n_max"] == 300);
    auto again = run({"verify", "--replay", path});
    CHECK(again.code == 0);
    CHECK(again.out.find("replay: identical") != std::string::npos);
    CHECK(run({"verify", "--replay", temp_path("missing.json")}).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("parallel and serial runs agree")
{
    cli::VerifyConfig c;
    c.families = {"eq006", "eq006a", "thm1.5ii", "thm1.8-remark", "eq007"};
    c.options.n_max = 200;
    c.jobs = 1;
    AggregateReport serial = cli::run_verify(c);
    c.jobs = 4;
    AggregateReport parallel = cli::run_verify(c);
    CHECK(serial.same_outcome(parallel));
    CHECK(serial.reports.front().family == "eq006");
    CHECK(serial.reports.back().family == "eq007");
    CHECK(cli::VerifyConfig::from_json(c.to_json()).to_json() == c.to_json());
}

TEST_CASE("density and analysis outputs")
{
    auto d = run({"density", "--p", "5", "--m", "7", "--checkpoints", "100,1000"});
    CHECK(d.code == 0);
    CHECK(json::parse(d.out)["points"].size() == 2);
    auto csv = run({"density", "--p", "5", "--checkpoints", "100,1000", "--csv", "-"});
    CHECK(csv.out.rfind("x,count,ratio\n100,", 0) == 0);

    auto e = run({"eta-analyze", "--factors", "3:1,21:1", "--level", "63", "--json"});
    CHECK(e.code == 0);
    json j = json::parse(e.out);
    CHECK(j["weight"] == "1");
    CHECK(j["conditions"] == "ok");
    CHECK(j["verdict"] == "cusp form");
    CHECK(j["cusps"].size() == 6);

    auto h = run({"hecke", "--form", "eta4_20", "--p", "13", "--bound", "200", "--json"});
    CHECK(h.code == 0);
    CHECK(json::parse(h.out)["eigen"] == true);
}
