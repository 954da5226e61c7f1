#include "betalab/cli.hpp"
#include "betalab/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace betalab;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "betalab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "betalab_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"expand", "--beta", "2"}).code == 2);
    CHECK(run({"boundary", "--grid", "1:2"}).code == 2);
    CHECK(run({"criterion", "--m", "3,x"}).code == 2);
    CHECK(run({"verify", "--suite", "everything"}).code == 2);
    CHECK(run({"unimodal", "--map", "/nonexistent/map.json"}).code == 2);
}

TEST_CASE("help exits cleanly") {
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("criterion") != std::string::npos);
}

TEST_CASE("criterion") {
    const Run ok = run({"criterion", "--m", "3,1,-1", "--json"});
    CHECK(ok.code == 0);
    const json j = parse_json(ok.out);
    CHECK(j.at("itinerary") == json::parse("[3,0,1]"));
    const Run bad = run({"criterion", "--m", "2,1"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("expand, orbit and parry") {
    const Run e = run({"expand", "--beta", "2", "--signs", "1,-1", "--json"});
    CHECK(e.code == 0);
    CHECK(parse_json(e.out).at("shape") == "Finite");
    const Run o = run({"orbit", "--beta=-1,-1,1@1,2", "--signs", "1,-1"});
    CHECK(o.code == 0);
    CHECK_FALSE(o.out.empty());
    const Run p = run({"parry", "--beta=-1,-1,1@1,2", "--signs", "1,-1", "--json"});
    CHECK(p.code == 0);
    CHECK(parse_json(p.out).at("parry").at("coeffs") == json::parse(R"(["-1","0","2","0","0","-2","1"])"));
    CHECK(run({"orbit", "--beta=-1,-1,1@3,4", "--signs", "1,-1"}).code == 2);
}

TEST_CASE("scan, render and boundary write files") {
    const auto dir = temp_dir();
    const auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"n_range":[2,3],"coefficient_bound":8,"sample_count":10,"seed":3})";
    const auto csv = dir / "scan.csv";
    const Run s = run({"scan", "--config", cfg.string(), "--out", csv.string(), "--jobs", "2"});
    CHECK(s.code == 0);
    CHECK(slurp(csv).rfind("re,im,beta,source_id,degree,is_real", 0) == 0);
    const auto svg = dir / "scan.svg";
    CHECK(run({"render", "--in", csv.string(), "--out", svg.string()}).code == 0);
    CHECK(slurp(svg).find("<svg") != std::string::npos);

    const auto bcsv = dir / "boundary.csv";
    const Run b = run({"boundary", "--grid", "0.5:1.5:0.5", "--trunc", "100", "--out", bcsv.string()});
    CHECK(b.code == 0);
    CHECK(slurp(bcsv).rfind("phi,lambda", 0) == 0);
    CHECK(run({"render", "--in", bcsv.string(), "--out", (dir / "b.svg").string()}).code == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unimodal and verify") {
    const auto dir = temp_dir();
    const auto map = dir / "tent.json";
    std::ofstream(map) << R"({"breakpoints":["0","1/2","1"],"values":["0","1","0"]})";
    const Run u = run({"unimodal", "--map", map.string(), "--n", "10", "--json"});
    CHECK(u.code == 0);
    const json j = parse_json(u.out);
    CHECK(j.at("gap").get<double>() == 0);
    std::filesystem::remove_all(dir);

    const Run v = run({"verify", "--suite", "criterion"});
    CHECK(v.code == 0);
    CHECK(v.out.find("PASS") != std::string::npos);
}

} // TEST_SUITE
