#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "uskolem/arith/prime_table.hpp"
#include "uskolem/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = uss::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    const auto r = run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

fs::path temp_dir() {
    const auto d = fs::temp_directory_path() / ("uskolem_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("skolem member reports") {
    const auto j = run_json({"skolem", "member", "1053"});
    CHECK(j["member"] == true);
    CHECK(j["window"] == 10);
    CHECK(j["reps"] == json::parse("[[2,523,7],[2,521,11]]"));
    CHECK(j["schema"] == 1);
    CHECK(j["provenance"]["X"] == 1024);
    CHECK(j["provenance"]["seed"] == 1);

    const auto k = run_json({"skolem", "member", "512"});
    CHECK(k["member"] == false);
    CHECK(k["reason"] == "BelowRange");

    const auto big = run_json({"skolem", "member", "2361183241434822606848"});  // 2^71
    CHECK(big["windows_checked"] == json::parse("[70, 71]"));

    const auto text = run({"skolem", "member", "1053"});
    CHECK(text.code == 0);
    CHECK(text.out == "1053\tmember\tMember\tw=10\t2\t2:523:7,2:521:11\n");
}

TEST_CASE("skolem enum streams line records") {
    const auto r = run({"skolem", "enum", "10", "--from", "1024", "--to", "1060"});
    CHECK(r.code == 0);
    CHECK(r.out == "1053\t2\t2:523:7,2:521:11\n1054\t2\t2:523:8,2:521:12\n1055\t2\t2:523:9,2:521:13\n");
    const auto j = run_json({"skolem", "enum", "30"});
    CHECK(j["count"] == 0);
    CHECK(j["provenance"]["w"] == 30);
}

TEST_CASE("bh commands") {
    const auto c = run_json({"bh", "constant", "--f1", "1,0", "--f2", "1,2"});
    CHECK(c["C_f"].get<double>() == doctest::Approx(1.3203).epsilon(1e-4));
    CHECK(c["tail_bound"].get<double>() < 1e-5);

    const auto n = run_json({"bh", "count", "--f1", "1,0", "--f2", "1,2", "--X", "100"});
    CHECK(n["count"] == 8);

    const auto csv = run({"bh", "report", "--f1", "1,0", "--f2", "1,2", "--X", "1000", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("pair,X,admissible,actual,", 0) == 0);

    const auto bad = run({"bh", "constant", "--f1", "1,0", "--f2", "1,1"});
    CHECK(bad.code == uss::cli::kDomain);
    CHECK(bad.err.find("not admissible") != std::string::npos);
    CHECK(run({"bh", "count", "--f1", "1;0", "--f2", "1,2", "--X", "5"}).code == uss::cli::kDomain);
}

TEST_CASE("lrs commands") {
    const auto z = run_json({"lrs", "zeros", "--coeffs=4,-4", "--inits=-1053,-2104", "--max-n", "2048"});
    CHECK(z["zeros"] == json::parse(R"([{"n":1053,"certainty":"Exact"}])"));
    CHECK(z["theorem_bound"] == "exp_5(6.4e+11)");

    const auto rot = run_json({"lrs", "zeros", "--lrs", "coeffs=0,-1; inits=1,0", "--max-n", "4096"});
    CHECK(rot["zero_progressions"] == json::parse("[[1,2]]"));
    CHECK(rot["zeros"].empty());

    const auto d = run_json({"lrs", "degenerate", "--coeffs=0,-1", "--inits=1,0"});
    CHECK(d["degenerate"] == true);
    CHECK(d["witness_order"] == 2);

    const auto b = run_json({"bounds", "--coeffs=1,1", "--inits=0,1", "--window", "10"});
    CHECK(b["A"] == 10);
    CHECK(b["zero_bound"] == "exp_5(6.4e+11)");
    CHECK(b["window"]["q_primes"] == json::parse("[2]"));
}

TEST_CASE("density commands") {
    const auto s = run_json({"density", "scan", "12"});
    CHECK(s["M1"] == 0);
    const auto m = run_json({"density", "mean-g", "10000"});
    CHECK(m["rel_err"].get<double>() < 0.05);
    const auto csv = run({"density", "scan", "13", "--format", "csv"});
    CHECK(csv.out.rfind("w,X,scanned,M0,M1,M2,excluded_correlated,m1_pred,m2_pred,density_estimate,mode,seed\n13,8192,8193,",
                        0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == uss::cli::kUsage);
    CHECK(run({"skolem", "member"}).code == uss::cli::kUsage);
    CHECK(run({"skolem", "member", "5", "--no-such-flag"}).code == uss::cli::kUsage);
    CHECK(run({"frobnicate"}).code == uss::cli::kUsage);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"skolem", "member", "abc"}).code == uss::cli::kDomain);
    CHECK(run({"skolem", "enum", "9"}).code == uss::cli::kDomain);
    CHECK(run({"skolem", "enum", "13", "--scan-cap", "100"}).code == uss::cli::kResource);
    CHECK(run({"density", "scan", "13", "--scan-cap", "0"}).code == uss::cli::kDomain);
    CHECK(run({"lrs", "zeros", "--coeffs=1,1", "--inits=0,1", "--max-n", "100000", "--scan-cap", "1000"}).code ==
          uss::cli::kResource);
}

TEST_CASE("reports are byte-identical across thread counts") {
    const std::vector<std::string> base{"density", "scan", "20", "--sample", "5000", "--seed", "7", "--json"};
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = run(one), b = run(four);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run({"density", "scan", "20", "--sample", "5000", "--seed", "8", "--json"}).out != a.out);

    const auto z1 = run({"lrs", "zeros", "--coeffs=1,1", "--inits=0,1", "--max-n", "70000", "--json"});
    const auto z4 = run({"lrs", "zeros", "--coeffs=1,1", "--inits=0,1", "--max-n", "70000", "--json", "--threads", "4"});
    CHECK(z1.out == z4.out);
}

TEST_CASE("config file with flag overrides") {
    const auto dir = temp_dir();
    const auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"output_format": "json", "seed": 42, "scan_cap": 100000})";
    const auto r = run({"--config", cfg.string(), "skolem", "member", "1053"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["provenance"]["seed"] == 42);
    CHECK(j["provenance"]["scan_cap"] == 100000);

    const auto o = run({"--config", cfg.string(), "--seed", "5", "skolem", "member", "1053"});
    CHECK(json::parse(o.out)["provenance"]["seed"] == 5);
    const auto t = run({"--config", cfg.string(), "--format", "text", "skolem", "member", "1053"});
    CHECK(t.out.rfind("1053\tmember", 0) == 0);

    std::ofstream(dir / "bad.json") << R"({"colour": "blue"})";
    CHECK(run({"--config", (dir / "bad.json").string(), "skolem", "member", "1053"}).code == uss::cli::kDomain);
    std::ofstream(dir / "bad2.json") << R"({"threads": 0})";
    CHECK(run({"--config", (dir / "bad2.json").string(), "skolem", "member", "1053"}).code == uss::cli::kDomain);
    CHECK(run({"--config", (dir / "missing.json").string(), "skolem", "member", "1053"}).code == uss::cli::kDomain);
    fs::remove_all(dir);
}

TEST_CASE("sieve cache management") {
    const auto dir = temp_dir();
    const auto path = (dir / "sieve.bin").string();
    std::ostringstream warn;

    const auto first = uss::cli::load_or_build_cache(path, 100'000, warn);
    CHECK(fs::exists(path));
    CHECK(warn.str().empty());
    const auto second = uss::cli::load_or_build_cache(path, 100'000, warn);
    CHECK(*first == *second);
    CHECK(warn.str().empty());

    // corrupt a word in the middle
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(9 + 8 * 100);
        const char junk[8] = {1, 2, 3, 4, 5, 6, 7, 8};
        f.write(junk, 8);
    }
    const auto third = uss::cli::load_or_build_cache(path, 100'000, warn);
    CHECK(*third == *first);
    CHECK(warn.str().find("rebuilding") != std::string::npos);

    // a larger limit rebuilds and replaces the file
    warn.str("");
    const auto bigger = uss::cli::load_or_build_cache(path, 200'000, warn);
    CHECK(bigger->limit() == 200'000);
    CHECK(warn.str().find("limit mismatch") != std::string::npos);
    auto reload = uss::arith::PrimeTable::build(2);
    CHECK(uss::arith::PrimeTable::load(path, 200'000, reload));

    // unwritable location: in-memory fallback with a warning
    warn.str("");
    const auto mem = uss::cli::load_or_build_cache((dir / "no" / "such" / "dir" / "s.bin").string(), 1000, warn);
    CHECK(mem->limit() == 1000);
    CHECK(warn.str().find("continuing without a cache") != std::string::npos);

    // through the command line
    const auto r = run({"--cache", path, "--sieve-limit", "200000", "skolem", "member", "1053", "--json"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(json::parse(r.out)["provenance"]["sieve_limit"] == 200000);
    fs::remove_all(dir);
}
