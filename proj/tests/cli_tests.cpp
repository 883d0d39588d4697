// End-to-end tests of the command-line binary; the path to the binary is the
// last command-line argument (wired up by ctest).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include "proc_util.hpp"
#include "sparsecode/rng.hpp"

using json = nlohmann::json;

namespace {

std::string g_bin;

procutil::RunResult cli(const std::string &args) {
    return procutil::run(g_bin + " " + args);
}

json parse_report(const std::string &out) { return json::parse(out); }

// The determinism contract excludes the elapsed_ms field.
std::string stable_dump(const std::string &out) {
    json j = json::parse(out);
    j.erase("elapsed_ms");
    return j.dump();
}

const char *kRep31 = "3 1\n111\n";
const char *kTriangle = "3 3\n0 1\n0 2\n1 2\n";
const char *kK4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

} // namespace

TEST_CASE("verify command") {
    procutil::TempDir dir;
    const std::string code = dir.file("rep31.code", kRep31);

    auto pass = cli("verify --code " + code + " --set 2,3 --alpha 1/2");
    CHECK(pass.exit_code == 0);
    json report = parse_report(pass.out);
    CHECK(report["command"] == "verify");
    CHECK(report["n"] == 3);
    CHECK(report["k"] == 1);
    CHECK(report["alpha"] == "1/2");
    CHECK(report["result"]["pass"] == true);
    CHECK(report["version"] == "0.1.0");

    auto fail = cli("verify --code " + code + " --set 1 --alpha 1/2");
    CHECK(fail.exit_code == 0); // computed fine; the answer is "no"
    json failure = parse_report(fail.out);
    CHECK(failure["result"]["pass"] == false);
    CHECK(failure["result"]["violation"]["codeword"] == "111");
    CHECK(failure["result"]["violation"]["weight"] == 3);
    CHECK(failure["result"]["violation"]["projected_weight"] == 1);
}

TEST_CASE("census command with json and csv output") {
    procutil::TempDir dir;
    const std::string code = dir.file("rep31.code", kRep31);

    auto run = cli("census --code " + code + " --alpha 1/2");
    CHECK(run.exit_code == 0);
    json report = parse_report(run.out);
    CHECK(report["result"]["count"] == "4");
    CHECK(report["result"]["lower_bound"] == "4");
    CHECK(report["result"]["min_size"] == 2);

    auto csv = cli("census --code " + code + " --alpha 1/2 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out == "size,count\n0,0\n1,0\n2,3\n3,1\n");

    // csv is not defined for scalar commands
    auto bad = cli("verify --code " + code + " --set 1,2 --format csv");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("cap violations exit 2") {
    procutil::TempDir dir;
    std::string big = "40 1\n";
    big += std::string(40, '1') + "\n";
    const std::string code = dir.file("big.code", big);
    auto run = cli("census --code " + code);
    CHECK(run.exit_code == 2);
    // Override admits it (n=40 still > hard 62-bit limit? no: 40 <= 62, so
    // the census would run 2^40 subsets -- far too slow; only check that the
    // guard respects --max-n by probing a size that stays fast).
    std::string mid = "16 1\n";
    mid += std::string(16, '1') + "\n";
    const std::string midcode = dir.file("mid.code", mid);
    CHECK(cli("census --code " + midcode + " --max-n 14").exit_code == 2);
    CHECK(cli("census --code " + midcode + " --max-n 16").exit_code == 0);
}

TEST_CASE("usage and parse errors exit 1") {
    procutil::TempDir dir;
    CHECK(cli("census --code /no/such/file.code").exit_code == 1);
    const std::string bad = dir.file("bad.code", "3 1\n1x1\n");
    CHECK(cli("census --code " + bad).exit_code == 1);
    CHECK(cli("nonsense-subcommand").exit_code == 1);
    CHECK(cli("census").exit_code == 1); // missing --code
    const std::string loop = dir.file("loop.graph", "2 1\n0 0\n");
    CHECK(cli("count-thin --graph " + loop).exit_code == 1);
}

TEST_CASE("reports are byte-identical modulo elapsed_ms") {
    procutil::TempDir dir;
    const std::string code =
        dir.file("mc.code", "6 2\n110010\n011001\n");
    const std::string cmd =
        "montecarlo --code " + code + " --trials 5000 --seed 42";
    auto a = cli(cmd);
    auto b = cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(stable_dump(a.out) == stable_dump(b.out));
    auto c = cli("montecarlo --code " + code + " --trials 5000 --seed 43");
    CHECK(stable_dump(a.out) != stable_dump(c.out));
}

TEST_CASE("--threads never changes numeric output") {
    procutil::TempDir dir;
    const std::string code =
        dir.file("t.code", "12 4\n110010110100\n011001011010\n000111000111\n101010101010\n");
    auto one = cli("census --code " + code + " --threads 1");
    auto four = cli("census --code " + code + " --threads 4");
    auto eight = cli("census --code " + code + " --threads 8");
    CHECK(one.exit_code == 0);
    CHECK(stable_dump(one.out) == stable_dump(four.out));
    CHECK(stable_dump(one.out) == stable_dump(eight.out));

    auto mc1 = cli("montecarlo --code " + code + " --trials 9999 --threads 1");
    auto mc8 = cli("montecarlo --code " + code + " --trials 9999 --threads 8");
    CHECK(stable_dump(mc1.out) == stable_dump(mc8.out));
}

TEST_CASE("small: heuristic NOT_FOUND exits 3, exact succeeds") {
    procutil::TempDir dir;
    const std::string code = dir.file("rep31.code", kRep31);

    // For the repetition code the coset maxima have sizes max(|S0|, 3-|S0|),
    // so a start of size 0 or 3 maximizes to the full set, above the budget
    // of 2. Find a seed whose first draw is one of those starts.
    std::uint64_t bad_seed = 0;
    bool found = false;
    for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
        sparsecode::SplitMix64 gen = sparsecode::stream_for(seed, 0);
        const std::uint64_t word = gen.next() & 0x7;
        if (word == 0 || word == 7) {
            bad_seed = seed;
            found = true;
        }
    }
    REQUIRE(found);
    auto miss = cli("small --code " + code +
                    " --mode heuristic --restarts 1 --seed " +
                    std::to_string(bad_seed));
    CHECK(miss.exit_code == 3);
    CHECK(parse_report(miss.out)["result"]["found"] == false);

    auto exact = cli("small --code " + code + " --mode exact");
    CHECK(exact.exit_code == 0);
    json report = parse_report(exact.out);
    CHECK(report["result"]["found"] == true);
    CHECK(report["result"]["budget"] == 2);
    CHECK(report["result"]["size"] == 2);
}

TEST_CASE("bounds command") {
    auto run = cli("bounds --n 100 --k 10");
    CHECK(run.exit_code == 0);
    json report = parse_report(run.out);
    CHECK(report["result"]["epsilon_closed"].get<double>() ==
          doctest::Approx(0.1861648705529517).epsilon(1e-12));
    CHECK(report["result"]["c_const"].get<double>() ==
          doctest::Approx(2.0099646336731722).epsilon(1e-12));
    CHECK(report["result"]["count_floor"] == "1237940039285380274899124224");
    CHECK(report["result"]["epsilon_root"].get<double>() ==
          doctest::Approx(0.18398065367639233).epsilon(1e-9));

    // Degenerate k = n: no root, budget clamped.
    auto square = cli("bounds --n 8 --k 8");
    json sq = parse_report(square.out);
    CHECK(sq["result"]["epsilon_root"].is_null());
    CHECK(sq["result"]["budget_small"] == 8.0);

    CHECK(cli("bounds --n 4 --k 9").exit_code == 1);
}

TEST_CASE("cut-space emits a loadable code file") {
    procutil::TempDir dir;
    const std::string graph = dir.file("k3.graph", kTriangle);
    const std::string out = (dir.path() / "k3.code").string();
    auto run = cli("cut-space --graph " + graph + " --code-out " + out);
    CHECK(run.exit_code == 0);
    json report = parse_report(run.out);
    CHECK(report["k"] == 2);
    CHECK(report["result"]["dimension"] == 2);
    CHECK(report["result"]["generator_rows"][0] == "110");

    auto census = cli("census --code " + out + " --alpha 1/2");
    CHECK(census.exit_code == 0);
    CHECK(parse_report(census.out)["result"]["count"] == "4");
}

TEST_CASE("thin / count-thin / find-thin") {
    procutil::TempDir dir;
    const std::string graph = dir.file("k3.graph", kTriangle);
    const std::string k4 = dir.file("k4.graph", kK4);

    auto thin = cli("thin --graph " + graph + " --set 1 --alpha 1/2");
    CHECK(thin.exit_code == 0);
    CHECK(parse_report(thin.out)["result"]["thin"] == true);

    auto fat = cli("thin --graph " + graph + " --set 1,2 --alpha 1/2");
    json fat_report = parse_report(fat.out);
    CHECK(fat_report["result"]["thin"] == false);
    CHECK(fat_report["result"].contains("witness_cut"));

    auto count = cli("count-thin --graph " + k4 + " --alpha 1/2");
    json count_report = parse_report(count.out);
    CHECK(count_report["result"]["count"] == "10");
    CHECK(count_report["result"]["lower_bound"] == "8");

    auto found = cli("find-thin --graph " + k4 + " --ell 1");
    CHECK(found.exit_code == 0);
    json find_report = parse_report(found.out);
    CHECK(find_report["result"]["thin"] == true);
    CHECK(find_report["result"]["size"] == 2);
}

TEST_CASE("hitting command in both shapes") {
    procutil::TempDir dir;
    const std::string graph = dir.file("k4.graph", kK4);
    const std::string out = (dir.path() / "k4.code").string();
    CHECK(cli("cut-space --graph " + graph + " --code-out " + out).exit_code ==
          0);

    auto check = cli("hitting --code " + out + " --set 1,4,6");
    CHECK(check.exit_code == 0);
    CHECK(parse_report(check.out)["result"]["hitting"] == true);

    auto greedy = cli("hitting --code " + out + " --seed 0");
    CHECK(greedy.exit_code == 0);
    json report = parse_report(greedy.out);
    CHECK(report["result"]["d"].get<int>() >= 1);
}

TEST_CASE("conjecture command") {
    procutil::TempDir dir;
    const std::string full =
        dir.file("full4.code", "4 4\n1000\n0100\n0010\n0001\n");
    auto miss = cli("conjecture --code " + full + " --alpha 1/2");
    CHECK(miss.exit_code == 0); // exhaustive miss is a definitive answer
    json report = parse_report(miss.out);
    CHECK(report["result"]["found"] == false);
    CHECK(report["result"]["definitive"] == true);

    const std::string rep = dir.file("rep31.code", kRep31);
    auto hit = cli("conjecture --code " + rep + " --alpha 1/2");
    CHECK(hit.exit_code == 0);
    json hit_report = parse_report(hit.out);
    CHECK(hit_report["result"]["found"] == true);
    CHECK(hit_report["result"]["size"] == 2);
}

TEST_CASE("connectivity and maximize") {
    procutil::TempDir dir;
    const std::string k4 = dir.file("k4.graph", kK4);
    auto conn = cli("connectivity --graph " + k4);
    CHECK(parse_report(conn.out)["result"]["edge_connectivity"] == 3);

    const std::string path = dir.file("path.graph", "3 2\n0 1\n1 2\n");
    CHECK(parse_report(cli("connectivity --graph " + path).out)["result"]
                      ["edge_connectivity"] == 1);

    const std::string rep = dir.file("rep31.code", kRep31);
    auto max = cli("maximize --code " + rep + " --set ''");
    CHECK(max.exit_code == 0);
    json report = parse_report(max.out);
    CHECK(report["result"]["output_size"] == 3);
    CHECK(report["result"]["half_sparsifier"] == true);
}

TEST_CASE("--out writes a copy of the report") {
    procutil::TempDir dir;
    const std::string code = dir.file("rep31.code", kRep31);
    const std::string out = (dir.path() / "report.json").string();
    auto run = cli("census --code " + code + " --out " + out);
    CHECK(run.exit_code == 0);
    std::ifstream in(out, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run.out);
}

int run_all(int argc, char **argv) {
    doctest::Context context;
    context.applyCommandLine(argc - 1, argv);
    return context.run();
}

int main(int argc, char **argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests [doctest args] <binary>\n");
        return 2;
    }
    g_bin = argv[argc - 1];
    return run_all(argc, argv);
}
