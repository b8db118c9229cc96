// End-to-end checks of the command line tool. The binary under test is
// located through the APSET_CLI_PATH environment variable (set by the build);
// commands run through the shell with stdout/stderr captured to files.

#include <catch2/catch_amalgamated.hpp>

#include <apset/apset.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace apset;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::absolute("apset_cli_tmp");
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const char* exe = std::getenv("APSET_CLI_PATH");
    REQUIRE(exe != nullptr);
    fs::path out_path = work_dir() / "stdout.txt";
    fs::path err_path = work_dir() / "stderr.txt";
    std::string cmd = "\"" + std::string(exe) + "\" " + args + " >\"" + out_path.string() +
                      "\" 2>\"" + err_path.string() + "\"";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                cells.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        cells.push_back(cur);
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string path_of(const char* name) { return (work_dir() / name).string(); }

/// Generates a named input set once per process so every test case can run
/// in isolation.
void ensure_set(const char* name, const std::string& gen_args) {
    static std::set<std::string> done;
    if (done.count(name)) return;
    auto r = run_cli("generate " + gen_args + " --output " + path_of(name));
    REQUIRE(r.status == 0);
    done.insert(name);
}

} // namespace

TEST_CASE("selftest subcommand passes", "[cli]") {
    auto r = run_cli("selftest --seed 5");
    CHECK(r.status == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
    CHECK(r.out.find("FAILED") == std::string::npos);
}

TEST_CASE("generate writes sets and sidecars for every family", "[cli]") {
    auto r = run_cli("generate --family kfree --k 2 --x 1000 --output " + path_of("sf.bin"));
    REQUIRE(r.status == 0);

    std::ifstream in(path_of("sf.bin"), std::ios::binary);
    auto loaded = read_set_binary(in);
    auto expect = gen_kfree(2, 1000);
    CHECK(loaded.limit() == 1000);
    CHECK(loaded.words() == expect.words());

    auto side = nlohmann::json::parse(slurp(path_of("sf.bin.json")));
    CHECK(side["family"] == "kfree");
    CHECK(side["params"]["k"] == 2);
    CHECK(side["x"] == 1000);
    CHECK(side["count"] == expect.count());
    CHECK(side["density"].get<double>() == density(expect));

    r = run_cli("generate --family beatty --r 2 --x 100 --text --output " + path_of("be.txt"));
    REQUIRE(r.status == 0);
    std::ifstream tin(path_of("be.txt"));
    CHECK(read_set_text(tin).words() == gen_beatty(2, 100).words());

    r = run_cli("generate --family periodic --q 4 --residues 1,2 --x 100 --output " +
                path_of("p4.bin"));
    REQUIRE(r.status == 0);
    std::ifstream pin(path_of("p4.bin"), std::ios::binary);
    CHECK(read_set_binary(pin).words() == gen_periodic(4, {1, 2}, 100).words());

    r = run_cli("generate --family multiplicative --rule drop_prime:2 --x 50 --output " +
                path_of("odd.bin"));
    REQUIRE(r.status == 0);
    std::ifstream oin(path_of("odd.bin"), std::ios::binary);
    CHECK(read_set_binary(oin).words() == gen_periodic(2, {1}, 50).words());
}

TEST_CASE("energy subcommand emits the expected table", "[cli]") {
    ensure_set("sf1e4.bin", "--family kfree --k 2 --x 10000");
    auto r = run_cli("energy --set " + path_of("sf1e4.bin") + " --arcs farey --Q 5,10");
    REQUIRE(r.status == 0);

    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"set", "x", "arcs", "Q", "major_measure",
                                              "major_energy", "minor_ratio"});
    CHECK(rows[1][1] == "10000");
    CHECK(rows[1][2] == "farey");
    CHECK(rows[1][3] == "5");

    // The printed ratios must round-trip to the library values.
    auto sf = gen_kfree(2, 10000);
    auto corr = autocorrelation(sf);
    double want5 = minor_arc_ratio(corr, farey_major_arcs(10000, 5));
    double want10 = minor_arc_ratio(corr, farey_major_arcs(10000, 10));
    CHECK(std::stod(rows[1][6]) == want5);
    CHECK(std::stod(rows[2][6]) == want10);
    CHECK(want10 < want5);
}

TEST_CASE("energy arc dumps are normalized arc listings", "[cli]") {
    ensure_set("sf1e4.bin", "--family kfree --k 2 --x 10000");
    auto r = run_cli("energy --set " + path_of("sf1e4.bin") +
                     " --arcs farey --Q 4 --dump-arcs " + path_of("arcs"));
    REQUIRE(r.status == 0);
    auto text = slurp(path_of("arcs-q4.txt"));
    std::ostringstream expect;
    write_arcs_text(expect, farey_major_arcs(10000, 4));
    CHECK(text == expect.str());
}

TEST_CASE("extremality subcommand, exact coefficients", "[cli]") {
    auto r = run_cli("extremality --kfree-theory 2 --Q 20");
    REQUIRE(r.status == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0][0] == "source");
    CHECK(rows[1][0] == "kfree-theory:2");
    CHECK(rows[1][1] == "0");

    auto prof = kfree_extremality_profile(2, 20);
    CHECK(std::stod(rows[20][4]) == prof.partial.back());
    CHECK(std::stod(rows[20][5]) == prof.inv_rho);

    // The gap column decreases as denominators accumulate.
    double prev = 1e9;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double gap = std::stod(rows[i][6]);
        CHECK(gap <= prev);
        prev = gap;
    }
}

TEST_CASE("extremality subcommand, empirical periodic set", "[cli]") {
    ensure_set("p3.bin", "--family periodic --q 3 --residues 1,2 --x 99999");
    auto r = run_cli("extremality --set " + path_of("p3.bin") + " --Q 3");
    REQUIRE(r.status == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(std::abs(std::stod(rows[3][6])) < 1e-9);     // gap closes at q = 3
}

TEST_CASE("spectrum subcommand lists surviving coefficients", "[cli]") {
    ensure_set("p3.bin", "--family periodic --q 3 --residues 1,2 --x 99999");
    auto r = run_cli("spectrum --set " + path_of("p3.bin") +
                     " --candidates rational:3 --threshold 0.05");
    REQUIRE(r.status == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"beta", "num", "den", "re", "im", "modulus"});
    CHECK_THAT(std::stod(rows[1][5]), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    CHECK_THAT(std::stod(rows[2][5]), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
    CHECK_THAT(std::stod(rows[3][5]), Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-12));
    CHECK(rows[1][2] == "1");                          // density entry at denominator 1
}

TEST_CASE("represent subcommand reports ratios and a summary", "[cli]") {
    ensure_set("b2.bin", "--family beatty --r 2 --x 2000");
    ensure_set("b3.bin", "--family beatty --r 3 --x 2000");
    auto r = run_cli("represent --setA " + path_of("b2.bin") + " --setB " + path_of("b3.bin") +
                     " --window 1500:1600 --main beatty");
    REQUIRE(r.status == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 102);
    CHECK(rows[0] == std::vector<std::string>{"n", "r", "main", "ratio"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double ratio = std::stod(rows[i][3]);
        CHECK(ratio > 0.9);
        CHECK(ratio < 1.1);
    }
    CHECK(r.err.find("mean=") != std::string::npos);
}

TEST_CASE("json output carries the same values", "[cli]") {
    ensure_set("sf1e4.bin", "--family kfree --k 2 --x 10000");
    auto csv = run_cli("energy --set " + path_of("sf1e4.bin") + " --arcs farey --Q 6");
    auto js = run_cli("energy --set " + path_of("sf1e4.bin") +
                      " --arcs farey --Q 6 --format json");
    REQUIRE(csv.status == 0);
    REQUIRE(js.status == 0);
    auto arr = nlohmann::json::parse(js.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    auto rows = parse_csv(csv.out);
    CHECK(arr[0]["minor_ratio"].get<double>() == std::stod(rows[1][6]));
    CHECK(arr[0]["x"].get<std::uint64_t>() == 10000);
}

TEST_CASE("identical invocations are byte-identical", "[cli]") {
    ensure_set("sf1e4.bin", "--family kfree --k 2 --x 10000");
    std::string cmd = "energy --set " + path_of("sf1e4.bin") + " --arcs sequence:beatty2 --Q 3";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    REQUIRE(!a.out.empty());
}

TEST_CASE("failures use the error prefix and a nonzero exit", "[cli]") {
    ensure_set("b2.bin", "--family beatty --r 2 --x 2000");
    ensure_set("b3.bin", "--family beatty --r 3 --x 2000");
    ensure_set("p3.bin", "--family periodic --q 3 --residues 1,2 --x 99999");
    auto r = run_cli("generate --family nosuch --x 10 --output " + path_of("no.bin"));
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);

    r = run_cli("energy --set " + path_of("missing.bin") + " --Q 2");
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);

    r = run_cli("represent --setA " + path_of("b2.bin") + " --setB " + path_of("b3.bin") +
                " --window 10-20 --main beatty");
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);

    r = run_cli("extremality --set " + path_of("p3.bin") + " --kfree-theory 2 --Q 3");
    CHECK(r.status == 1);
    CHECK(r.err.rfind("error: ", 0) == 0);
}
