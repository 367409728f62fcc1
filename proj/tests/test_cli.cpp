// End-to-end tests for the command-line tool: every subcommand is exercised
// through a real process, and numeric output is checked against the library
// called directly, so these tests pin the plumbing (argument parsing, file
// resolution, report formatting, exit codes) rather than re-deriving math.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "graphlim/graphlim.hpp"

namespace fs = std::filesystem;
using namespace graphlim;
using Catch::Matchers::ContainsSubstring;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / "graphlim-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string samples() { return GRAPHLIM_SAMPLES; }

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_path = scratch_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_path = scratch_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string command = std::string(GRAPHLIM_BIN) + " " + args + " > " +
                                out_path.string() + " 2> " + err_path.string();
    const int raw = std::system(command.c_str());
    REQUIRE(raw != -1);
    CliResult result;
    result.code = WEXITSTATUS(raw);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

long data_row_count(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    long rows = 0;
    bool seen_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!seen_header) {
            seen_header = true;  // column header line
            continue;
        }
        ++rows;
    }
    return rows;
}

}  // namespace

TEST_CASE("lipcost resolves stored graphs and picks the exact solver", "[cli]") {
    const std::string args = "lipcost --graph " + samples() + "/cycle8.graph --L 3";
    const CliResult first = run_cli(args);
    REQUIRE(first.code == 0);
    CHECK_THAT(first.out, ContainsSubstring("#command=lipcost"));
    CHECK_THAT(first.out, ContainsSubstring("#mode=exact"));
    CHECK_THAT(first.out, ContainsSubstring("n,L,cost_num,cost_den,exact_flag,edges_kept"));
    CHECK_THAT(first.out, ContainsSubstring("8,3,7,8,1,7"));
    CHECK(first.out.find('.') == std::string::npos);
    CHECK_THAT(first.err, ContainsSubstring("# wall_ms="));
    CHECK(first.out.find("wall_ms") == std::string::npos);

    const CliResult second = run_cli(args);
    REQUIRE(second.code == 0);
    CHECK(second.out == first.out);  // reports are byte-deterministic
}

TEST_CASE("lipcost json rows carry rationals as reduced fractions", "[cli]") {
    const CliResult r = run_cli("lipcost --graph 'cycle(8)' --L 3 --out json");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("command").get<std::string>() == "lipcost");
    CHECK(j.at("provenance").at("mode").get<std::string>() == "exact");
    REQUIRE(j.at("rows").size() == 1);
    const auto& row = j.at("rows").at(0);
    CHECK(row.at("n").get<long>() == 8);
    CHECK(row.at("L").get<long>() == 3);
    CHECK(row.at("cost").get<std::string>() == "7/8");
    CHECK(row.at("exact_flag").get<long>() == 1);
}

TEST_CASE("lipcost heuristic mode is seeded and reproducible", "[cli]") {
    const std::string args = "lipcost --graph 'cycle(12)' --L 3 --heuristic --seed 5";
    const CliResult first = run_cli(args);
    REQUIRE(first.code == 0);
    CHECK_THAT(first.out, ContainsSubstring("#mode=heuristic"));
    CHECK_THAT(first.out, ContainsSubstring("#seed=5"));

    const auto expected = lip_cost_heuristic(UnlabeledGraph::cycle(12), 3, 5);
    const std::string row = "12,3," + num_string(expected.cost) + "," +
                            den_string(expected.cost) + "," + (expected.exact ? "1" : "0") + "," +
                            std::to_string(expected.edges.size());
    CHECK_THAT(first.out, ContainsSubstring(row));

    const CliResult second = run_cli(args);
    CHECK(second.out == first.out);
}

TEST_CASE("ccost matches the library on the bundled cycle manifest", "[cli]") {
    const std::string args =
        "ccost --manifest " + samples() + "/seq_cycles.json --Lmax 4 --jobs 1";
    const CliResult r = run_cli(args);
    REQUIRE(r.code == 0);

    const auto manifest = read_manifest_file(samples() + "/seq_cycles.json");
    const auto seq = load_graph_sequence(manifest);
    const auto table = ccost_table(seq, 4, manifest.n_0, 10, 24, 0, 64, 1);
    CHECK_THAT(r.out, ContainsSubstring("#ccost_estimate=" + to_string(table.ccost_estimate)));
    CHECK_THAT(r.out, ContainsSubstring("#Lmax=4"));
    CHECK_THAT(r.out, ContainsSubstring("#n_0=8"));
    CHECK_THAT(r.out, ContainsSubstring("n,L,cost_num,cost_den,exact_flag,edges_kept"));
    CHECK(data_row_count(r.out) == 20);  // five instances, four stretch bounds
    CHECK(r.out.find('.') == std::string::npos);

    const CliResult parallel = run_cli(
        "ccost --manifest " + samples() + "/seq_cycles.json --Lmax 4 --jobs 2");
    REQUIRE(parallel.code == 0);
    CHECK(parallel.out == r.out);  // worker count never changes the report
}

TEST_CASE("schreier emits the labeled edge list of the bundled torus action", "[cli]") {
    const CliResult r = run_cli("schreier --action " + samples() + "/torus3.json");
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("#command=schreier"));
    CHECK_THAT(r.out, ContainsSubstring("#degree=9"));
    CHECK_THAT(r.out, ContainsSubstring("#generators=2"));
    CHECK_THAT(r.out, ContainsSubstring("#relators=1"));
    CHECK_THAT(r.out, ContainsSubstring("#transitive=1"));
    CHECK_THAT(r.out, ContainsSubstring("#simple_edges=18"));
    CHECK_THAT(r.out, ContainsSubstring("generator,source,target"));
    CHECK_THAT(r.out, ContainsSubstring("0,0,1"));  // first generator shifts within a block
    CHECK_THAT(r.out, ContainsSubstring("1,0,3"));  // second generator jumps across blocks
    CHECK(data_row_count(r.out) == 18);  // two generators, nine sources each
}

TEST_CASE("generate and rank-gradient cooperate on iterated double covers", "[cli]") {
    const fs::path dir = scratch_dir() / "covers";
    fs::create_directories(dir);
    const CliResult gen = run_cli("generate --family 'double-cover-chain(2,3,0)' --out-dir " +
                                  dir.string() + " --prefix cov");
    REQUIRE(gen.code == 0);
    for (int level = 0; level <= 3; ++level)
        CHECK(fs::exists(dir / ("cov_" + std::to_string(level) + ".json")));
    REQUIRE(fs::exists(dir / "cov_chain.json"));

    const CliResult r = run_cli("rank-gradient --chain " + (dir / "cov_chain.json").string());
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("#levels=4"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_gradient_lower=1"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_gradient_upper=1"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_cost_lower=2"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_cost_upper=2"));
    CHECK_THAT(r.out, ContainsSubstring("1,2,2,1,"));   // base level: index 1, rank 2, exact
    CHECK_THAT(r.out, ContainsSubstring("8,9,9,1,"));   // index 8 cover: rank 9, exact
    CHECK(data_row_count(r.out) == 4);
}

TEST_CASE("rank-gradient reports vanishing gradients for cyclic chains", "[cli]") {
    const CliResult r = run_cli("rank-gradient --chain " + samples() + "/seq_cyclic.json");
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("#summary_gradient_lower=0"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_gradient_upper=0"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_cost_lower=1"));
    CHECK_THAT(r.out, ContainsSubstring("#summary_cost_upper=1"));
    CHECK(data_row_count(r.out) == 4);
}

TEST_CASE("farber reports deviations for every word length up to R", "[cli]") {
    const CliResult cyclic = run_cli("farber --action 'cyclic(12)' --R 12");
    REQUIRE(cyclic.code == 0);
    CHECK_THAT(cyclic.out,
               ContainsSubstring("R,farber_deviation_num,farber_deviation_den,"
                                 "relator_deviation_num,relator_deviation_den"));
    CHECK(data_row_count(cyclic.out) == 12);
    CHECK_THAT(cyclic.out, ContainsSubstring("1,0,1,0,1"));   // short words move every point
    CHECK_THAT(cyclic.out, ContainsSubstring("12,1,1,0,1"));  // the full turn fixes them all

    const CliResult torus = run_cli("farber --action " + samples() + "/torus3.json --R 3");
    REQUIRE(torus.code == 0);
    CHECK_THAT(torus.out, ContainsSubstring("#degree=9"));
    CHECK_THAT(torus.out, ContainsSubstring("2,0,1,0,1"));  // length-2 words are fixed-point free
    CHECK_THAT(torus.out, ContainsSubstring("3,1,1,0,1"));  // a cubed is the identity on 9 points
}

TEST_CASE("rips writes complexes that feed back into betti", "[cli]") {
    const fs::path out = scratch_dir() / "c4.complex";
    const CliResult write = run_cli("rips --graph 'cycle(4)' --q 1 --dmax 2 --out-path " +
                                    out.string());
    REQUIRE(write.code == 0);
    REQUIRE(fs::exists(out));
    CHECK(slurp(out) == complex_to_string(rips_complex(UnlabeledGraph::cycle(4), 1, 2)));

    const CliResult stream = run_cli("rips --graph 'cycle(4)' --q 1 --dmax 2");
    REQUIRE(stream.code == 0);
    CHECK(stream.out == slurp(out));

    const CliResult betti_run = run_cli("betti --complex " + out.string() + " --i 1");
    REQUIRE(betti_run.code == 0);
    CHECK_THAT(betti_run.out, ContainsSubstring("#field=q"));
    CHECK_THAT(betti_run.out, ContainsSubstring("i,betti"));
    CHECK_THAT(betti_run.out, ContainsSubstring("1,1"));  // the square is one circle
}

TEST_CASE("betti handles inline simplices and prime fields", "[cli]") {
    const CliResult r = run_cli("betti --complex 'simplex(3)' --i 0 --field fp:2");
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("#field=fp:2"));
    CHECK_THAT(r.out, ContainsSubstring("#dimension=3"));
    CHECK_THAT(r.out, ContainsSubstring("0,1"));

    const CliResult composite = run_cli("betti --complex 'simplex(2)' --i 0 --field fp:9");
    CHECK(composite.code == 2);  // nine is not prime
    const CliResult junk = run_cli("betti --complex 'simplex(2)' --i 0 --field nope");
    CHECK(junk.code == 2);
    CHECK_THAT(junk.err, ContainsSubstring("input error"));
}

TEST_CASE("nabla computes homology image dimensions between stored complexes", "[cli]") {
    const CliResult r = run_cli("nabla --sub " + samples() + "/circle.complex --super " +
                                samples() + "/triangle.complex --i 1");
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("#command=nabla"));
    CHECK_THAT(r.out, ContainsSubstring("i,nabla_num,nabla_den"));
    CHECK_THAT(r.out, ContainsSubstring("1,0,1"));  // the circle dies inside the disk

    const CliResult backwards = run_cli("nabla --sub " + samples() + "/triangle.complex --super " +
                                        samples() + "/circle.complex --i 1");
    CHECK(backwards.code == 2);
    CHECK_THAT(backwards.err, ContainsSubstring("input error"));
}

TEST_CASE("beta-d pulls grids from the manifest and reports the corner", "[cli]") {
    const CliResult r = run_cli("beta-d --manifest " + samples() + "/seq_cycles.json --d 1");
    REQUIRE(r.code == 0);

    const auto manifest = read_manifest_file(samples() + "/seq_cycles.json");
    const auto seq = load_graph_sequence(manifest);
    const auto table =
        beta_d_table(seq, 1, {1, 2, 3}, {1, 2}, manifest.n_0, 4'000'000, 20'000'000, 1);
    CHECK_THAT(r.out, ContainsSubstring("#corner=" + to_string(table.corner)));
    CHECK_THAT(r.out, ContainsSubstring("#corner_conclusive=1"));
    CHECK_THAT(r.out, ContainsSubstring("position,n,q,p,value_num,value_den,conclusive,method"));
    CHECK(data_row_count(r.out) == 30);  // five instances, six grid cells each
    CHECK_THAT(r.out, ContainsSubstring("cycle-span"));

    const CliResult wrong_kind =
        run_cli("beta-d --manifest " + samples() + "/seq_laplacians.json --d 1");
    CHECK(wrong_kind.code == 2);
    CHECK_THAT(wrong_kind.err, ContainsSubstring("input error"));
}

TEST_CASE("elek-beta tables agree with the library", "[cli]") {
    const CliResult r =
        run_cli("elek-beta --manifest " + samples() + "/seq_cycles.json --field fp:2");
    REQUIRE(r.code == 0);

    const auto manifest = read_manifest_file(samples() + "/seq_cycles.json");
    const auto seq = load_graph_sequence(manifest);
    const auto table = elek_beta(seq, Field::Fp(2), {1, 2, 3}, 50'000'000, manifest.n_0, 1);
    CHECK_THAT(r.out, ContainsSubstring("#corner_first=" + to_string(table.corner_first)));
    CHECK_THAT(r.out, ContainsSubstring("#corner_second=" + to_string(table.corner_second)));
    CHECK_THAT(r.out, ContainsSubstring("#corner_conclusive=1"));
    CHECK_THAT(r.out, ContainsSubstring("#field=fp:2"));
    CHECK(data_row_count(r.out) == 15);  // five instances, three cycle-length bounds
}

TEST_CASE("spectral bins carry nano endpoints and exact masses", "[cli]") {
    const CliResult r = run_cli("spectral --matrix " + samples() + "/swap2.matrix --bins 4");
    REQUIRE(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("#k=2"));
    CHECK_THAT(r.out, ContainsSubstring("#exact_zero_dim=0"));
    CHECK_THAT(r.out, ContainsSubstring("#zero_atom_mass=0"));
    CHECK_THAT(r.out, ContainsSubstring("bin_lo_nano,bin_hi_nano,count,mass_num,mass_den"));
    CHECK_THAT(r.out, ContainsSubstring("-1000000000,-500000000,1,1,2"));
    CHECK_THAT(r.out, ContainsSubstring("500000000,1000000000,1,1,2"));
    CHECK(data_row_count(r.out) == 4);
    CHECK(r.out.find('.') == std::string::npos);

    const CliResult bad_bins = run_cli("spectral --matrix " + samples() +
                                       "/swap2.matrix --bins 0");
    CHECK(bad_bins.code == 2);
}

TEST_CASE("lueck-check rows match the library bound", "[cli]") {
    const CliResult r =
        run_cli("lueck-check --matrix 'path-laplacian(10)' --eps 0.5 --out json");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("command").get<std::string>() == "lueck-check");
    CHECK(j.at("provenance").at("trace_square").get<std::string>() == "52");
    REQUIRE(j.at("rows").size() == 1);
    const auto& row = j.at("rows").at(0);
    CHECK(row.at("k").get<long>() == 10);
    CHECK(row.at("eps_nano").get<long long>() == 500000000);
    CHECK(row.at("kernel_dim").get<long>() == 1);
    CHECK(row.at("near_zero_count").get<long>() == 3);
    CHECK(row.at("pass").get<long>() == 1);

    const auto check = lueck_bound_check(graph_laplacian(UnlabeledGraph::path(10)), 0.5);
    CHECK(row.at("lhs").get<std::string>() == to_string(check.lhs));
    CHECK(row.at("rhs_nano").get<long long>() == Report::to_nano(check.rhs));

    const CliResult bad_eps =
        run_cli("lueck-check --matrix 'path-laplacian(10)' --eps 1.5");
    CHECK(bad_eps.code == 2);
    CHECK_THAT(bad_eps.err, ContainsSubstring("input error"));
}

TEST_CASE("kernel-seq honors manifest and flag tail windows", "[cli]") {
    const CliResult manifest_window =
        run_cli("kernel-seq --manifest " + samples() + "/seq_laplacians.json");
    REQUIRE(manifest_window.code == 0);
    CHECK_THAT(manifest_window.out, ContainsSubstring("#n_0=8"));
    CHECK_THAT(manifest_window.out, ContainsSubstring("#tail_min=1/12"));
    CHECK_THAT(manifest_window.out, ContainsSubstring("#tail_max=1/8"));
    CHECK_THAT(manifest_window.out,
               ContainsSubstring("position,k,kernel_dim,normalized_num,normalized_den"));
    CHECK_THAT(manifest_window.out, ContainsSubstring("4,4,1,1,4"));
    CHECK_THAT(manifest_window.out, ContainsSubstring("12,12,1,1,12"));
    CHECK(data_row_count(manifest_window.out) == 4);

    // No instance reaches the override window, so the tail falls back to all rows.
    const CliResult empty_window =
        run_cli("kernel-seq --manifest " + samples() + "/seq_laplacians.json --n0 100");
    REQUIRE(empty_window.code == 0);
    CHECK_THAT(empty_window.out, ContainsSubstring("#tail_min=1/12"));
    CHECK_THAT(empty_window.out, ContainsSubstring("#tail_max=1/4"));
}

TEST_CASE("generate writes instances that round trip through the readers", "[cli]") {
    const fs::path out = scratch_dir() / "c6.graph";
    const CliResult graph = run_cli("generate --family 'cycle(6)' --out-path " + out.string());
    REQUIRE(graph.code == 0);
    CHECK(slurp(out) == graph_to_string(UnlabeledGraph::cycle(6)));

    const CliResult action = run_cli("generate --family 'cyclic(4)'");
    REQUIRE(action.code == 0);
    CHECK(action.out == action_to_string(cyclic_action(4)));

    const CliResult unseeded = run_cli("generate --family 'random-regular(3,10)'");
    CHECK(unseeded.code == 2);
    CHECK_THAT(unseeded.err, ContainsSubstring("seed"));

    const CliResult mismatched = run_cli("generate --family 'path(5)' --kind actions");
    CHECK(mismatched.code == 2);
}

TEST_CASE("output routing covers files and SVG plots", "[cli]") {
    const fs::path csv_path = scratch_dir() / "kernel.csv";
    const fs::path svg_path = scratch_dir() / "kernel.svg";
    const CliResult routed = run_cli("kernel-seq --manifest " + samples() +
                                     "/seq_laplacians.json --out-path " + csv_path.string() +
                                     " --emit-plot " + svg_path.string());
    REQUIRE(routed.code == 0);
    CHECK(routed.out.empty());  // the report went to the file

    const CliResult streamed =
        run_cli("kernel-seq --manifest " + samples() + "/seq_laplacians.json");
    CHECK(slurp(csv_path) == streamed.out);

    const std::string svg = slurp(svg_path);
    CHECK_THAT(svg, ContainsSubstring("<svg"));
    CHECK_THAT(svg, ContainsSubstring("<polyline"));
    CHECK_THAT(svg, ContainsSubstring("</svg>"));

    const fs::path json_path = scratch_dir() / "kernel.json";
    const CliResult json_routed = run_cli("kernel-seq --manifest " + samples() +
                                          "/seq_laplacians.json --out json --out-path " +
                                          json_path.string());
    REQUIRE(json_routed.code == 0);
    const Json j = Json::parse(slurp(json_path));
    CHECK(j.at("command").get<std::string>() == "kernel-seq");
    CHECK(j.at("rows").size() == 4);
}

TEST_CASE("argument and input failures use the documented exit codes", "[cli]") {
    CHECK(run_cli("frobnicate").code == 2);                               // unknown subcommand
    CHECK(run_cli("lipcost --graph 'cycle(4)'").code == 2);               // missing required flag
    CHECK(run_cli("lipcost --graph 'cycle(4)' --L 2 --out yaml").code == 2);  // bad enum value

    const CliResult missing = run_cli("lipcost --graph /nonexistent.graph --L 2");
    CHECK(missing.code == 2);
    CHECK_THAT(missing.err, ContainsSubstring("input error"));

    CHECK(run_cli("--help").code == 0);
}
