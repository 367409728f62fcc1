// Text formats, manifests, inline instance generators, and the deterministic
// report emitters.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "graphlim/manifest.hpp"
#include "graphlim/report.hpp"

using namespace graphlim;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "graphlim-io-test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("graph files round trip byte for byte", "[io]") {
    const auto g = UnlabeledGraph::path(3);
    const std::string text = graph_to_string(g);
    REQUIRE(text == "3 2\n0 1\n1 2\n");
    REQUIRE(graph_to_string(graph_from_string(text)) == text);

    // Normalization happens on read: edge order and endpoint order are canonical.
    const auto shuffled = graph_from_string("3 2\n2 1\n1 0\n");
    REQUIRE(graph_to_string(shuffled) == text);

    REQUIRE_THROWS_AS(graph_from_string(""), std::invalid_argument);
    REQUIRE_THROWS_AS(graph_from_string("3 2\n0 1\n"), std::invalid_argument);   // truncated
    REQUIRE_THROWS_AS(graph_from_string("2 1\n0 5\n"), std::invalid_argument);   // bad vertex
    REQUIRE_THROWS_AS(graph_from_string("2 1\n0 0\n"), std::invalid_argument);   // loop
}

TEST_CASE("action files round trip and honor generator order", "[io]") {
    const GroupPresentation z2({"a", "b"}, {{1, 2, -1, -2}});
    const PermutationAction torus(z2, 4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
    const std::string text = action_to_string(torus);
    REQUIRE(action_to_string(action_from_string(text)) == text);
    const auto back = action_from_string(text);
    REQUIRE(back.images == torus.images);
    REQUIRE(back.presentation.generators == torus.presentation.generators);
    REQUIRE(back.presentation.relators == torus.presentation.relators);

    // Generator order comes from the "generators" array, not from JSON key
    // order (keys serialize alphabetically regardless).
    const std::string swapped = R"json({
        "degree": 2,
        "generators": ["b", "a"],
        "perms": {"a": [0, 1], "b": [1, 0]}
    })json";
    const auto parsed = action_from_string(swapped);
    REQUIRE(parsed.images[0] == std::vector<int>{1, 0});  // b first
    REQUIRE(parsed.images[1] == std::vector<int>{0, 1});

    REQUIRE_THROWS_AS(action_from_string("not json"), std::invalid_argument);
    REQUIRE_THROWS_AS(action_from_string(R"json({"generators": ["a"], "perms": {"a": [0]}})json"),
                      std::invalid_argument);  // missing degree
    REQUIRE_THROWS_AS(action_from_string(R"json({"degree": 1, "generators": ["a"], "perms": {}})json"),
                      std::invalid_argument);  // missing permutation for a
    REQUIRE_THROWS_AS(
        action_from_string(R"json({"degree": 1, "generators": ["a"], "relators": 3, "perms": {"a": [0]}})json"),
        std::invalid_argument);
}

TEST_CASE("complex files round trip byte for byte", "[io]") {
    const auto filled = FiniteComplex::filled_triangle();
    const std::string text = complex_to_string(filled);
    REQUIRE(text == "complex 2\ncells 0 3\n0\n1\n2\ncells 1 3\n0 1\n0 2\n1 2\ncells 2 1\n0 1 2\n");
    REQUIRE(complex_to_string(complex_from_string(text)) == text);
    REQUIRE(complex_from_string(text) == filled);

    REQUIRE_THROWS_AS(complex_from_string("simplicial 2\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(complex_from_string("complex 1\ncells 0 2\n0\n1\ncells 1 1\n0"),
                      std::invalid_argument);  // truncated final cell
    REQUIRE_THROWS_AS(complex_from_string("complex 1\ncells 0 1\n0\ncells 1 1\n0 1\n"),
                      std::invalid_argument);  // edge 0-1 needs vertex 1
}

TEST_CASE("matrix files round trip byte for byte", "[io]") {
    const auto swap = IntSymMatrix(IntMatrix{{Int(0), Int(1)}, {Int(1), Int(0)}});
    const std::string text = matrix_to_string(swap);
    REQUIRE(text == "2\n0 1\n1 0\n");
    REQUIRE(matrix_to_string(matrix_from_string(text)) == text);

    REQUIRE_THROWS_AS(matrix_from_string(""), std::invalid_argument);
    REQUIRE_THROWS_AS(matrix_from_string("2\n0 1\n1\n"), std::invalid_argument);  // truncated
    REQUIRE_THROWS_AS(matrix_from_string("2\n0 x\n1 0\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(matrix_from_string("2\n0 1\n2 0\n"), std::invalid_argument);  // asymmetric
}

TEST_CASE("manifest parsing and validation", "[io]") {
    const auto j = Json::parse(R"json({
        "schema": 1,
        "kind": "graphs",
        "instances": ["cycle(6)", "sub/stored.graph"],
        "grids": {"L": [0, 1, 2], "eps": [0.5, 0.1]},
        "n_0": 6,
        "jobs": 2
    })json");
    const auto m = manifest_from_json(j, "/data");
    REQUIRE(m.kind == "graphs");
    REQUIRE(m.instances.size() == 2);
    REQUIRE(m.n_0 == 6);
    REQUIRE(m.jobs == 2);
    REQUIRE(m.base_dir == "/data");
    REQUIRE(m.has_grid("L"));
    REQUIRE(m.int_grid("L") == std::vector<long>{0, 1, 2});
    REQUIRE(m.real_grid("eps") == std::vector<double>{0.5, 0.1});
    REQUIRE_THROWS_AS(m.int_grid("eps"), std::invalid_argument);      // not integers
    REQUIRE_THROWS_AS(m.int_grid("missing"), std::invalid_argument);  // absent grid

    auto reject = [](const char* text) {
        REQUIRE_THROWS_AS(manifest_from_json(Json::parse(text)), std::invalid_argument);
    };
    reject(R"json({"instances": ["cycle(4)"]})json");                          // missing kind
    reject(R"json({"kind": "widgets", "instances": ["cycle(4)"]})json");       // unknown kind
    reject(R"json({"kind": "graphs"})json");                                   // missing instances
    reject(R"json({"kind": "graphs", "instances": []})json");                  // empty instances
    reject(R"json({"kind": "graphs", "instances": [7]})json");                 // non-string instance
    reject(R"json({"kind": "graphs", "instances": ["cycle(4)"], "grids": {"L": []}})json");
    reject(R"json({"kind": "graphs", "instances": ["cycle(4)"], "jobs": -1})json");
    reject(R"json({"kind": "graphs", "instances": ["cycle(4)"], "n_0": "soon"})json");

    // Round trip through JSON keeps the grids.
    const auto again = manifest_from_json(manifest_to_json(m), m.base_dir);
    REQUIRE(again.kind == m.kind);
    REQUIRE(again.instances == m.instances);
    REQUIRE(again.int_grid("L") == m.int_grid("L"));
}

TEST_CASE("inline instance specs", "[io]") {
    const auto spec = parse_inline_spec("cycle(8)");
    REQUIRE(spec.has_value());
    REQUIRE(spec->name == "cycle");
    REQUIRE(spec->args == std::vector<long>{8});
    REQUIRE(parse_inline_spec("random-regular(3, 10, 7)")->args == std::vector<long>{3, 10, 7});
    REQUIRE_FALSE(parse_inline_spec("stored.graph").has_value());

    REQUIRE_THROWS_AS(parse_inline_spec("cycle(8"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_inline_spec("cycle(eight)"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_inline_spec("cycle(,8)"), std::invalid_argument);

    REQUIRE(instantiate_graph("cycle(5)", "") == UnlabeledGraph::cycle(5));
    REQUIRE(instantiate_graph("complete(4)", "").edge_count() == 6);
    REQUIRE(instantiate_graph("random-regular(3, 10, 7)", "").vertex_count() == 10);
    REQUIRE_THROWS_AS(instantiate_graph("hypercube(3)", ""), std::invalid_argument);

    // Random families refuse to run without an explicit seed.
    REQUIRE_THROWS_WITH(instantiate_graph("random-regular(3, 10)", ""),
                        Catch::Matchers::ContainsSubstring("seed"));
    REQUIRE_THROWS_WITH(instantiate_graph("random-schreier(2, 10)", ""),
                        Catch::Matchers::ContainsSubstring("seed"));
    REQUIRE_THROWS_WITH(instantiate_action("random-schreier(2)", ""),
                        Catch::Matchers::ContainsSubstring("seed"));

    REQUIRE(instantiate_action("cyclic(6)", "").degree == 6);
    REQUIRE(instantiate_complex("simplex(2)", "") == FiniteComplex::filled_triangle());
    REQUIRE(instantiate_matrix("matching-laplacian(6)", "").size() == 6);
    REQUIRE_THROWS_AS(instantiate_matrix("matching-laplacian(5)", ""), std::invalid_argument);
}

TEST_CASE("instance paths resolve relative to the manifest directory", "[io]") {
    const auto dir = scratch_dir();
    write_file((dir / "stored.graph").string(), graph_to_string(UnlabeledGraph::cycle(7)));
    const auto manifest_path = dir / "seq.json";
    write_file(manifest_path.string(),
               R"json({"kind": "graphs", "instances": ["stored.graph", "cycle(4)"]})json");

    const auto m = read_manifest_file(manifest_path.string());
    REQUIRE(m.base_dir == dir.string());
    const auto seq = load_graph_sequence(m);
    REQUIRE(seq.size() == 2);
    REQUIRE(seq[0].first == 7);  // positions are vertex counts
    REQUIRE(seq[0].second == UnlabeledGraph::cycle(7));
    REQUIRE(seq[1].first == 4);

    REQUIRE_THROWS_AS(read_manifest_file((dir / "absent.json").string()), std::invalid_argument);
    write_file((dir / "broken.json").string(), "{");
    REQUIRE_THROWS_AS(read_manifest_file((dir / "broken.json").string()), std::invalid_argument);
}

TEST_CASE("sequence loaders check the manifest kind", "[io]") {
    const auto graphs = manifest_from_json(
        Json::parse(R"json({"kind": "graphs", "instances": ["cycle(4)"]})json"));
    REQUIRE_THROWS_AS(load_action_sequence(graphs), std::invalid_argument);
    REQUIRE_THROWS_AS(load_complex_sequence(graphs), std::invalid_argument);
    REQUIRE_THROWS_AS(load_matrix_sequence(graphs), std::invalid_argument);

    const auto actions = manifest_from_json(
        Json::parse(R"json({"kind": "actions", "instances": ["cyclic(6)", "random-schreier(2, 10, 7)"]})json"));
    const auto action_seq = load_action_sequence(actions);
    REQUIRE(action_seq[0].first == 6);
    REQUIRE(action_seq[1].first == 10);

    const auto complexes = manifest_from_json(
        Json::parse(R"json({"kind": "complexes", "instances": ["simplex(2)"]})json"));
    REQUIRE(load_complex_sequence(complexes)[0].first == 3);  // 0-cell count

    const auto matrices = manifest_from_json(Json::parse(
        R"json({"kind": "matrices", "instances": ["cycle-laplacian(5)", "path-laplacian(4)", "matching-laplacian(6)"]})json"));
    const auto matrix_seq = load_matrix_sequence(matrices);
    REQUIRE(matrix_seq[0].first == 5);
    REQUIRE(matrix_seq[1].first == 4);
    REQUIRE(matrix_seq[2].first == 6);
}

TEST_CASE("reports emit decimal-free deterministic CSV", "[io]") {
    Report report;
    report.command = "ccost --lmax 4";
    report.provenance["seed"] = "7";
    report.provenance["mode"] = "exact";
    report.add_column("n", ColumnType::integer);
    report.add_column("cost", ColumnType::rational);
    report.add_column("estimate", ColumnType::nano);
    report.add_column("note", ColumnType::text);
    report.add_row({4L, rat(3, 4), 0.75, std::string("ok")});
    report.add_row({8L, rat(-1, 8), -0.125, std::string("has,comma\nand newline")});

    const std::string csv = report.to_csv();
    REQUIRE(csv ==
            "#schema=1\n"
            "#command=ccost --lmax 4\n"
            "#mode=exact\n"
            "#seed=7\n"
            "n,cost_num,cost_den,estimate_nano,note\n"
            "4,3,4,750000000,ok\n"
            "8,-1,8,-125000000,has comma and newline\n");
    REQUIRE(csv.find('.') == std::string::npos);

    // Identical content yields identical bytes.
    REQUIRE(csv == report.to_csv());

    const auto j = report.to_json();
    REQUIRE(j["schema"] == 1);
    REQUIRE(j["provenance"]["seed"] == "7");
    REQUIRE(j["rows"][0]["cost"] == "3/4");
    REQUIRE(j["rows"][0]["estimate_nano"] == 750000000);
    REQUIRE(j["rows"][1]["n"] == 8);
    REQUIRE(j["rows"][1]["note"] == "has,comma\nand newline");  // JSON needs no sanitizing
}

TEST_CASE("reports reject malformed rows", "[io]") {
    Report report;
    report.add_column("n", ColumnType::integer);
    report.add_column("cost", ColumnType::rational);
    REQUIRE_THROWS_AS(report.add_row({4L}), std::logic_error);                    // width
    REQUIRE_THROWS_AS(report.add_row({4L, 0.5}), std::logic_error);               // type
    REQUIRE_THROWS_AS(report.add_row({rat(4, 1), rat(1, 2)}), std::logic_error);  // type
    REQUIRE_NOTHROW(report.add_row({4L, rat(1, 2)}));

    REQUIRE(Report::to_nano(0.5) == 500000000);
    REQUIRE(Report::to_nano(-0.25) == -250000000);
    REQUIRE(Report::to_nano(1e-9) == 1);
    REQUIRE_THROWS_AS(Report::to_nano(1e10), std::logic_error);  // out of nanounit range
}

TEST_CASE("svg plots are well formed", "[io]") {
    PlotSeries series;
    series.label = "cost";
    series.points = {{4, 0.75}, {6, 0.8333}, {8, 0.875}};
    const auto svg = render_svg_plot({series}, "n", "cost");
    REQUIRE(svg.rfind("<svg", 0) == 0);
    REQUIRE(svg.find("<polyline") != std::string::npos);
    REQUIRE(svg.find(">cost</text>") != std::string::npos);
    REQUIRE(svg.find(">n</text>") != std::string::npos);
    REQUIRE(svg.substr(svg.size() - 7) == "</svg>\n");

    // No points still renders axes and labels.
    const auto empty = render_svg_plot({}, "x", "y");
    REQUIRE(empty.rfind("<svg", 0) == 0);
    REQUIRE(empty.find("<polyline") == std::string::npos);
}
