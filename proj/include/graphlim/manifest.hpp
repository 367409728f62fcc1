#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphlim/complex.hpp"
#include "graphlim/group.hpp"
#include "graphlim/prng.hpp"
#include "graphlim/schreier.hpp"
#include "graphlim/spectral.hpp"
#include "graphlim/unlabeled_graph.hpp"

namespace graphlim {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Small file helpers.
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

inline std::string join_path(const std::string& base, const std::string& rel) {
    if (rel.empty() || rel.front() == '/' || base.empty()) return rel;
    return base.back() == '/' ? base + rel : base + "/" + rel;
}

inline std::string dir_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

// ---------------------------------------------------------------------------
// Action files: JSON with degree, ordered generator symbols, relators as
// signed 1-based letter arrays, and one 0-indexed permutation per symbol.
// Generator order is taken from the "generators" array, never from key order.
// ---------------------------------------------------------------------------

inline Json action_to_json(const PermutationAction& a) {
    Json j;
    j["schema"] = 1;
    j["degree"] = a.degree;
    j["generators"] = a.presentation.generators;
    Json relators = Json::array();
    for (const auto& w : a.presentation.relators) relators.push_back(w);
    j["relators"] = std::move(relators);
    Json perms = Json::object();
    for (std::size_t g = 0; g < a.images.size(); ++g)
        perms[a.presentation.generators[g]] = a.images[g];
    j["perms"] = std::move(perms);
    return j;
}

inline PermutationAction action_from_json(const Json& j) {
    auto need = [&](const char* key) -> const Json& {
        if (!j.contains(key))
            throw std::invalid_argument(std::string("action file: missing field '") + key + "'");
        return j.at(key);
    };
    if (!need("degree").is_number_integer())
        throw std::invalid_argument("action file: field 'degree' must be an integer");
    const int degree = need("degree").get<int>();
    if (!need("generators").is_array())
        throw std::invalid_argument("action file: field 'generators' must be an array");
    std::vector<std::string> generators;
    for (const auto& g : j.at("generators")) {
        if (!g.is_string())
            throw std::invalid_argument("action file: generator symbols must be strings");
        generators.push_back(g.get<std::string>());
    }
    std::vector<Word> relators;
    if (j.contains("relators")) {
        if (!j.at("relators").is_array())
            throw std::invalid_argument("action file: field 'relators' must be an array");
        for (const auto& r : j.at("relators")) {
            if (!r.is_array())
                throw std::invalid_argument(
                    "action file: each relator must be an array of signed letter indices");
            relators.push_back(r.get<Word>());
        }
    }
    if (!need("perms").is_object())
        throw std::invalid_argument("action file: field 'perms' must be an object");
    std::vector<std::vector<int>> images;
    for (const auto& symbol : generators) {
        if (!j.at("perms").contains(symbol))
            throw std::invalid_argument("action file: missing permutation for generator '" +
                                        symbol + "'");
        images.push_back(j.at("perms").at(symbol).get<std::vector<int>>());
    }
    return PermutationAction(GroupPresentation(std::move(generators), std::move(relators)), degree,
                             std::move(images));
}

inline void write_action(std::ostream& os, const PermutationAction& a) {
    os << action_to_json(a).dump(2) << '\n';
}

inline PermutationAction read_action(std::istream& is) {
    Json j;
    try {
        is >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("action file: ") + e.what());
    }
    return action_from_json(j);
}

inline std::string action_to_string(const PermutationAction& a) {
    return action_to_json(a).dump(2) + "\n";
}

inline PermutationAction action_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_action(is);
}

// ---------------------------------------------------------------------------
// Built-in instance families.
// ---------------------------------------------------------------------------

inline UnlabeledGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return UnlabeledGraph(n, std::move(edges));
}

// Simple d-regular graph by the configuration model with rejection; the seed
// fully determines the result.
inline UnlabeledGraph random_regular_graph(int d, int n, std::uint64_t seed) {
    if (d < 0 || n < 1) throw std::invalid_argument("random-regular: need d >= 0 and n >= 1");
    if (d >= n) throw std::invalid_argument("random-regular: need d < n");
    if ((static_cast<long>(d) * n) % 2 != 0)
        throw std::invalid_argument("random-regular: d*n must be even");
    Rng rng(seed);
    const long stubs = static_cast<long>(d) * n;
    for (int attempt = 0; attempt < 4096; ++attempt) {
        const auto order = rng.permutation(static_cast<int>(stubs));
        std::vector<std::pair<int, int>> edges;
        bool ok = true;
        for (long s = 0; s + 1 < stubs && ok; s += 2) {
            int u = order[static_cast<std::size_t>(s)] % n;
            int v = order[static_cast<std::size_t>(s + 1)] % n;
            if (u == v) {
                ok = false;
                break;
            }
            if (u > v) std::swap(u, v);
            edges.emplace_back(u, v);
        }
        if (!ok) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return UnlabeledGraph(n, std::move(edges));
    }
    throw std::runtime_error("random-regular: no simple pairing found for these parameters");
}

// The integers acting cyclically on n cosets: one generator, one n-cycle.
inline PermutationAction cyclic_action(int n) {
    if (n < 1) throw std::invalid_argument("cyclic: degree must be >= 1");
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) perm[static_cast<std::size_t>(v)] = (v + 1) % n;
    return PermutationAction(GroupPresentation::free_group(1), n, {perm});
}

inline IntSymMatrix matching_laplacian(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("matching-laplacian: need an even vertex count >= 2");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; v += 2) edges.emplace_back(v, v + 1);
    return graph_laplacian(UnlabeledGraph(n, std::move(edges)));
}

// ---------------------------------------------------------------------------
// Sequence manifests.
// ---------------------------------------------------------------------------

struct SequenceManifest {
    int schema = 1;
    std::string kind;                     // graphs | actions | complexes | matrices
    std::vector<std::string> instances;   // file paths or inline generator specs
    std::map<std::string, Json> grids;    // named parameter grids (L, q, p, eps, R)
    long n_0 = 0;
    int jobs = 0;                         // 0 = caller decides
    std::string base_dir;                 // resolution root for relative instance paths

    bool has_grid(const std::string& name) const { return grids.count(name) > 0; }

    std::vector<long> int_grid(const std::string& name) const {
        const auto it = grids.find(name);
        if (it == grids.end())
            throw std::invalid_argument("manifest: missing grid '" + name + "'");
        std::vector<long> out;
        for (const auto& v : it->second) {
            if (!v.is_number_integer())
                throw std::invalid_argument("manifest grid '" + name + "': entries must be integers");
            out.push_back(v.get<long>());
        }
        return out;
    }

    std::vector<double> real_grid(const std::string& name) const {
        const auto it = grids.find(name);
        if (it == grids.end())
            throw std::invalid_argument("manifest: missing grid '" + name + "'");
        std::vector<double> out;
        for (const auto& v : it->second) {
            if (!v.is_number())
                throw std::invalid_argument("manifest grid '" + name + "': entries must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
};

inline Json manifest_to_json(const SequenceManifest& m) {
    Json j;
    j["schema"] = m.schema;
    j["kind"] = m.kind;
    j["instances"] = m.instances;
    Json grids = Json::object();
    for (const auto& [name, grid] : m.grids) grids[name] = grid;
    j["grids"] = std::move(grids);
    j["n_0"] = m.n_0;
    j["jobs"] = m.jobs;
    return j;
}

inline SequenceManifest manifest_from_json(const Json& j, std::string base_dir = {}) {
    SequenceManifest m;
    m.base_dir = std::move(base_dir);
    if (j.contains("schema")) {
        if (!j.at("schema").is_number_integer())
            throw std::invalid_argument("manifest field 'schema': must be an integer");
        m.schema = j.at("schema").get<int>();
    }
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw std::invalid_argument("manifest field 'kind': required string");
    m.kind = j.at("kind").get<std::string>();
    if (m.kind != "graphs" && m.kind != "actions" && m.kind != "complexes" && m.kind != "matrices")
        throw std::invalid_argument(
            "manifest field 'kind': must be one of graphs|actions|complexes|matrices, got '" +
            m.kind + "'");
    if (!j.contains("instances") || !j.at("instances").is_array() || j.at("instances").empty())
        throw std::invalid_argument("manifest field 'instances': required nonempty array");
    for (const auto& inst : j.at("instances")) {
        if (!inst.is_string())
            throw std::invalid_argument("manifest field 'instances': entries must be strings");
        m.instances.push_back(inst.get<std::string>());
    }
    if (j.contains("grids")) {
        if (!j.at("grids").is_object())
            throw std::invalid_argument("manifest field 'grids': must be an object of arrays");
        for (const auto& [name, grid] : j.at("grids").items()) {
            if (!grid.is_array() || grid.empty())
                throw std::invalid_argument("manifest grid '" + name + "': must be a nonempty array");
            m.grids[name] = grid;
        }
    }
    if (j.contains("n_0")) {
        if (!j.at("n_0").is_number_integer())
            throw std::invalid_argument("manifest field 'n_0': must be an integer");
        m.n_0 = j.at("n_0").get<long>();
    }
    if (j.contains("jobs")) {
        if (!j.at("jobs").is_number_integer() || j.at("jobs").get<long>() < 0)
            throw std::invalid_argument("manifest field 'jobs': must be a nonnegative integer");
        m.jobs = j.at("jobs").get<int>();
    }
    return m;
}

inline SequenceManifest read_manifest_file(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("manifest '" + path + "': " + e.what());
    }
    return manifest_from_json(j, dir_of(path));
}

// ---------------------------------------------------------------------------
// Inline generator specs: name(arg, ...) with integer arguments. Anything
// without a parenthesis is a file path. Random families require the explicit
// trailing seed argument.
// ---------------------------------------------------------------------------

struct InlineSpec {
    std::string name;
    std::vector<long> args;
};

inline std::optional<InlineSpec> parse_inline_spec(const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos) return std::nullopt;
    if (text.back() != ')')
        throw std::invalid_argument("instance '" + text + "': missing closing parenthesis");
    InlineSpec spec;
    spec.name = text.substr(0, open);
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::istringstream is(body);
    std::string token;
    while (std::getline(is, token, ',')) {
        // trim spaces
        const auto first = token.find_first_not_of(" \t");
        const auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw std::invalid_argument("instance '" + text + "': empty argument");
        token = token.substr(first, last - first + 1);
        try {
            std::size_t used = 0;
            const long value = std::stol(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            spec.args.push_back(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("instance '" + text + "': argument '" + token +
                                        "' is not an integer");
        }
    }
    return spec;
}

namespace detail {

inline void need_args(const InlineSpec& spec, std::size_t count, const char* usage) {
    if (spec.args.size() != count)
        throw std::invalid_argument("instance '" + spec.name + "': expected " + usage);
}

}  // namespace detail

inline UnlabeledGraph instantiate_graph(const std::string& text, const std::string& base_dir) {
    const auto spec = parse_inline_spec(text);
    if (!spec) {
        std::istringstream is(read_file(join_path(base_dir, text)));
        return read_graph(is);
    }
    if (spec->name == "cycle") {
        detail::need_args(*spec, 1, "cycle(n)");
        return UnlabeledGraph::cycle(static_cast<int>(spec->args[0]));
    }
    if (spec->name == "path") {
        detail::need_args(*spec, 1, "path(n)");
        return UnlabeledGraph::path(static_cast<int>(spec->args[0]));
    }
    if (spec->name == "complete") {
        detail::need_args(*spec, 1, "complete(n)");
        return complete_graph(static_cast<int>(spec->args[0]));
    }
    if (spec->name == "random-regular") {
        detail::need_args(*spec, 3, "random-regular(d, n, seed) — the seed is required");
        return random_regular_graph(static_cast<int>(spec->args[0]),
                                    static_cast<int>(spec->args[1]),
                                    static_cast<std::uint64_t>(spec->args[2]));
    }
    if (spec->name == "random-schreier") {
        detail::need_args(*spec, 3, "random-schreier(r, n, seed) — the seed is required");
        const auto action = random_schreier_action(static_cast<int>(spec->args[0]),
                                                   static_cast<int>(spec->args[1]),
                                                   static_cast<std::uint64_t>(spec->args[2]));
        return schreier_graph(action).simple_graph();
    }
    throw std::invalid_argument("unknown graph generator '" + spec->name + "'");
}

inline PermutationAction instantiate_action(const std::string& text, const std::string& base_dir) {
    const auto spec = parse_inline_spec(text);
    if (!spec) {
        std::istringstream is(read_file(join_path(base_dir, text)));
        return read_action(is);
    }
    if (spec->name == "cyclic") {
        detail::need_args(*spec, 1, "cyclic(n)");
        return cyclic_action(static_cast<int>(spec->args[0]));
    }
    if (spec->name == "random-schreier") {
        detail::need_args(*spec, 3, "random-schreier(r, n, seed) — the seed is required");
        return random_schreier_action(static_cast<int>(spec->args[0]),
                                      static_cast<int>(spec->args[1]),
                                      static_cast<std::uint64_t>(spec->args[2]));
    }
    throw std::invalid_argument("unknown action generator '" + spec->name + "'");
}

inline FiniteComplex instantiate_complex(const std::string& text, const std::string& base_dir) {
    const auto spec = parse_inline_spec(text);
    if (!spec) {
        std::istringstream is(read_file(join_path(base_dir, text)));
        return read_complex(is);
    }
    if (spec->name == "simplex") {
        detail::need_args(*spec, 1, "simplex(k)");
        return FiniteComplex::simplex(static_cast<int>(spec->args[0]));
    }
    throw std::invalid_argument("unknown complex generator '" + spec->name + "'");
}

inline IntSymMatrix instantiate_matrix(const std::string& text, const std::string& base_dir) {
    const auto spec = parse_inline_spec(text);
    if (!spec) {
        std::istringstream is(read_file(join_path(base_dir, text)));
        return read_matrix(is);
    }
    if (spec->name == "cycle-laplacian") {
        detail::need_args(*spec, 1, "cycle-laplacian(n)");
        return graph_laplacian(UnlabeledGraph::cycle(static_cast<int>(spec->args[0])));
    }
    if (spec->name == "path-laplacian") {
        detail::need_args(*spec, 1, "path-laplacian(n)");
        return graph_laplacian(UnlabeledGraph::path(static_cast<int>(spec->args[0])));
    }
    if (spec->name == "matching-laplacian") {
        detail::need_args(*spec, 1, "matching-laplacian(n)");
        return matching_laplacian(static_cast<int>(spec->args[0]));
    }
    throw std::invalid_argument("unknown matrix generator '" + spec->name + "'");
}

// ---------------------------------------------------------------------------
// Kind-checked sequence loaders; positions are instance sizes (vertex count,
// action degree, 0-cell count, matrix size) so tail windows are size windows.
// ---------------------------------------------------------------------------

namespace detail {

inline void need_kind(const SequenceManifest& m, const char* kind) {
    if (m.kind != kind)
        throw std::invalid_argument(std::string("manifest kind '") + m.kind + "' where '" + kind +
                                    "' is required");
}

}  // namespace detail

inline std::vector<std::pair<long, UnlabeledGraph>> load_graph_sequence(const SequenceManifest& m) {
    detail::need_kind(m, "graphs");
    std::vector<std::pair<long, UnlabeledGraph>> out;
    for (const auto& inst : m.instances) {
        auto g = instantiate_graph(inst, m.base_dir);
        out.emplace_back(g.vertex_count(), std::move(g));
    }
    return out;
}

inline std::vector<std::pair<long, PermutationAction>> load_action_sequence(
    const SequenceManifest& m) {
    detail::need_kind(m, "actions");
    std::vector<std::pair<long, PermutationAction>> out;
    for (const auto& inst : m.instances) {
        auto a = instantiate_action(inst, m.base_dir);
        out.emplace_back(a.degree, std::move(a));
    }
    return out;
}

inline std::vector<std::pair<long, FiniteComplex>> load_complex_sequence(
    const SequenceManifest& m) {
    detail::need_kind(m, "complexes");
    std::vector<std::pair<long, FiniteComplex>> out;
    for (const auto& inst : m.instances) {
        auto k = instantiate_complex(inst, m.base_dir);
        out.emplace_back(k.cell_count(0), std::move(k));
    }
    return out;
}

inline std::vector<std::pair<long, IntSymMatrix>> load_matrix_sequence(const SequenceManifest& m) {
    detail::need_kind(m, "matrices");
    std::vector<std::pair<long, IntSymMatrix>> out;
    for (const auto& inst : m.instances) {
        auto x = instantiate_matrix(inst, m.base_dir);
        out.emplace_back(x.size(), std::move(x));
    }
    return out;
}

}  // namespace graphlim
