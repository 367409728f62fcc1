// graphlim: finite-scale invariants of graphed groupoids, graph sequences,
// group actions, simplicial complexes, and integer Laplace operators.
//
// Exit codes: 0 success (warnings allowed), 1 internal error, 2 input error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graphlim/graphlim.hpp"

namespace {

using namespace graphlim;

struct CommonOpts {
    std::string out = "csv";
    std::string out_path;
    std::string plot_path;
    int jobs = 0;
    unsigned long long seed = 0;
};

void add_output_flags(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--out", opts.out, "Report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out-path", opts.out_path, "Write the report here instead of stdout");
    sub->add_option("--emit-plot", opts.plot_path, "Also write an SVG line plot to this path");
}

void add_jobs_flag(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--jobs", opts.jobs, "Worker threads (default: GRAPHLIM_JOBS or 1)");
}

void add_seed_flag(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--seed", opts.seed, "Seed for heuristic search (default 0)");
}

int effective_jobs(const CommonOpts& opts, const SequenceManifest* manifest = nullptr) {
    if (opts.jobs > 0) return opts.jobs;
    if (manifest && manifest->jobs > 0) return manifest->jobs;
    return default_jobs();
}

void emit_report(const Report& report, const CommonOpts& opts,
                 const std::vector<PlotSeries>& series, const std::string& x_label,
                 const std::string& y_label) {
    const std::string payload =
        opts.out == "json" ? report.to_json().dump(2) + "\n" : report.to_csv();
    if (opts.out_path.empty())
        std::cout << payload;
    else
        write_file(opts.out_path, payload);
    if (!opts.plot_path.empty())
        write_file(opts.plot_path, render_svg_plot(series, x_label, y_label));
}

std::string flag_string(bool v) { return v ? "1" : "0"; }

// ---------------------------------------------------------------------------
// lipcost
// ---------------------------------------------------------------------------

struct LipcostArgs {
    CommonOpts common;
    std::string graph;
    int L = 0;
    bool force_exact = false;
    bool force_heuristic = false;
};

int run_lipcost(const LipcostArgs& args) {
    const UnlabeledGraph g = instantiate_graph(args.graph, "");
    const auto candidates = lipschitz_candidates(g, args.L);
    const bool fits_exact = g.vertex_count() <= 32 &&
                            (g.vertex_count() <= 10 || candidates.size() <= 24);
    LipCostResult result;
    std::string mode;
    if (args.force_exact) {
        result = lip_cost_exact(g, args.L);
        mode = "exact";
    } else if (args.force_heuristic) {
        result = lip_cost_heuristic(g, args.L, args.common.seed);
        mode = "heuristic";
    } else if (fits_exact) {
        result = lip_cost_exact(g, args.L, 32, 24);
        mode = "exact";
    } else {
        result = lip_cost_heuristic(g, args.L, args.common.seed);
        mode = "heuristic";
    }

    Report report;
    report.command = "lipcost";
    report.provenance["mode"] = mode;
    report.provenance["seed"] = std::to_string(args.common.seed);
    report.add_column("n", ColumnType::integer);
    report.add_column("L", ColumnType::integer);
    report.add_column("cost", ColumnType::rational);
    report.add_column("exact_flag", ColumnType::integer);
    report.add_column("edges_kept", ColumnType::integer);
    report.add_row({static_cast<long>(g.vertex_count()), static_cast<long>(args.L), result.cost,
                    static_cast<long>(result.exact ? 1 : 0),
                    static_cast<long>(result.edges.size())});

    std::vector<PlotSeries> series{{"cost", {{static_cast<double>(args.L), to_double(result.cost)}}}};
    emit_report(report, args.common, series, "L", "cost");
    return 0;
}

// ---------------------------------------------------------------------------
// ccost
// ---------------------------------------------------------------------------

struct CcostArgs {
    CommonOpts common;
    std::string manifest;
    int L_max = 0;
    long n_0 = -1;  // -1: take the manifest value
};

int run_ccost(const CcostArgs& args) {
    const auto manifest = read_manifest_file(args.manifest);
    const auto seq = load_graph_sequence(manifest);
    const long n_0 = args.n_0 >= 0 ? args.n_0 : manifest.n_0;
    const auto table = ccost_table(seq, args.L_max, n_0, 10, 24, args.common.seed, 64,
                                   effective_jobs(args.common, &manifest));
    if (table.degree_warning)
        std::cerr << "warning: an instance exceeds the degree bound; heuristic cells may be loose\n";

    Report report;
    report.command = "ccost";
    report.provenance["Lmax"] = std::to_string(table.L_max);
    report.provenance["n_0"] = std::to_string(n_0);
    report.provenance["seed"] = std::to_string(args.common.seed);
    report.provenance["ccost_estimate"] = to_string(table.ccost_estimate);
    report.provenance["all_exact"] = flag_string(table.all_exact);
    report.provenance["degree_warning"] = flag_string(table.degree_warning);
    report.add_column("n", ColumnType::integer);
    report.add_column("L", ColumnType::integer);
    report.add_column("cost", ColumnType::rational);
    report.add_column("exact_flag", ColumnType::integer);
    report.add_column("edges_kept", ColumnType::integer);

    std::vector<PlotSeries> series;
    for (const auto& row : table.rows) {
        PlotSeries line{"n=" + std::to_string(row.n), {}};
        for (int L = 1; L <= table.L_max; ++L) {
            const auto& cell = row.cells[static_cast<std::size_t>(L - 1)];
            report.add_row({static_cast<long>(row.n), static_cast<long>(L), cell.cost,
                            static_cast<long>(cell.exact ? 1 : 0), cell.edges_kept});
            line.points.emplace_back(L, to_double(cell.cost));
        }
        series.push_back(std::move(line));
    }
    emit_report(report, args.common, series, "L", "cost");
    return 0;
}

// ---------------------------------------------------------------------------
// schreier
// ---------------------------------------------------------------------------

struct SchreierArgs {
    CommonOpts common;
    std::string action;
};

int run_schreier(const SchreierArgs& args) {
    const PermutationAction action = instantiate_action(args.action, "");
    const SchreierGraph graph = schreier_graph(action);

    Report report;
    report.command = "schreier";
    report.provenance["degree"] = std::to_string(graph.n);
    report.provenance["generators"] = std::to_string(graph.generators);
    report.provenance["relators"] = std::to_string(graph.relator_count);
    report.provenance["transitive"] = flag_string(graph.transitive);
    report.provenance["simple_edges"] = std::to_string(graph.simple_graph().edge_count());
    report.add_column("generator", ColumnType::integer);
    report.add_column("source", ColumnType::integer);
    report.add_column("target", ColumnType::integer);
    for (const auto& [v, gen, image] : graph.edges())
        report.add_row({static_cast<long>(gen), static_cast<long>(v), static_cast<long>(image)});
    emit_report(report, args.common, {}, "", "");
    return 0;
}

// ---------------------------------------------------------------------------
// rank-gradient
// ---------------------------------------------------------------------------

struct RankGradientArgs {
    CommonOpts common;
    std::string chain;
};

int run_rank_gradient(const RankGradientArgs& args) {
    const auto manifest = read_manifest_file(args.chain);
    const auto seq = load_action_sequence(manifest);
    std::vector<PermutationAction> chain;
    chain.reserve(seq.size());
    for (const auto& [position, action] : seq) chain.push_back(action);
    const auto table = rank_gradient_table(chain, effective_jobs(args.common, &manifest));

    Report report;
    report.command = "rank-gradient";
    const auto& last = table.summary();
    report.provenance["levels"] = std::to_string(table.rows.size());
    report.provenance["summary_gradient_lower"] = to_string(last.gradient_lower);
    report.provenance["summary_gradient_upper"] = to_string(last.gradient_upper);
    report.provenance["summary_cost_lower"] = to_string(last.cost_lower);
    report.provenance["summary_cost_upper"] = to_string(last.cost_upper);
    report.add_column("index", ColumnType::integer);
    report.add_column("rank_lower", ColumnType::integer);
    report.add_column("rank_upper", ColumnType::integer);
    report.add_column("exact_flag", ColumnType::integer);
    report.add_column("gradient_lower", ColumnType::rational);
    report.add_column("gradient_upper", ColumnType::rational);
    report.add_column("cost_lower", ColumnType::rational);
    report.add_column("cost_upper", ColumnType::rational);

    std::vector<PlotSeries> series{{"gradient_lower", {}}, {"gradient_upper", {}}};
    for (const auto& row : table.rows) {
        report.add_row({row.index, row.rank_lower, row.rank_upper,
                        static_cast<long>(row.exact ? 1 : 0), row.gradient_lower,
                        row.gradient_upper, row.cost_lower, row.cost_upper});
        series[0].points.emplace_back(static_cast<double>(row.index),
                                      to_double(row.gradient_lower));
        series[1].points.emplace_back(static_cast<double>(row.index),
                                      to_double(row.gradient_upper));
    }
    emit_report(report, args.common, series, "index", "gradient");
    return 0;
}

// ---------------------------------------------------------------------------
// farber
// ---------------------------------------------------------------------------

struct FarberArgs {
    CommonOpts common;
    std::string action;
    int R = 1;
};

int run_farber(const FarberArgs& args) {
    const PermutationAction action = instantiate_action(args.action, "");
    Report report;
    report.command = "farber";
    report.provenance["degree"] = std::to_string(action.degree);
    report.provenance["rank"] = std::to_string(action.presentation.rank());
    report.add_column("R", ColumnType::integer);
    report.add_column("farber_deviation", ColumnType::rational);
    report.add_column("relator_deviation", ColumnType::rational);

    const auto relator_part =
        relator_deviation(action.presentation, action.images, 1).relator_part;
    std::vector<PlotSeries> series{{"farber_deviation", {}}};
    for (int r = 1; r <= args.R; ++r) {
        const Rat dev = farber_deviation(action, r);
        report.add_row({static_cast<long>(r), dev, relator_part});
        series[0].points.emplace_back(r, to_double(dev));
    }
    emit_report(report, args.common, series, "R", "deviation");
    return 0;
}

// ---------------------------------------------------------------------------
// rips
// ---------------------------------------------------------------------------

struct RipsArgs {
    std::string graph;
    std::string out_path;
    int q = 0;
    int dmax = 0;
};

int run_rips(const RipsArgs& args) {
    const UnlabeledGraph g = instantiate_graph(args.graph, "");
    const FiniteComplex k = rips_complex(g, args.q, args.dmax);
    const std::string payload = complex_to_string(k);
    if (args.out_path.empty())
        std::cout << payload;
    else
        write_file(args.out_path, payload);
    return 0;
}

// ---------------------------------------------------------------------------
// betti
// ---------------------------------------------------------------------------

Field parse_field(const std::string& text) {
    if (text == "q" || text == "Q") return Field::Q();
    if (text.rfind("fp:", 0) == 0) {
        try {
            return Field::Fp(std::stoul(text.substr(3)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("field: bad prime in '" + text + "'");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("field: prime out of range in '" + text + "'");
        }
    }
    throw std::invalid_argument("field must be 'q' or 'fp:P', got '" + text + "'");
}

struct BettiArgs {
    CommonOpts common;
    std::string complex_path;
    int i = 0;
    std::string field = "q";
};

int run_betti(const BettiArgs& args) {
    const FiniteComplex k = instantiate_complex(args.complex_path, "");
    const Field field = parse_field(args.field);
    const long value = betti(k, args.i, field);

    Report report;
    report.command = "betti";
    report.provenance["field"] = field.name();
    report.provenance["dimension"] = std::to_string(k.dimension());
    report.provenance["total_cells"] = std::to_string(k.total_cells());
    report.add_column("i", ColumnType::integer);
    report.add_column("betti", ColumnType::integer);
    report.add_row({static_cast<long>(args.i), value});
    emit_report(report, args.common, {}, "", "");
    return 0;
}

// ---------------------------------------------------------------------------
// nabla
// ---------------------------------------------------------------------------

struct NablaArgs {
    CommonOpts common;
    std::string sub_path;
    std::string super_path;
    int i = 0;
};

int run_nabla(const NablaArgs& args) {
    const FiniteComplex sub = instantiate_complex(args.sub_path, "");
    const FiniteComplex super = instantiate_complex(args.super_path, "");
    const FiberedComplex sub_field(BaseSpace{1}, sub);
    const FiberedComplex super_field(BaseSpace{1}, super);
    const Rat value = nabla(sub_field, super_field, args.i);

    Report report;
    report.command = "nabla";
    report.add_column("i", ColumnType::integer);
    report.add_column("nabla", ColumnType::rational);
    report.add_row({static_cast<long>(args.i), value});
    emit_report(report, args.common, {}, "", "");
    return 0;
}

// ---------------------------------------------------------------------------
// beta-d
// ---------------------------------------------------------------------------

struct BetaDArgs {
    CommonOpts common;
    std::string manifest;
    int d = 1;
    std::vector<int> q_grid;
    std::vector<int> p_grid;
};

int run_beta_d(const BetaDArgs& args) {
    const auto manifest = read_manifest_file(args.manifest);
    const auto seq = load_graph_sequence(manifest);
    std::vector<int> q_grid = args.q_grid;
    std::vector<int> p_grid = args.p_grid;
    if (q_grid.empty() && manifest.has_grid("q"))
        for (long v : manifest.int_grid("q")) q_grid.push_back(static_cast<int>(v));
    if (p_grid.empty() && manifest.has_grid("p"))
        for (long v : manifest.int_grid("p")) p_grid.push_back(static_cast<int>(v));
    if (q_grid.empty() || p_grid.empty())
        throw std::invalid_argument("beta-d: provide --qgrid/--pgrid or manifest grids q and p");
    const auto table = beta_d_table(seq, args.d, q_grid, p_grid, manifest.n_0, 4'000'000,
                                    20'000'000, effective_jobs(args.common, &manifest));

    Report report;
    report.command = "beta-d";
    report.provenance["d"] = std::to_string(args.d);
    report.provenance["n_0"] = std::to_string(table.n_0);
    report.provenance["corner"] = to_string(table.corner);
    report.provenance["corner_conclusive"] = flag_string(table.corner_conclusive);
    report.add_column("position", ColumnType::integer);
    report.add_column("n", ColumnType::integer);
    report.add_column("q", ColumnType::integer);
    report.add_column("p", ColumnType::integer);
    report.add_column("value", ColumnType::rational);
    report.add_column("conclusive", ColumnType::integer);
    report.add_column("method", ColumnType::text);

    for (const auto& row : table.rows)
        for (std::size_t qi = 0; qi < table.q_grid.size(); ++qi)
            for (std::size_t pi = 0; pi < table.p_grid.size(); ++pi) {
                const auto& cell = row.cells[qi][pi];
                report.add_row({row.position, static_cast<long>(row.n),
                                static_cast<long>(table.q_grid[qi]),
                                static_cast<long>(table.p_grid[pi]), cell.value,
                                static_cast<long>(cell.conclusive ? 1 : 0), cell.method});
            }

    // Plot: corner-instance values against q, one series per p.
    std::vector<PlotSeries> series;
    if (!table.rows.empty()) {
        std::size_t corner_row = 0;
        for (std::size_t r = 1; r < table.rows.size(); ++r)
            if (table.rows[r].position > table.rows[corner_row].position) corner_row = r;
        for (std::size_t pi = 0; pi < table.p_grid.size(); ++pi) {
            PlotSeries line{"p=" + std::to_string(table.p_grid[pi]), {}};
            for (std::size_t qi = 0; qi < table.q_grid.size(); ++qi)
                line.points.emplace_back(table.q_grid[qi],
                                         to_double(table.rows[corner_row].cells[qi][pi].value));
            series.push_back(std::move(line));
        }
    }
    emit_report(report, args.common, series, "q", "beta_d");
    return 0;
}

// ---------------------------------------------------------------------------
// elek-beta
// ---------------------------------------------------------------------------

struct ElekArgs {
    CommonOpts common;
    std::string manifest;
    std::vector<int> q_grid;
    std::string field = "q";
    long budget = 50'000'000;
};

int run_elek_beta(const ElekArgs& args) {
    const auto manifest = read_manifest_file(args.manifest);
    const auto seq = load_graph_sequence(manifest);
    std::vector<int> q_grid = args.q_grid;
    if (q_grid.empty() && manifest.has_grid("q"))
        for (long v : manifest.int_grid("q")) q_grid.push_back(static_cast<int>(v));
    if (q_grid.empty())
        throw std::invalid_argument("elek-beta: provide --qgrid or a manifest grid q");
    const Field field = parse_field(args.field);
    const auto table = elek_beta(seq, field, q_grid, args.budget, manifest.n_0,
                                 effective_jobs(args.common, &manifest));

    bool any_budget = false;
    Report report;
    report.command = "elek-beta";
    report.provenance["field"] = field.name();
    report.provenance["n_0"] = std::to_string(table.n_0);
    report.provenance["corner_first"] = to_string(table.corner_first);
    report.provenance["corner_second"] = to_string(table.corner_second);
    report.provenance["corner_conclusive"] = flag_string(table.corner_conclusive);
    report.add_column("position", ColumnType::integer);
    report.add_column("n", ColumnType::integer);
    report.add_column("edges", ColumnType::integer);
    report.add_column("components", ColumnType::integer);
    report.add_column("q", ColumnType::integer);
    report.add_column("dim_vq", ColumnType::integer);
    report.add_column("budget_exceeded", ColumnType::integer);
    report.add_column("first_form", ColumnType::rational);
    report.add_column("second_form", ColumnType::rational);
    report.add_column("discrepancy", ColumnType::rational);

    std::vector<PlotSeries> series{{"first_form", {}}, {"second_form", {}}};
    for (const auto& row : table.rows)
        for (std::size_t qi = 0; qi < table.q_grid.size(); ++qi) {
            const auto& cell = row.cells[qi];
            any_budget = any_budget || cell.budget_exceeded;
            report.add_row({row.position, static_cast<long>(row.n), row.edges, row.components,
                            static_cast<long>(table.q_grid[qi]), cell.dim_vq,
                            static_cast<long>(cell.budget_exceeded ? 1 : 0), cell.first_form,
                            cell.second_form, cell.discrepancy});
        }
    if (!table.rows.empty()) {
        std::size_t corner_row = 0;
        for (std::size_t r = 1; r < table.rows.size(); ++r)
            if (table.rows[r].position > table.rows[corner_row].position) corner_row = r;
        for (std::size_t qi = 0; qi < table.q_grid.size(); ++qi) {
            series[0].points.emplace_back(table.q_grid[qi],
                                          to_double(table.rows[corner_row].cells[qi].first_form));
            series[1].points.emplace_back(table.q_grid[qi],
                                          to_double(table.rows[corner_row].cells[qi].second_form));
        }
    }
    if (any_budget)
        std::cerr << "warning: cycle enumeration budget exceeded on some cells; those dim_vq "
                     "values are lower bounds (the two forms are upper bounds)\n";
    emit_report(report, args.common, series, "q", "beta");
    return 0;
}

// ---------------------------------------------------------------------------
// spectral
// ---------------------------------------------------------------------------

struct SpectralArgs {
    CommonOpts common;
    std::string matrix;
    int bins = 16;
};

int run_spectral(const SpectralArgs& args) {
    const IntSymMatrix x = instantiate_matrix(args.matrix, "");
    const auto histogram = spectral_histogram(x, args.bins);

    Report report;
    report.command = "spectral";
    report.provenance["k"] = std::to_string(histogram.k);
    report.provenance["exact_zero_dim"] = std::to_string(histogram.exact_zero_dim);
    report.provenance["zero_atom_mass"] = to_string(histogram.zero_atom_mass);
    report.provenance["eigenvalues"] = "approximate";
    report.add_column("bin_lo", ColumnType::nano);
    report.add_column("bin_hi", ColumnType::nano);
    report.add_column("count", ColumnType::integer);
    report.add_column("mass", ColumnType::rational);

    std::vector<PlotSeries> series{{"count", {}}};
    for (const auto& bin : histogram.bins) {
        report.add_row({bin.lo, bin.hi, bin.count, bin.mass});
        series[0].points.emplace_back(0.5 * (bin.lo + bin.hi), static_cast<double>(bin.count));
    }
    emit_report(report, args.common, series, "eigenvalue", "count");
    return 0;
}

// ---------------------------------------------------------------------------
// lueck-check
// ---------------------------------------------------------------------------

struct LueckArgs {
    CommonOpts common;
    std::string matrix;
    double eps = 0.5;
};

int run_lueck_check(const LueckArgs& args) {
    const IntSymMatrix x = instantiate_matrix(args.matrix, "");
    const auto check = lueck_bound_check(x, args.eps);

    Report report;
    report.command = "lueck-check";
    report.provenance["trace_square"] = check.trace_square.get_str();
    report.add_column("k", ColumnType::integer);
    report.add_column("eps", ColumnType::nano);
    report.add_column("lhs", ColumnType::rational);
    report.add_column("rhs", ColumnType::nano);
    report.add_column("pass", ColumnType::integer);
    report.add_column("kernel_dim", ColumnType::integer);
    report.add_column("near_zero_count", ColumnType::integer);
    report.add_row({static_cast<long>(x.size()), args.eps, check.lhs, check.rhs,
                    static_cast<long>(check.pass ? 1 : 0), check.kernel_dim,
                    check.near_zero_count});
    emit_report(report, args.common, {}, "", "");
    return 0;
}

// ---------------------------------------------------------------------------
// kernel-seq
// ---------------------------------------------------------------------------

struct KernelSeqArgs {
    CommonOpts common;
    std::string manifest;
    long n_0 = -1;
};

int run_kernel_seq(const KernelSeqArgs& args) {
    const auto manifest = read_manifest_file(args.manifest);
    const auto seq = load_matrix_sequence(manifest);
    const long n_0 = args.n_0 >= 0 ? args.n_0 : manifest.n_0;
    const auto result = kernel_sequence_report(seq, n_0, effective_jobs(args.common, &manifest));

    Report report;
    report.command = "kernel-seq";
    report.provenance["n_0"] = std::to_string(result.n_0);
    report.provenance["tail_min"] = to_string(result.tail_min);
    report.provenance["tail_max"] = to_string(result.tail_max);
    report.add_column("position", ColumnType::integer);
    report.add_column("k", ColumnType::integer);
    report.add_column("kernel_dim", ColumnType::integer);
    report.add_column("normalized", ColumnType::rational);

    std::vector<PlotSeries> series{{"normalized", {}}};
    for (const auto& row : result.rows) {
        report.add_row({row.position, static_cast<long>(row.k), row.dim, row.normalized});
        series[0].points.emplace_back(static_cast<double>(row.position),
                                      to_double(row.normalized));
    }
    emit_report(report, args.common, series, "position", "kernel fraction");
    return 0;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateArgs {
    std::string family;
    std::string kind;  // optional override: graphs | actions
    std::string out_path;
    std::string out_dir;
    std::string prefix = "chain";
};

int run_generate(const GenerateArgs& args) {
    const auto spec = parse_inline_spec(args.family);
    if (!spec)
        throw std::invalid_argument("generate: --family must be an inline spec like cycle(6)");

    // Iterated double covers: writes one action file per level plus a chain
    // manifest referencing them in order.
    if (spec->name == "double-cover-chain") {
        if (spec->args.size() != 3)
            throw std::invalid_argument(
                "generate: double-cover-chain(rank, depth, seed) — the seed is required");
        if (args.out_dir.empty())
            throw std::invalid_argument("generate: double-cover-chain requires --out-dir");
        const int rank = static_cast<int>(spec->args[0]);
        const int depth = static_cast<int>(spec->args[1]);
        const auto seed = static_cast<std::uint64_t>(spec->args[2]);
        if (rank < 1 || depth < 0)
            throw std::invalid_argument("generate: need rank >= 1 and depth >= 0");
        // One-point base: every generator fixes the single coset.
        const PermutationAction base(GroupPresentation::free_group(rank), 1,
                                     std::vector<std::vector<int>>(
                                         static_cast<std::size_t>(rank), std::vector<int>{0}));
        const auto chain = double_cover_chain(base, depth, seed);
        SequenceManifest manifest;
        manifest.kind = "actions";
        for (std::size_t level = 0; level < chain.size(); ++level) {
            const std::string name = args.prefix + "_" + std::to_string(level) + ".json";
            write_file(join_path(args.out_dir, name), action_to_string(chain[level]));
            manifest.instances.push_back(name);
            std::cout << join_path(args.out_dir, name) << '\n';
        }
        const std::string manifest_path = join_path(args.out_dir, args.prefix + "_chain.json");
        write_file(manifest_path, manifest_to_json(manifest).dump(2) + "\n");
        std::cout << manifest_path << '\n';
        return 0;
    }

    const bool graph_family = spec->name == "cycle" || spec->name == "path" ||
                              spec->name == "complete" || spec->name == "random-regular";
    const bool action_family = spec->name == "cyclic";
    std::string kind = args.kind;
    if (kind.empty()) {
        if (graph_family)
            kind = "graphs";
        else if (action_family || spec->name == "random-schreier")
            kind = "actions";
        else
            throw std::invalid_argument("generate: unknown family '" + spec->name + "'");
    }

    std::string payload;
    if (kind == "graphs")
        payload = graph_to_string(instantiate_graph(args.family, ""));
    else if (kind == "actions")
        payload = action_to_string(instantiate_action(args.family, ""));
    else
        throw std::invalid_argument("generate: --kind must be graphs or actions");
    if (args.out_path.empty())
        std::cout << payload;
    else
        write_file(args.out_path, payload);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-scale invariants of graphed groupoids and their approximating sequences"};
    app.require_subcommand(1);

    LipcostArgs lipcost_args;
    auto* lipcost_cmd =
        app.add_subcommand("lipcost", "Minimum edges per point of an L-stretch spanner");
    lipcost_cmd->add_option("--graph", lipcost_args.graph, "Graph file or inline family")
        ->required();
    lipcost_cmd->add_option("--L", lipcost_args.L, "Stretch bound L >= 0")->required();
    auto* exact_flag = lipcost_cmd->add_flag("--exact", lipcost_args.force_exact,
                                             "Force the exact branch-and-bound solver");
    lipcost_cmd->add_flag("--heuristic", lipcost_args.force_heuristic,
                          "Force the certified greedy heuristic")
        ->excludes(exact_flag);
    add_seed_flag(lipcost_cmd, lipcost_args.common);
    add_output_flags(lipcost_cmd, lipcost_args.common);

    CcostArgs ccost_args;
    auto* ccost_cmd =
        app.add_subcommand("ccost", "L-Lipschitz cost table over a graph sequence manifest");
    ccost_cmd->add_option("--manifest", ccost_args.manifest, "Graph-sequence manifest (JSON)")
        ->required();
    ccost_cmd->add_option("--Lmax", ccost_args.L_max, "Largest stretch bound")->required();
    ccost_cmd->add_option("--n0", ccost_args.n_0, "Tail window start (default: manifest n_0)");
    add_seed_flag(ccost_cmd, ccost_args.common);
    add_jobs_flag(ccost_cmd, ccost_args.common);
    add_output_flags(ccost_cmd, ccost_args.common);

    SchreierArgs schreier_args;
    auto* schreier_cmd =
        app.add_subcommand("schreier", "Labeled coset graph of a permutation action");
    schreier_cmd->add_option("--action", schreier_args.action, "Action file or inline family")
        ->required();
    add_output_flags(schreier_cmd, schreier_args.common);

    RankGradientArgs rank_gradient_args;
    auto* rank_gradient_cmd = app.add_subcommand(
        "rank-gradient", "Rank bounds, gradients, and coset costs along an action chain");
    rank_gradient_cmd
        ->add_option("--chain", rank_gradient_args.chain, "Action-sequence manifest (JSON)")
        ->required();
    add_jobs_flag(rank_gradient_cmd, rank_gradient_args.common);
    add_output_flags(rank_gradient_cmd, rank_gradient_args.common);

    FarberArgs farber_args;
    auto* farber_cmd =
        app.add_subcommand("farber", "Fixed-point deviations over reduced words of length <= R");
    farber_cmd->add_option("--action", farber_args.action, "Action file or inline family")
        ->required();
    farber_cmd->add_option("--R", farber_args.R, "Largest word length")->required();
    add_output_flags(farber_cmd, farber_args.common);

    RipsArgs rips_args;
    auto* rips_cmd = app.add_subcommand("rips", "Rips complex of a graph at scale q");
    rips_cmd->add_option("--graph", rips_args.graph, "Graph file or inline family")->required();
    rips_cmd->add_option("--q", rips_args.q, "Scale: cells are sets of diameter <= q")->required();
    rips_cmd->add_option("--dmax", rips_args.dmax, "Largest cell dimension")->required();
    rips_cmd->add_option("--out-path", rips_args.out_path,
                         "Write the complex here instead of stdout");

    BettiArgs betti_args;
    auto* betti_cmd = app.add_subcommand("betti", "Exact Betti number of a complex");
    betti_cmd->add_option("--complex", betti_args.complex_path, "Complex file or simplex(k)")
        ->required();
    betti_cmd->add_option("--i", betti_args.i, "Homology degree")->required();
    betti_cmd->add_option("--field", betti_args.field, "Coefficients: q or fp:P (default q)");
    add_output_flags(betti_cmd, betti_args.common);

    NablaArgs nabla_args;
    auto* nabla_cmd =
        app.add_subcommand("nabla", "Dimension of the homology image of a subcomplex inclusion");
    nabla_cmd->add_option("--sub", nabla_args.sub_path, "Subcomplex file")->required();
    nabla_cmd->add_option("--super", nabla_args.super_path, "Ambient complex file")->required();
    nabla_cmd->add_option("--i", nabla_args.i, "Homology degree")->required();
    add_output_flags(nabla_cmd, nabla_args.common);

    BetaDArgs beta_d_args;
    auto* beta_d_cmd = app.add_subcommand(
        "beta-d", "Normalized homology-image dimensions across Rips scales");
    beta_d_cmd->add_option("--manifest", beta_d_args.manifest, "Graph-sequence manifest (JSON)")
        ->required();
    beta_d_cmd->add_option("--d", beta_d_args.d, "Homology degree")->required();
    beta_d_cmd->add_option("--qgrid", beta_d_args.q_grid, "Comma-separated q values")
        ->delimiter(',');
    beta_d_cmd->add_option("--pgrid", beta_d_args.p_grid, "Comma-separated p values")
        ->delimiter(',');
    add_jobs_flag(beta_d_cmd, beta_d_args.common);
    add_output_flags(beta_d_cmd, beta_d_args.common);

    ElekArgs elek_args;
    auto* elek_cmd =
        app.add_subcommand("elek-beta", "First-Betti approximants from short-cycle spans");
    elek_cmd->add_option("--manifest", elek_args.manifest, "Graph-sequence manifest (JSON)")
        ->required();
    elek_cmd->add_option("--qgrid", elek_args.q_grid, "Comma-separated cycle-length bounds")
        ->delimiter(',');
    elek_cmd->add_option("--field", elek_args.field, "Coefficients: q or fp:P (default q)");
    elek_cmd->add_option("--budget", elek_args.budget, "Cycle-enumeration step budget");
    add_jobs_flag(elek_cmd, elek_args.common);
    add_output_flags(elek_cmd, elek_args.common);

    SpectralArgs spectral_args;
    auto* spectral_cmd =
        app.add_subcommand("spectral", "Eigenvalue histogram with the exact atom at zero");
    spectral_cmd->add_option("--matrix", spectral_args.matrix, "Matrix file or inline family")
        ->required();
    spectral_cmd->add_option("--bins", spectral_args.bins, "Histogram bin count (default 16)");
    add_output_flags(spectral_cmd, spectral_args.common);

    LueckArgs lueck_args;
    auto* lueck_cmd = app.add_subcommand(
        "lueck-check", "Near-zero spectral mass against the trace bound");
    lueck_cmd->add_option("--matrix", lueck_args.matrix, "Matrix file or inline family")
        ->required();
    lueck_cmd->add_option("--eps", lueck_args.eps, "Window half-width, 0 < eps < 1")->required();
    add_output_flags(lueck_cmd, lueck_args.common);

    KernelSeqArgs kernel_seq_args;
    auto* kernel_seq_cmd = app.add_subcommand(
        "kernel-seq", "Normalized exact kernel dimensions along a matrix sequence");
    kernel_seq_cmd
        ->add_option("--manifest", kernel_seq_args.manifest, "Matrix-sequence manifest (JSON)")
        ->required();
    kernel_seq_cmd->add_option("--n0", kernel_seq_args.n_0,
                               "Tail window start (default: manifest n_0)");
    add_jobs_flag(kernel_seq_cmd, kernel_seq_args.common);
    add_output_flags(kernel_seq_cmd, kernel_seq_args.common);

    GenerateArgs generate_args;
    auto* generate_cmd = app.add_subcommand("generate", "Write deterministic instance files");
    generate_cmd
        ->add_option("--family", generate_args.family,
                     "cycle(n) | path(n) | complete(n) | random-regular(d,n,seed) | "
                     "random-schreier(r,n,seed) | cyclic(n) | double-cover-chain(rank,depth,seed)")
        ->required();
    generate_cmd->add_option("--kind", generate_args.kind,
                             "Force output kind for ambiguous families: graphs or actions");
    generate_cmd->add_option("--out-path", generate_args.out_path,
                             "Instance file destination (default stdout)");
    generate_cmd->add_option("--out-dir", generate_args.out_dir,
                             "Destination directory for chain families");
    generate_cmd->add_option("--prefix", generate_args.prefix,
                             "Chain file prefix (default 'chain')");

    const auto started = std::chrono::steady_clock::now();
    int status = 0;
    try {
        app.parse(argc, argv);
        if (lipcost_cmd->parsed())
            status = run_lipcost(lipcost_args);
        else if (ccost_cmd->parsed())
            status = run_ccost(ccost_args);
        else if (schreier_cmd->parsed())
            status = run_schreier(schreier_args);
        else if (rank_gradient_cmd->parsed())
            status = run_rank_gradient(rank_gradient_args);
        else if (farber_cmd->parsed())
            status = run_farber(farber_args);
        else if (rips_cmd->parsed())
            status = run_rips(rips_args);
        else if (betti_cmd->parsed())
            status = run_betti(betti_args);
        else if (nabla_cmd->parsed())
            status = run_nabla(nabla_args);
        else if (beta_d_cmd->parsed())
            status = run_beta_d(beta_d_args);
        else if (elek_cmd->parsed())
            status = run_elek_beta(elek_args);
        else if (spectral_cmd->parsed())
            status = run_spectral(spectral_args);
        else if (lueck_cmd->parsed())
            status = run_lueck_check(lueck_args);
        else if (kernel_seq_cmd->parsed())
            status = run_kernel_seq(kernel_seq_args);
        else if (generate_cmd->parsed())
            status = run_generate(generate_args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cerr << "# wall_ms=" << elapsed << '\n';  // stderr only: reports stay byte-deterministic
    return status;
}
