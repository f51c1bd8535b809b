// vgtree: visibility-graph spanning-tree allometry toolkit.
//
// Subcommands mirror the library operations one-to-one: analyze a price CSV,
// synthesize Brownian / fractional-Brownian series, build surrogates, run
// finite-size and Hurst scans, compare surrogate ensembles, and export the
// (A, C) point cloud of a single tree.  All stochastic commands take a seed
// and re-running with identical arguments produces byte-identical output.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vgt/allometry.hpp"
#include "vgt/kernels.hpp"
#include "vgt/runner.hpp"
#include "vgt/series.hpp"
#include "vgt/spanning.hpp"
#include "vgt/synth.hpp"
#include "vgt/visibility.hpp"

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 12345;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw vgt::Error("cannot open output file: " + out_path);
    f << text;
    if (!f) throw vgt::Error("failed writing output file: " + out_path);
}

// Default window grid for index-mode length scans: 12 geometrically spaced
// lengths from 1000 to the full series length.
std::vector<std::size_t> geometric_grid(std::size_t hi) {
    constexpr std::size_t lo = 1000;
    constexpr int points = 12;
    if (hi < lo)
        throw vgt::Error("series has fewer than 1000 points; pass --lengths");
    std::vector<std::size_t> grid;
    const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
    for (int k = 0; k < points; ++k) {
        const double frac = static_cast<double>(k) / (points - 1);
        const auto len = static_cast<std::size_t>(
            std::llround(static_cast<double>(lo) * std::pow(ratio, frac)));
        if (grid.empty() || len > grid.back()) grid.push_back(len);
    }
    return grid;
}

std::vector<double> default_hurst_grid() {
    std::vector<double> h;
    for (int i = 1; i <= 19; ++i) h.push_back(i * 0.05);
    return h;
}

ordered_json base_config(const char* command, std::uint64_t seed) {
    ordered_json cfg;
    cfg["command"] = command;
    cfg["seed"] = seed;
    cfg["kernel"] = vgt::active_kernels().name;
    return cfg;
}

struct AnalyzeArgs {
    std::string input, column = "Close", out;
    std::size_t ranst = 100;
    std::uint64_t seed = kDefaultSeed;
};

void run_analyze(const AnalyzeArgs& a) {
    const vgt::PriceSeries s = vgt::load_price_csv(a.input, a.column);
    const vgt::IndexReport rep = vgt::analyze_index(s, a.ranst, a.seed);
    ordered_json cfg = base_config("analyze", a.seed);
    cfg["input"] = a.input;
    cfg["column"] = a.column;
    cfg["ranst"] = a.ranst;
    write_output(vgt::report_json(rep, cfg.dump()), a.out);
}

struct SynthArgs {
    std::size_t length = 0;
    double hurst = 0.5;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

void run_synth(const SynthArgs& a, bool fractional) {
    const vgt::PriceSeries s =
        fractional ? vgt::gen_fbm({a.hurst, a.length, a.seed})
                   : vgt::gen_brownian(a.length, a.seed);
    vgt::save_series_csv(s, a.out);
}

struct SurrogateArgs {
    std::string input, column = "Close", kind, out;
    std::uint64_t seed = kDefaultSeed;
};

void run_surrogate(const SurrogateArgs& a) {
    vgt::SurrogateKind kind;
    if (a.kind == "surr1") kind = vgt::SurrogateKind::Surr1;
    else if (a.kind == "surr2") kind = vgt::SurrogateKind::Surr2;
    else if (a.kind == "surr3") kind = vgt::SurrogateKind::Surr3;
    else throw vgt::Error("unknown surrogate kind: " + a.kind);
    const vgt::PriceSeries s = vgt::load_price_csv(a.input, a.column);
    vgt::save_series_csv(vgt::make_surrogate(s, kind, a.seed), a.out);
}

struct ScanLengthArgs {
    std::string index, column = "Close", out;
    bool bm = false;
    std::vector<std::size_t> lengths;
    std::size_t realizations = 100;
    std::uint64_t seed = kDefaultSeed;
};

void run_scan_length(const ScanLengthArgs& a) {
    vgt::PriceSeries series;
    const vgt::PriceSeries* index = nullptr;
    std::vector<std::size_t> lengths = a.lengths;
    if (a.bm) {
        if (lengths.empty()) lengths = {1000, 2000, 4000, 8000, 16000};
    } else {
        series = vgt::load_price_csv(a.index, a.column);
        index = &series;
        if (lengths.empty()) lengths = geometric_grid(series.size());
    }
    const vgt::ScanReport rep =
        vgt::length_scan(index, lengths, a.realizations, a.seed);
    ordered_json cfg = base_config("scan-length", a.seed);
    cfg["mode"] = a.bm ? "bm" : "index";
    if (!a.bm) {
        cfg["input"] = a.index;
        cfg["column"] = a.column;
    }
    cfg["lengths"] = lengths;
    cfg["realizations"] = a.realizations;
    write_output(vgt::report_json(rep, cfg.dump()), a.out);
}

struct ScanHurstArgs {
    std::vector<double> hursts;
    std::size_t length = 5000;
    std::size_t realizations = 100;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

void run_scan_hurst(const ScanHurstArgs& a) {
    const std::vector<double> hursts =
        a.hursts.empty() ? default_hurst_grid() : a.hursts;
    const vgt::ScanReport rep =
        vgt::hurst_scan(hursts, a.length, a.realizations, a.seed);
    ordered_json cfg = base_config("scan-hurst", a.seed);
    cfg["hursts"] = hursts;
    cfg["length"] = a.length;
    cfg["realizations"] = a.realizations;
    write_output(vgt::report_json(rep, cfg.dump()), a.out);
}

struct CompareArgs {
    std::string input, column = "Close", out;
    std::size_t realizations = 100;
    std::uint64_t seed = kDefaultSeed;
};

void run_compare(const CompareArgs& a) {
    const vgt::PriceSeries s = vgt::load_price_csv(a.input, a.column);
    const vgt::ScanReport rep =
        vgt::surrogate_compare(s, a.realizations, a.seed);
    ordered_json cfg = base_config("compare-surrogates", a.seed);
    cfg["input"] = a.input;
    cfg["column"] = a.column;
    cfg["realizations"] = a.realizations;
    write_output(vgt::report_json(rep, cfg.dump()), a.out);
}

struct ExportAcArgs {
    std::string input, column = "Close", tree, out, edges, parents;
    std::uint64_t seed = kDefaultSeed;
};

void run_export_ac(const ExportAcArgs& a) {
    const vgt::PriceSeries s = vgt::load_price_csv(a.input, a.column);
    const vgt::VisibilityGraph g = vgt::build_visibility_graph(s);

    vgt::SpanningTree tree;
    if (a.tree == "max") tree = vgt::max_spanning_tree(g);
    else if (a.tree == "min") tree = vgt::min_spanning_tree(g);
    else if (a.tree == "ran") tree = vgt::random_spanning_tree(g, a.seed);
    else throw vgt::Error("unknown tree kind: " + a.tree);

    const vgt::RootedTree rt = vgt::root_tree(tree, vgt::choose_root(tree));
    vgt::AllometryResult res = vgt::compute_ac(rt);
    vgt::fit_eta(res);
    vgt::write_ac_csv(res, a.out);
    if (!a.edges.empty()) vgt::write_edge_csv(g, a.edges);
    if (!a.parents.empty()) vgt::write_tree_csv(rt, a.parents);
}

void add_seed_opt(CLI::App* cmd, std::uint64_t& seed) {
    cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted visibility graphs, spanning trees, and allometric "
                 "scaling exponents of scalar time series"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "fit MaxST/MinST/RanST exponents of one price CSV");
    analyze->add_option("csv", analyze_args.input, "input CSV")->required();
    analyze->add_option("--column", analyze_args.column, "price column name")
        ->capture_default_str();
    analyze->add_option("--ranst", analyze_args.ranst,
                        "random-tree ensemble size")
        ->capture_default_str();
    add_seed_opt(analyze, analyze_args.seed);
    analyze->add_option("--out", analyze_args.out,
                        "report path (default: stdout)");
    analyze->callback([&] { run_analyze(analyze_args); });

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic series");
    synth->require_subcommand(1);
    CLI::App* synth_bm = synth->add_subcommand("bm", "Brownian motion");
    CLI::App* synth_fbm =
        synth->add_subcommand("fbm", "fractional Brownian motion");
    for (CLI::App* sub : {synth_bm, synth_fbm}) {
        sub->add_option("--length", synth_args.length, "number of points")
            ->required();
        add_seed_opt(sub, synth_args.seed);
        sub->add_option("--out", synth_args.out, "output CSV path")->required();
    }
    synth_fbm->add_option("--hurst", synth_args.hurst, "Hurst index in (0,1)")
        ->capture_default_str();
    synth_bm->callback([&] { run_synth(synth_args, false); });
    synth_fbm->callback([&] { run_synth(synth_args, true); });

    SurrogateArgs surrogate_args;
    CLI::App* surrogate = app.add_subcommand(
        "surrogate", "build one surrogate series from a price CSV");
    surrogate->add_option("csv", surrogate_args.input, "input CSV")->required();
    surrogate->add_option("--column", surrogate_args.column, "price column name")
        ->capture_default_str();
    surrogate
        ->add_option("--kind", surrogate_args.kind,
                     "surrogate kind: surr1 | surr2 | surr3")
        ->required()
        ->check(CLI::IsMember({"surr1", "surr2", "surr3"}));
    add_seed_opt(surrogate, surrogate_args.seed);
    surrogate->add_option("--out", surrogate_args.out, "output CSV path")
        ->required();
    surrogate->callback([&] { run_surrogate(surrogate_args); });

    ScanLengthArgs scan_length_args;
    CLI::App* scan_length = app.add_subcommand(
        "scan-length", "exponents as a function of series length");
    CLI::Option* opt_index = scan_length->add_option(
        "--index", scan_length_args.index, "index CSV to draw windows from");
    CLI::Option* opt_bm = scan_length->add_flag(
        "--bm", scan_length_args.bm, "fresh Brownian walks per realization");
    opt_index->excludes(opt_bm);
    opt_bm->excludes(opt_index);
    scan_length
        ->add_option("--column", scan_length_args.column, "price column name")
        ->capture_default_str();
    scan_length
        ->add_option("--lengths", scan_length_args.lengths,
                     "comma-separated lengths (default: geometric grid for "
                     "--index, 1000..16000 doubling for --bm)")
        ->delimiter(',');
    scan_length
        ->add_option("--realizations", scan_length_args.realizations,
                     "realizations per length")
        ->capture_default_str();
    add_seed_opt(scan_length, scan_length_args.seed);
    scan_length->add_option("--out", scan_length_args.out,
                            "report path (default: stdout)");
    scan_length->callback([&] {
        if (!scan_length_args.bm && scan_length_args.index.empty())
            throw CLI::ValidationError(
                "scan-length", "exactly one of --index or --bm is required");
        run_scan_length(scan_length_args);
    });

    ScanHurstArgs scan_hurst_args;
    CLI::App* scan_hurst = app.add_subcommand(
        "scan-hurst", "exponents as a function of the Hurst index");
    scan_hurst
        ->add_option("--hursts", scan_hurst_args.hursts,
                     "comma-separated Hurst indexes (default: 0.05..0.95 "
                     "step 0.05)")
        ->delimiter(',');
    scan_hurst->add_option("--length", scan_hurst_args.length, "series length")
        ->capture_default_str();
    scan_hurst
        ->add_option("--realizations", scan_hurst_args.realizations,
                     "realizations per Hurst index")
        ->capture_default_str();
    add_seed_opt(scan_hurst, scan_hurst_args.seed);
    scan_hurst->add_option("--out", scan_hurst_args.out,
                           "report path (default: stdout)");
    scan_hurst->callback([&] { run_scan_hurst(scan_hurst_args); });

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand(
        "compare-surrogates",
        "surrogate ensembles and ordering checks for one price CSV");
    compare->add_option("csv", compare_args.input, "input CSV")->required();
    compare->add_option("--column", compare_args.column, "price column name")
        ->capture_default_str();
    compare
        ->add_option("--realizations", compare_args.realizations,
                     "surrogates per kind")
        ->capture_default_str();
    add_seed_opt(compare, compare_args.seed);
    compare->add_option("--out", compare_args.out,
                        "report path (default: stdout)");
    compare->callback([&] { run_compare(compare_args); });

    ExportAcArgs export_args;
    CLI::App* export_ac = app.add_subcommand(
        "export-ac", "export the (A, C) point cloud of one spanning tree");
    export_ac->add_option("csv", export_args.input, "input CSV")->required();
    export_ac->add_option("--column", export_args.column, "price column name")
        ->capture_default_str();
    export_ac
        ->add_option("--tree", export_args.tree, "tree kind: max | min | ran")
        ->required()
        ->check(CLI::IsMember({"max", "min", "ran"}));
    add_seed_opt(export_ac, export_args.seed);
    export_ac->add_option("--out", export_args.out, "points CSV path")
        ->required();
    export_ac->add_option("--edges", export_args.edges,
                          "also export the graph edge list to this path");
    export_ac->add_option("--parents", export_args.parents,
                          "also export the tree parent map to this path");
    export_ac->callback([&] { run_export_ac(export_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
