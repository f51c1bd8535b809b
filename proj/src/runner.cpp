#include "vgt/runner.hpp"

#include <cmath>
#include <utility>

#include "json.hpp"
#include "vgt/allometry.hpp"
#include "vgt/spanning.hpp"
#include "vgt/visibility.hpp"

namespace vgt {
namespace {

using ordered_json = nlohmann::ordered_json;

// Fit one tree and enforce the report invariant 1 < eta < 2.  A value
// outside the band is a fit failure, not a reportable exponent.
TreeFit fit_tree(const SpanningTree& t) {
    const AllometryResult r = analyze_tree(t);
    if (!(r.eta > 1.0 && r.eta < 2.0))
        throw FitError(std::string(tree_kind_name(t.kind)) +
                       ": fitted exponent " + format_double(r.eta) +
                       " outside (1, 2)");
    return TreeFit{r.eta, r.eta_stderr, r.n_fit_points};
}

// Collects ensemble exponents; failed fits are counted, never averaged.
class EnsembleAcc {
public:
    void add(double v) { vals_.push_back(v); }
    void drop() { ++dropped_; }

    EnsembleStat finish(const std::string& what) const {
        if (vals_.empty())
            throw Error(what + ": every realization failed to fit");
        EnsembleStat s;
        s.count = vals_.size();
        s.dropped = dropped_;
        double sum = 0.0;
        for (double v : vals_) sum += v;
        s.mean = sum / static_cast<double>(s.count);
        if (s.count > 1) {
            double ss = 0.0;
            for (double v : vals_) ss += (v - s.mean) * (v - s.mean);
            s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
        }
        return s;
    }

private:
    std::vector<double> vals_;
    std::size_t dropped_ = 0;
};

}  // namespace

IndexReport analyze_index(const PriceSeries& s, std::size_t ranst_count,
                          std::uint64_t seed) {
    if (ranst_count < 1) throw Error("ranst_count must be >= 1");
    validate_series(s);

    const VisibilityGraph g = build_visibility_graph(s);
    const Adjacency adj = Adjacency::from_graph(g);

    IndexReport rep;
    rep.label = s.label;
    rep.length = s.size();
    rep.ranst_count = ranst_count;
    rep.maxst = fit_tree(max_spanning_tree(g, adj));
    rep.minst = fit_tree(min_spanning_tree(g, adj));

    EnsembleAcc acc;
    for (std::size_t i = 0; i < ranst_count; ++i) {
        Rng rng(seed + i);
        try {
            acc.add(fit_tree(random_spanning_tree(g, adj, rng)).eta);
        } catch (const FitError&) {
            acc.drop();
        }
    }
    rep.ranst = acc.finish("random-tree ensemble of '" + s.label + "'");
    return rep;
}

namespace {

// Shared per-realization step for the scans: build the graph, fit all three
// tree kinds, and feed the accumulators.  Returns the RanST exponent when
// that fit succeeded.
struct CellAcc {
    EnsembleAcc maxst, minst, ranst;

    std::optional<double> measure(const VisibilityGraph& g, Rng& tree_rng) {
        const Adjacency adj = Adjacency::from_graph(g);
        try {
            maxst.add(fit_tree(max_spanning_tree(g, adj)).eta);
        } catch (const FitError&) {
            maxst.drop();
        }
        try {
            minst.add(fit_tree(min_spanning_tree(g, adj)).eta);
        } catch (const FitError&) {
            minst.drop();
        }
        try {
            const double eta =
                fit_tree(random_spanning_tree(g, adj, tree_rng)).eta;
            ranst.add(eta);
            return eta;
        } catch (const FitError&) {
            ranst.drop();
            return std::nullopt;
        }
    }

    ScanPoint finish(std::string label, double x) const {
        ScanPoint pt;
        pt.label = std::move(label);
        pt.x = x;
        pt.maxst = maxst.finish(pt.label + " maxst");
        pt.minst = minst.finish(pt.label + " minst");
        pt.ranst = ranst.finish(pt.label + " ranst");
        return pt;
    }
};

LabeledRegression labeled_ols(std::string label,
                              const std::vector<double>& x,
                              const std::vector<double>& y,
                              Transform transform) {
    return LabeledRegression{std::move(label), ols(x, y, transform)};
}

}  // namespace

ScanReport length_scan(const PriceSeries* index,
                       const std::vector<std::size_t>& lengths,
                       std::size_t realizations, std::uint64_t seed) {
    if (lengths.empty()) throw Error("length scan: no lengths given");
    if (realizations < 1) throw Error("length scan: realizations must be >= 1");
    for (std::size_t L : lengths) {
        if (L < 100) throw Error("length scan: every length must be >= 100");
        if (index != nullptr && L > index->size())
            throw Error("length scan: length " + std::to_string(L) +
                        " exceeds series size " + std::to_string(index->size()));
    }
    if (index != nullptr) validate_series(*index);

    ScanReport rep;
    rep.kind = "length-scan";

    std::uint64_t counter = 0;  // seed layout: two objects per realization
    std::vector<double> xs, max_means, min_means, ran_means;
    std::vector<double> per_x, per_eta;  // one point per RanST realization
    for (std::size_t L : lengths) {
        CellAcc cell;
        for (std::size_t i = 0; i < realizations; ++i) {
            const std::uint64_t gen_seed = seed + counter++;
            Rng tree_rng(seed + counter++);
            VisibilityGraph g;
            if (index != nullptr) {
                g = build_visibility_graph(random_subseries(*index, L, gen_seed));
            } else {
                const std::vector<double> path = gen_brownian_path(L, gen_seed);
                g = build_visibility_graph(path, WeightKind::Difference);
            }
            if (auto eta = cell.measure(g, tree_rng)) {
                per_x.push_back(static_cast<double>(L));
                per_eta.push_back(*eta);
            }
        }
        const ScanPoint pt =
            cell.finish("L=" + std::to_string(L), static_cast<double>(L));
        xs.push_back(static_cast<double>(L));
        max_means.push_back(pt.maxst.mean);
        min_means.push_back(pt.minst.mean);
        ran_means.push_back(pt.ranst.mean);
        rep.points.push_back(pt);
    }

    if (lengths.size() >= 3) {
        rep.regressions.push_back(
            labeled_ols("maxst_mean_vs_L", xs, max_means, Transform::Identity));
        rep.regressions.push_back(
            labeled_ols("minst_mean_vs_L", xs, min_means, Transform::Identity));
        rep.regressions.push_back(
            labeled_ols("ranst_mean_vs_L", xs, ran_means, Transform::Identity));
        rep.regressions.push_back(
            labeled_ols("ranst_mean_vs_lnL", xs, ran_means, Transform::LogX));
        rep.regressions.push_back(labeled_ols("ranst_per_series_vs_lnL", per_x,
                                              per_eta, Transform::LogX));
    }
    return rep;
}

ScanReport hurst_scan(const std::vector<double>& hursts, std::size_t length,
                      std::size_t realizations, std::uint64_t seed) {
    if (hursts.empty()) throw Error("hurst scan: no Hurst indexes given");
    if (realizations < 1) throw Error("hurst scan: realizations must be >= 1");
    if (length < 100) throw Error("hurst scan: length must be >= 100");
    for (double h : hursts)
        if (!(h > 0.0 && h < 1.0))
            throw Error("hurst scan: Hurst index must lie inside (0, 1)");

    ScanReport rep;
    rep.kind = "hurst-scan";

    std::uint64_t counter = 0;
    std::vector<double> xs, max_means, min_means, ran_means;
    for (double h : hursts) {
        CellAcc cell;
        for (std::size_t i = 0; i < realizations; ++i) {
            const std::uint64_t gen_seed = seed + counter++;
            Rng tree_rng(seed + counter++);
            const std::vector<double> path = gen_fbm_path(h, length, gen_seed);
            const VisibilityGraph g =
                build_visibility_graph(path, WeightKind::Difference);
            cell.measure(g, tree_rng);
        }
        const ScanPoint pt = cell.finish("H=" + format_double(h), h);
        xs.push_back(h);
        max_means.push_back(pt.maxst.mean);
        min_means.push_back(pt.minst.mean);
        ran_means.push_back(pt.ranst.mean);
        rep.points.push_back(pt);
    }

    if (hursts.size() >= 3) {
        rep.regressions.push_back(
            labeled_ols("maxst_mean_vs_H", xs, max_means, Transform::Identity));
        rep.regressions.push_back(
            labeled_ols("minst_mean_vs_H", xs, min_means, Transform::Identity));
        rep.regressions.push_back(
            labeled_ols("ranst_mean_vs_H", xs, ran_means, Transform::Identity));
    }
    return rep;
}

namespace {

OrderingCheck order_check(std::string label, const EnsembleStat& lo,
                          const EnsembleStat& hi) {
    OrderingCheck c;
    c.label = std::move(label);
    c.gap = hi.mean - lo.mean;
    c.combined_se = std::sqrt(lo.sd * lo.sd / static_cast<double>(lo.count) +
                              hi.sd * hi.sd / static_cast<double>(hi.count));
    c.holds = c.gap > 0.0;
    c.significant = c.gap > 2.0 * c.combined_se;
    return c;
}

}  // namespace

ScanReport surrogate_compare(const PriceSeries& s, std::size_t realizations,
                             std::uint64_t seed) {
    if (realizations < 2)
        throw Error("surrogate comparison needs realizations >= 2");
    validate_series(s);

    ScanReport rep;
    rep.kind = "surrogate-compare";

    // Seed layout: the original's RanST ensemble takes seed+0 .. seed+R-1
    // inside analyze_index; the per-kind blocks then continue the counter,
    // two objects (series, tree) per realization, kinds in listed order.
    rep.original = analyze_index(s, realizations, seed);
    std::uint64_t counter = realizations;

    const SurrogateKind kinds[] = {SurrogateKind::Surr1, SurrogateKind::Surr2,
                                   SurrogateKind::Surr3};
    for (SurrogateKind kind : kinds) {
        CellAcc cell;
        for (std::size_t i = 0; i < realizations; ++i) {
            const std::uint64_t gen_seed = seed + counter++;
            Rng tree_rng(seed + counter++);
            const PriceSeries surr = make_surrogate(s, kind, gen_seed);
            cell.measure(build_visibility_graph(surr), tree_rng);
        }
        rep.points.push_back(cell.finish(surrogate_kind_name(kind), 0.0));
    }

    // Matched-length Brownian baseline, raw-walk convention.
    {
        CellAcc cell;
        for (std::size_t i = 0; i < realizations; ++i) {
            const std::uint64_t gen_seed = seed + counter++;
            Rng tree_rng(seed + counter++);
            const std::vector<double> path =
                gen_brownian_path(s.size(), gen_seed);
            cell.measure(build_visibility_graph(path, WeightKind::Difference),
                         tree_rng);
        }
        rep.points.push_back(cell.finish("bm", 0.0));
    }

    const ScanPoint& surr1 = rep.points[0];
    const ScanPoint& surr2 = rep.points[1];
    const ScanPoint& surr3 = rep.points[2];
    const ScanPoint& bm = rep.points[3];
    rep.orderings.push_back(
        order_check("maxst: bm < surr1", bm.maxst, surr1.maxst));
    rep.orderings.push_back(
        order_check("maxst: surr2 < surr3", surr2.maxst, surr3.maxst));
    rep.orderings.push_back(
        order_check("minst: bm < surr1", bm.minst, surr1.minst));
    rep.orderings.push_back(
        order_check("minst: surr2 < surr3", surr2.minst, surr3.minst));
    return rep;
}

namespace {

ordered_json to_json(const TreeFit& f) {
    return {{"eta", f.eta},
            {"stderr", f.stderr_eta},
            {"n_fit_points", f.n_fit_points}};
}

ordered_json to_json(const EnsembleStat& e) {
    return {{"mean", e.mean},
            {"sd", e.sd},
            {"count", e.count},
            {"dropped", e.dropped}};
}

ordered_json to_json(const LabeledRegression& lr) {
    return {{"label", lr.label},
            {"a", lr.fit.a},
            {"b", lr.fit.b},
            {"stderr_a", lr.fit.stderr_a},
            {"stderr_b", lr.fit.stderr_b},
            {"p_a", lr.fit.p_a},
            {"p_b", lr.fit.p_b},
            {"n", lr.fit.n},
            {"transform", transform_name(lr.fit.transform)}};
}

ordered_json labeled(const char* label, ordered_json body) {
    ordered_json row;
    row["label"] = label;
    row.update(body);
    return row;
}

ordered_json index_rows(const IndexReport& r) {
    ordered_json rows = ordered_json::array();
    rows.push_back({{"label", "series"},
                    {"name", r.label},
                    {"length", r.length}});
    rows.push_back(labeled("maxst", to_json(r.maxst)));
    rows.push_back(labeled("minst", to_json(r.minst)));
    ordered_json ranst = labeled("ranst", to_json(r.ranst));
    ranst["requested"] = r.ranst_count;
    rows.push_back(std::move(ranst));
    return rows;
}

std::string assemble(const std::string& config_json, ordered_json results,
                     ordered_json regressions) {
    ordered_json config;
    try {
        config = ordered_json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("config is not valid JSON: ") + e.what());
    }
    ordered_json doc;
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    doc["regressions"] = std::move(regressions);
    return doc.dump(2) + "\n";
}

}  // namespace

std::string report_json(const IndexReport& r, const std::string& config_json) {
    return assemble(config_json, index_rows(r), ordered_json::array());
}

std::string report_json(const ScanReport& r, const std::string& config_json) {
    ordered_json rows = ordered_json::array();
    if (r.original.has_value()) {
        for (ordered_json& row : index_rows(*r.original)) {
            row["label"] = "original " + row["label"].get<std::string>();
            rows.push_back(std::move(row));
        }
    }
    for (const ScanPoint& pt : r.points) {
        rows.push_back({{"label", pt.label},
                        {"x", pt.x},
                        {"maxst", to_json(pt.maxst)},
                        {"minst", to_json(pt.minst)},
                        {"ranst", to_json(pt.ranst)}});
    }
    for (const OrderingCheck& c : r.orderings) {
        rows.push_back({{"label", "ordering " + c.label},
                        {"gap", c.gap},
                        {"combined_se", c.combined_se},
                        {"holds", c.holds},
                        {"significant", c.significant}});
    }
    ordered_json regs = ordered_json::array();
    for (const LabeledRegression& lr : r.regressions) regs.push_back(to_json(lr));
    return assemble(config_json, std::move(rows), std::move(regs));
}

}  // namespace vgt
