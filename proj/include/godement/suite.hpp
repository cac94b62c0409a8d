#pragma once

// Randomized theorem suites over a grid of groups and dimensions.
//
// Every trial draws its inputs from seeds derived from (seed, group index,
// n, trial), so results do not depend on thread count or scheduling.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "serialize.hpp"
#include "theorems.hpp"

namespace godement {

struct SuiteConfig {
    std::string name = "default";
    std::vector<std::string> groups{"cyclic:6", "dihedral:4", "quaternion", "symmetric:3"};
    std::vector<std::size_t> dims{1, 2};
    std::size_t trials = 100;
    std::uint64_t seed = 20090101;
    double tol = 1e-8;           // square-root residual
    double algebra_tol = 1e-10;  // inner-product identities
    bool iterative = true;
    std::size_t max_iter = 200000;
    bool allow_empty = false;
    bool inject_non_pd = false;  // add one non-PD input per Theorem A cell
    std::size_t threads = 0;     // 0: GODEMENT_SUITE_THREADS or hardware concurrency
    std::string output;
};

inline void validate(const SuiteConfig& c) {
    if (c.trials < 1) throw SchemaError("suite config: trials must be >= 1");
    if (!(c.tol > 0) || !(c.algebra_tol > 0)) throw SchemaError("suite config: tolerances must be > 0");
    if (c.groups.empty() && !c.allow_empty) throw SchemaError("suite config: no groups (set allow_empty to run nothing)");
    for (std::size_t n : c.dims)
        if (n < 1) throw SchemaError("suite config: dimensions must be >= 1");
}

inline SuiteConfig suite_config_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("suite config must be a JSON object");
    SuiteConfig c;
    try {
        if (j.contains("name")) c.name = j.at("name").get<std::string>();
        if (j.contains("groups")) c.groups = j.at("groups").get<std::vector<std::string>>();
        if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<std::size_t>>();
        if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("tol")) c.tol = j.at("tol").get<double>();
        if (j.contains("algebra_tol")) c.algebra_tol = j.at("algebra_tol").get<double>();
        if (j.contains("iterative")) c.iterative = j.at("iterative").get<bool>();
        if (j.contains("max_iter")) c.max_iter = j.at("max_iter").get<std::size_t>();
        if (j.contains("allow_empty")) c.allow_empty = j.at("allow_empty").get<bool>();
        if (j.contains("inject_non_pd")) c.inject_non_pd = j.at("inject_non_pd").get<bool>();
        if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
        if (j.contains("output")) c.output = j.at("output").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("suite config: ") + e.what());
    }
    validate(c);
    return c;
}

inline Json to_json(const SuiteConfig& c) {
    return Json{{"name", c.name},         {"groups", c.groups},           {"dims", c.dims},
                {"trials", c.trials},     {"seed", c.seed},               {"tol", c.tol},
                {"algebra_tol", c.algebra_tol}, {"iterative", c.iterative}, {"max_iter", c.max_iter},
                {"allow_empty", c.allow_empty}, {"inject_non_pd", c.inject_non_pd}};
}

/// One flat row per check, for CSV output.
struct TrialRow {
    Theorem theorem;
    std::string group;
    std::size_t n;
    std::size_t trial;
    double residual;
    bool passed;
};

struct SuiteResult {
    std::vector<TheoremReport> reports;
    std::vector<TrialRow> rows;
    bool passed = true;
};

inline std::size_t suite_threads(const SuiteConfig& c) {
    std::size_t t = c.threads;
    if (t == 0) {
        if (const char* env = std::getenv("GODEMENT_SUITE_THREADS")) t = std::strtoul(env, nullptr, 10);
    }
    if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
    return t;
}

namespace detail {

inline constexpr std::size_t kChecksPerTrial = 5;  // A, B, C (orthogonal), C (random), inner_trace

/// Hermitian but indefinite: delta at e with I_n except a -1 in the corner.
inline MatFun non_pd_probe(const GroupPtr& g, std::size_t n) {
    MatFun m = delta_identity(g, n);
    m[g->identity](0, 0) = -1.0;
    return m;
}

inline std::vector<TheoremReport> run_trial(const SuiteConfig& c, const GroupPtr& g, std::size_t gi,
                                            std::size_t n, std::size_t trial) {
    const MatFun phi = make_pd(random_matfun(g, n, derive_seed(c.seed, {gi, n, trial, 0})));
    const MatFun psi = make_pd(random_matfun(g, n, derive_seed(c.seed, {gi, n, trial, 1})));

    TheoremAOptions a;
    a.tol = c.tol;
    a.iterative = c.iterative;
    a.max_iter = c.max_iter;

    std::vector<TheoremReport> out;
    out.reserve(kChecksPerTrial);
    out.push_back(check_theorem_A(phi, a));
    out.push_back(check_theorem_B(phi, psi, c.algebra_tol));

    const SpectralDecomposition sd = spectral_decompose(build_lambda(phi));
    if (sd.eigenvalues.size() >= 2 && sd.max_eigenvalue() - sd.min_eigenvalue() > 0) {
        auto [low, high] = build_orthogonal_pd_pair(phi, central_spectral_gap(sd));
        out.push_back(check_theorem_C(low, high, c.algebra_tol));
    } else {
        out.push_back(check_theorem_C(phi, zero_function(g, n), c.algebra_tol));
    }
    out.push_back(check_theorem_C(phi, psi, c.algebra_tol));
    out.push_back(check_lemma_inner_trace(phi, psi, c.algebra_tol));
    return out;
}

}  // namespace detail

inline SuiteResult run_suite(const SuiteConfig& c) {
    validate(c);
    struct Cell {
        GroupPtr group;
        std::size_t gi, n;
    };
    std::vector<Cell> cells;
    for (std::size_t gi = 0; gi < c.groups.size(); ++gi) {
        const GroupPtr g = make_group(c.groups[gi]);
        for (std::size_t n : c.dims) cells.push_back({g, gi, n});
    }

    const std::size_t jobs = cells.size() * c.trials;
    std::vector<std::vector<TheoremReport>> results(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < jobs;) {
            const Cell& cell = cells[k / c.trials];
            results[k] = detail::run_trial(c, cell.group, cell.gi, cell.n, k % c.trials);
        }
    };
    const std::size_t nthreads = std::min(suite_threads(c), std::max<std::size_t>(jobs, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SuiteResult res;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell& cell = cells[ci];
        std::vector<TheoremReport> agg;
        for (std::size_t t = 0; t < c.trials; ++t) {
            const auto& trial = results[ci * c.trials + t];
            for (const auto& r : trial) {
                res.rows.push_back({r.theorem, cell.group->id, cell.n, t, r.worst_residual, r.passed});
                auto it = std::find_if(agg.begin(), agg.end(), [&](const TheoremReport& a) { return a.theorem == r.theorem; });
                if (it == agg.end()) agg.push_back(r);
                else merge_into(*it, r);
            }
        }
        if (c.inject_non_pd) {
            const TheoremReport bad = check_theorem_A(detail::non_pd_probe(cell.group, cell.n));
            res.rows.push_back({bad.theorem, cell.group->id, cell.n, c.trials, bad.worst_residual, bad.passed});
            merge_into(agg.front(), bad);
        }
        for (auto& r : agg) {
            r.group = cell.group->id;
            r.n = cell.n;
            res.passed = res.passed && r.passed;
            res.reports.push_back(std::move(r));
        }
    }
    return res;
}

/// Report document. The timestamp is the only field that varies between
/// runs of the same config.
inline Json suite_report_json(const SuiteConfig& c, const SuiteResult& r, const std::string& timestamp) {
    Json reports = Json::array();
    for (const auto& rep : r.reports) reports.push_back(to_json(rep));
    return Json{{"suite", c.name},         {"seed", c.seed},       {"timestamp", timestamp},
                {"config", to_json(c)},     {"passed", r.passed},   {"reports", std::move(reports)}};
}

inline std::string suite_rows_csv(const SuiteResult& r) {
    std::string out = "theorem,group,n,trial,residual,passed\n";
    char buf[64];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.residual);
        out += std::string(to_string(row.theorem)) + ",\"" + row.group + "\"," + std::to_string(row.n) + "," +
               std::to_string(row.trial) + "," + buf + "," + (row.passed ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace godement
