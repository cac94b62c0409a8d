#pragma once

// Command-line driver. run_cli holds all behaviour so tests can call it
// in-process; main() only forwards argv.
//
// Exit codes: 0 pass, 1 property failure, 2 unreadable file or bad usage,
// 3 schema violation, 4 group mismatch between file and --group.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <godement/godement.hpp>

namespace godement::cli {

enum ExitCode : int { exit_pass = 0, exit_property = 1, exit_usage = 2, exit_schema = 3, exit_mismatch = 4 };

class UsageError : public Error {
public:
    using Error::Error;
};

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f || !(f << text)) throw UsageError("cannot write '" + path + "'");
}

inline void emit(const Json& j, const std::string& path, std::ostream& out) { write_text(j.dump(2) + "\n", path, out); }

inline GroupPtr group_flag(const std::string& spec) {
    try {
        return make_group(spec);
    } catch (const SchemaError& e) {
        throw UsageError(std::string("--group: ") + e.what());
    }
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Options {
    std::string group;
    std::vector<std::string> groups;
    std::size_t n = 1;
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::string method = "spectral";
    std::string out;
    std::string csv;
    std::string file;
    std::string config;
    double threshold = 0;
    std::size_t max_iter = 200000;
    std::optional<std::size_t> trials;
};

inline MatFun load_matfun(const Options& o) {
    const Json j = read_json_file(o.file);
    return matfun_from_json(j, o.group.empty() ? nullptr : group_flag(o.group));
}

inline int cmd_gen_group(const Options& o, std::ostream& out) {
    emit(to_json(*group_flag(o.group)), o.out, out);
    return exit_pass;
}

inline int cmd_sample_pd(const Options& o, std::ostream& out) {
    const GroupPtr g = group_flag(o.group);
    emit(to_json(make_pd(random_matfun(g, o.n, o.seed))), o.out, out);
    return exit_pass;
}

inline int cmd_certify(const Options& o, std::ostream& out) {
    const PDCertificate c = is_positive_definite(load_matfun(o), o.tol.value_or(kDefaultPdTol));
    emit(to_json(c), o.out, out);
    return c.positive() ? exit_pass : exit_property;
}

inline int cmd_sqrt(const Options& o, std::ostream& out) {
    const MatFun phi = load_matfun(o);
    const double tol = o.tol.value_or(1e-8);
    SqrtResult r = o.method == "iterative" ? sqrt_iterative(phi, o.max_iter, tol) : sqrt_spectral(phi, tol);
    emit(to_json(r), o.out, out);
    return exit_pass;
}

inline int cmd_truncate(const Options& o, std::ostream& out) {
    emit(to_json(spectral_truncate(load_matfun(o), o.threshold)), o.out, out);
    return exit_pass;
}

inline int cmd_suite(const Options& o, std::ostream& out) {
    SuiteConfig c = o.config.empty() ? SuiteConfig{} : suite_config_from_json(read_json_file(o.config));
    if (!o.groups.empty()) c.groups = o.groups;
    if (!o.dims.empty()) c.dims = o.dims;
    if (o.seed != 0) c.seed = o.seed;
    if (o.tol) c.tol = *o.tol;
    if (o.trials) c.trials = *o.trials;
    if (!o.out.empty()) c.output = o.out;
    for (const auto& spec : c.groups) group_flag(spec);
    validate(c);

    const SuiteResult r = run_suite(c);
    emit(suite_report_json(c, r, utc_timestamp()), c.output, out);
    if (!o.csv.empty()) write_text(suite_rows_csv(r), o.csv, out);
    return r.passed ? exit_pass : exit_property;
}

/// Regular representation and its tensor square on one group: invariant
/// checks plus the tensor-sum nonnegativity on random vectors.
inline int cmd_rep_demo(const Options& o, std::ostream& out) {
    const GroupPtr g = group_flag(o.group.empty() ? "dihedral:3" : o.group);
    const UnitaryRep reg = regular_rep(g);
    const auto u1 = random_vectors(o.n, reg.dim, derive_seed(o.seed, {1}));
    const auto u2 = random_vectors(o.n, reg.dim, derive_seed(o.seed, {2}));
    const double tol = o.tol.value_or(1e-10);
    const RepCheck rc = check_rep(reg);
    const TensorNonnegValues v = tensor_nonneg_values(reg, u1, reg, u2);
    const TheoremReport rep = check_tensor_nonneg(reg, u1, reg, u2, tol);
    auto cplx = [](Complex z) { return Json::array({z.real(), z.imag()}); };
    const Json j{{"group_id", g->id},
                 {"dim", reg.dim},
                 {"vectors", o.n},
                 {"rep_check", {{"unitarity", rc.unitarity}, {"homomorphism", rc.homomorphism}, {"identity", rc.identity}}},
                 {"tensor_sum", {{"direct", cplx(v.direct)}, {"via_inner", cplx(v.via_inner)},
                                 {"via_tensor", cplx(v.via_tensor)}, {"scale", v.scale}}},
                 {"report", to_json(rep)}};
    emit(j, o.out, out);
    return rc.ok() && rep.passed ? exit_pass : exit_property;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Positive definite matrix functions on finite groups"};
    app.require_subcommand(1);
    Options o;

    auto group_opt = [&](CLI::App* s, bool required) {
        auto* opt = s->add_option("--group", o.group, "group spec, e.g. cyclic:6, dihedral:4, quaternion, symmetric:3, cyclic:2xklein");
        if (required) opt->required();
    };
    auto out_opt = [&](CLI::App* s) { s->add_option("--out", o.out, "write JSON here instead of stdout"); };
    auto file_arg = [&](CLI::App* s) { s->add_option("file", o.file, "MatFun JSON file")->required(); };

    auto* gen = app.add_subcommand("gen-group", "print a group's Cayley table as JSON");
    group_opt(gen, true);
    out_opt(gen);

    auto* sample = app.add_subcommand("sample-pd", "sample star(F)*F for a seeded Gaussian F");
    group_opt(sample, true);
    sample->add_option("--n", o.n, "matrix size")->check(CLI::PositiveNumber);
    sample->add_option("--seed", o.seed, "generator seed");
    out_opt(sample);

    auto* cert = app.add_subcommand("certify", "positive definiteness certificate (exit 1 if not PD)");
    file_arg(cert);
    group_opt(cert, false);
    cert->add_option("--tol", o.tol, "relative eigenvalue floor");
    out_opt(cert);

    auto* sq = app.add_subcommand("sqrt", "positive definite square root");
    file_arg(sq);
    group_opt(sq, false);
    sq->add_option("--method", o.method, "spectral or iterative")->check(CLI::IsMember({"spectral", "iterative"}));
    sq->add_option("--tol", o.tol, "residual tolerance");
    sq->add_option("--max-iter", o.max_iter, "iteration cap for the iterative method");
    out_opt(sq);

    auto* tr = app.add_subcommand("truncate", "spectral truncation Phi_t");
    file_arg(tr);
    group_opt(tr, false);
    tr->add_option("--t", o.threshold, "keep eigenvalues <= t")->required();
    out_opt(tr);

    auto* suite = app.add_subcommand("suite", "randomized theorem suite (exit 0 iff every report passes)");
    suite->add_option("--config", o.config, "SuiteConfig JSON");
    suite->add_option("--group", o.groups, "override the group list (repeatable)");
    suite->add_option("--n", o.dims, "override the dimension list (repeatable)");
    suite->add_option("--seed", o.seed, "override the seed");
    suite->add_option("--tol", o.tol, "override the square-root tolerance");
    suite->add_option("--trials", o.trials, "override trials per cell");
    suite->add_option("--csv", o.csv, "also write per-trial CSV rows here");
    out_opt(suite);

    auto* demo = app.add_subcommand("rep-demo", "tensor-sum nonnegativity for the regular representation");
    group_opt(demo, false);
    demo->add_option("--n", o.n, "number of vectors per factor")->check(CLI::PositiveNumber);
    demo->add_option("--seed", o.seed, "generator seed");
    demo->add_option("--tol", o.tol, "relative tolerance");
    out_opt(demo);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (*gen) return cmd_gen_group(o, out);
        if (*sample) return cmd_sample_pd(o, out);
        if (*cert) return cmd_certify(o, out);
        if (*sq) return cmd_sqrt(o, out);
        if (*tr) return cmd_truncate(o, out);
        if (*suite) return cmd_suite(o, out);
        if (*demo) return cmd_rep_demo(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const GroupMismatch& e) {
        err << "error: " << e.what() << "\n";
        return exit_mismatch;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return exit_schema;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_property;
    }
    return exit_usage;
}

}  // namespace godement::cli
