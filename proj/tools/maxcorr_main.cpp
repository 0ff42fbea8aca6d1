#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxcorr/core_stats.hpp"
#include "maxcorr/csv.hpp"
#include "maxcorr/experiment.hpp"
#include "maxcorr/generators.hpp"
#include "maxcorr/independence.hpp"
#include "maxcorr/null_dist.hpp"

using nlohmann::json;

namespace {

using namespace maxcorr;

TestMode mode_from_name(const std::string& s) {
    if (s == "asymptotic") return TestMode::asymptotic;
    if (s == "mc") return TestMode::monte_carlo;
    throw spec_invalid("unknown mode '" + s + "' (expected asymptotic or mc)");
}

std::vector<Kernel> kernels_from_list(const std::string& list) {
    std::vector<Kernel> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        const Kernel k = kernel_from_name(cur);
        bool seen = false;
        for (const Kernel have : out) seen = seen || have == k;
        if (!seen) out.push_back(k);
        cur.clear();
    };
    for (const char ch : list) {
        if (ch == ',') flush();
        else cur += ch;
    }
    flush();
    if (out.empty()) throw spec_invalid("empty statistic list");
    return out;
}

void print_flat(const TestOutcome& out) {
    for (const auto& [key, val] : out.flat_record())
        std::printf("%-10s %s\n", key.c_str(), val.c_str());
}

json outcome_json(const TestOutcome& out) {
    json j;
    j["kind"] = kernel_name(out.kind);
    j["n"] = out.n;
    j["p"] = out.p;
    j["statistic"] = out.statistic;
    j["threshold"] = out.threshold;
    j["p_value"] = out.p_value;
    j["reject"] = out.reject;
    j["mode"] = mode_name(out.mode);
    j["seed"] = out.seed;
    if (out.mode == TestMode::monte_carlo) j["mc_reps"] = out.mc_reps;
    return j;
}

struct TestArgs {
    std::string input, stat = "d", mode = "asymptotic";
    double alpha = 0.05;
    std::size_t reps = 5000;
    std::uint64_t seed = 0;
    bool as_json = false;
};

int cmd_test(const TestArgs& a) {
    const DataMatrix data = read_matrix_csv(a.input);
    const Kernel kind = kernel_from_name(a.stat);
    const TestMode mode = mode_from_name(a.mode);
    const TestOutcome out = mode == TestMode::monte_carlo
                                ? mc_exact_test(data, kind, a.alpha, a.reps, a.seed)
                                : asymptotic_test(data, kind, a.alpha);
    if (a.as_json)
        std::printf("%s\n", outcome_json(out).dump(2).c_str());
    else
        print_flat(out);
    return 0;
}

struct StatArgs {
    std::string input, stat = "d", output;
};

int cmd_stat(const StatArgs& a) {
    const DataMatrix data = read_matrix_csv(a.input);
    const Kernel kind = kernel_from_name(a.stat);
    const RankMatrix ranks = rank_transform(data);
    const PairStatMatrix m = pairwise_matrix(ranks, kind);
    write_matrix_csv(a.output, m);
    std::printf("stat       %s\nn          %zu\np          %zu\nmax_pair   %.10g\nwrote      %s\n",
                kernel_name(kind), m.sample_size(), m.dim(), m.max_offdiag(), a.output.c_str());
    return 0;
}

struct SimArgs {
    std::string example, stats = "d,r,taustar", mode = "asymptotic", out;
    std::size_t n = 0, p = 0, reps = 0, mc_draws = 5000;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

int cmd_simulate(const SimArgs& a) {
    ExperimentConfig cfg;
    cfg.family = family_from_example(a.example);
    cfg.n = a.n;
    cfg.p = a.p;
    cfg.kernels = kernels_from_list(a.stats);
    cfg.alpha = a.alpha;
    cfg.reps = a.reps;
    cfg.mode = mode_from_name(a.mode);
    cfg.mc_reps = a.mc_draws;
    cfg.seed = a.seed;

    const auto rows = run_experiment(cfg);
    write_rows_csv(a.out, rows);

    json meta;
    meta["example"] = a.example;
    meta["family"] = family_name(cfg.family);
    meta["n"] = cfg.n;
    meta["p"] = cfg.p;
    json stats = json::array();
    for (const Kernel k : cfg.kernels) stats.push_back(kernel_name(k));
    meta["stats"] = stats;
    meta["alpha"] = cfg.alpha;
    meta["reps"] = cfg.reps;
    meta["mode"] = mode_name(cfg.mode);
    if (cfg.mode == TestMode::monte_carlo) meta["mc_draws"] = cfg.mc_reps;
    meta["seed"] = cfg.seed;
    json jrows = json::array();
    for (const auto& r : rows) {
        json jr;
        jr["kind"] = kernel_name(r.kind);
        jr["n"] = r.n;
        jr["p"] = r.p;
        jr["rejection_rate"] = r.rejection_rate;
        jr["reps"] = r.reps;
        jr["mode"] = mode_name(r.mode);
        jr["wall_s"] = r.wall_s;
        jrows.push_back(jr);
    }
    meta["rows"] = jrows;
    std::ofstream metaf(a.out + ".meta.json");
    if (!metaf) throw csv_error("cannot open " + a.out + ".meta.json for writing");
    metaf << meta.dump(2) << '\n';

    std::printf("%-8s %6s %6s %14s %6s %10s %9s\n", "kind", "n", "p", "rejection_rate", "reps",
                "mode", "wall_s");
    for (const auto& r : rows)
        std::printf("%-8s %6zu %6zu %14.4f %6zu %10s %9.2f\n", kernel_name(r.kind), r.n, r.p,
                    r.rejection_rate, r.reps, mode_name(r.mode), r.wall_s);
    std::printf("wrote %s and %s.meta.json\n", a.out.c_str(), a.out.c_str());
    return 0;
}

int cmd_constants(const std::string& stat, bool as_json) {
    const NullSpec spec = null_spec_for(kernel_from_name(stat));
    const double q01 = q_alpha(0.01, spec), q05 = q_alpha(0.05, spec), q10 = q_alpha(0.10, spec);
    if (as_json) {
        json j;
        j["stat"] = kernel_name(spec.kind);
        j["m"] = spec.m;
        j["lambda1"] = spec.lambda1;
        j["Lambda"] = spec.Lambda;
        j["mu1"] = spec.mu1;
        j["kappa"] = spec.kappa;
        j["q_alpha"] = {{"0.01", q01}, {"0.05", q05}, {"0.10", q10}};
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("stat       %s\n", kernel_name(spec.kind));
        std::printf("m          %d\n", spec.m);
        std::printf("lambda1    %.12g\n", spec.lambda1);
        std::printf("Lambda     %.12g\n", spec.Lambda);
        std::printf("mu1        %g\n", spec.mu1);
        std::printf("kappa      %.12g\n", spec.kappa);
        std::printf("Q[0.01]    %.10f\n", q01);
        std::printf("Q[0.05]    %.10f\n", q05);
        std::printf("Q[0.10]    %.10f\n", q10);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-based dependence statistics and max-type independence tests"};
    app.require_subcommand(1);

    TestArgs ta;
    auto* test_cmd = app.add_subcommand("test", "test mutual independence on a CSV dataset");
    test_cmd->add_option("--input", ta.input, "CSV file, rows = observations")->required();
    test_cmd->add_option("--stat", ta.stat, "statistic: d, r, or taustar");
    test_cmd->add_option("--alpha", ta.alpha, "significance level");
    test_cmd->add_option("--mode", ta.mode, "asymptotic or mc");
    test_cmd->add_option("--reps", ta.reps, "monte carlo draws (mc mode)");
    test_cmd->add_option("--seed", ta.seed, "monte carlo seed (mc mode)");
    test_cmd->add_flag("--json", ta.as_json, "emit JSON instead of a table");

    StatArgs sa;
    auto* stat_cmd = app.add_subcommand("stat", "write the pairwise statistic matrix");
    stat_cmd->add_option("--input", sa.input, "CSV file, rows = observations")->required();
    stat_cmd->add_option("--stat", sa.stat, "statistic: d, r, or taustar");
    stat_cmd->add_option("--output", sa.output, "output CSV for the p x p matrix")->required();

    SimArgs ma;
    auto* sim_cmd = app.add_subcommand("simulate", "size/power experiment on a simulation design");
    sim_cmd->add_option("--example", ma.example,
                        "design: 5a 5b 5c 5d 6a 6b 7a 7b 8a 8b 8c circle")
        ->required();
    sim_cmd->add_option("--n", ma.n, "sample size")->required();
    sim_cmd->add_option("--p", ma.p, "number of variables")->required();
    sim_cmd->add_option("--reps", ma.reps, "number of replicate datasets")->required();
    sim_cmd->add_option("--alpha", ma.alpha, "significance level");
    sim_cmd->add_option("--stats", ma.stats, "comma-separated list from d,r,taustar");
    sim_cmd->add_option("--mode", ma.mode, "asymptotic or mc");
    sim_cmd->add_option("--mc-draws", ma.mc_draws, "null draws per monte carlo threshold");
    sim_cmd->add_option("--seed", ma.seed, "master seed");
    sim_cmd->add_option("--out", ma.out, "output CSV of result rows")->required();

    std::string const_stat = "d";
    bool const_json = false;
    auto* const_cmd = app.add_subcommand("constants", "print null-distribution constants");
    const_cmd->add_option("--stat", const_stat, "statistic: d, r, or taustar");
    const_cmd->add_flag("--json", const_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (test_cmd->parsed()) return cmd_test(ta);
        if (stat_cmd->parsed()) return cmd_stat(sa);
        if (sim_cmd->parsed()) return cmd_simulate(ma);
        if (const_cmd->parsed()) return cmd_constants(const_stat, const_json);
    } catch (const ties_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const csv_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const matrix_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
