#include "maxcorr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>

#include "maxcorr/core_stats.hpp"
#include "maxcorr/rng.hpp"

namespace maxcorr {

namespace {

// Stream ids for seed_stream: replicate t uses the plain counter t; auxiliary
// draws (monte carlo null samples) use a high offset so they never collide.
constexpr std::uint64_t kNullStreamBase = 1ULL << 40;

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
    if (config.reps < 1) throw spec_invalid("experiment needs reps >= 1");
    if (config.kernels.empty()) throw spec_invalid("experiment needs at least one statistic");
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw invalid_alpha(config.alpha);

    const auto t0 = std::chrono::steady_clock::now();

    bool want_d = false, want_r = false, want_t = false;
    for (const Kernel k : config.kernels) {
        want_d |= k == Kernel::hoeffding_d;
        want_r |= k == Kernel::bkr_r;
        want_t |= k == Kernel::tau_star;
    }

    // Monte-Carlo thresholds depend only on (n, p, kernel); draw each null
    // sample once and share it across replicates.
    std::map<Kernel, double> mc_thresholds;
    if (config.mode == TestMode::monte_carlo) {
        for (const Kernel k : config.kernels) {
            const auto null_seed =
                seed_stream(config.seed, kNullStreamBase + static_cast<std::uint64_t>(k));
            const auto sample =
                mc_null_sample(config.n, config.p, k, config.mc_reps, null_seed);
            mc_thresholds[k] = mc_threshold(sample, config.alpha);
        }
    }

    std::map<Kernel, NullSpec> specs;
    std::map<Kernel, double> asym_thresholds;
    for (const Kernel k : config.kernels) {
        specs.emplace(k, null_spec_for(k));
        asym_thresholds[k] = q_alpha(config.alpha, specs.at(k));
    }

    // one rejection flag slot per (replicate, kernel): order-independent
    std::vector<std::uint8_t> rejects(config.reps * config.kernels.size(), 0);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(config.reps); ++t) {
        try {
            GeneratorSpec gs{config.family, config.n, config.p,
                             seed_stream(config.seed, static_cast<std::uint64_t>(t)), config.rho};
            const DataMatrix data = generate(gs);
            const RankMatrix ranks = rank_transform(data);
            const PairMaxima mx = pair_maxima(ranks, want_d, want_r, want_t);
            for (std::size_t ki = 0; ki < config.kernels.size(); ++ki) {
                const Kernel k = config.kernels[ki];
                const double s = standardize_max(mx.get(k), config.n, config.p, specs.at(k));
                const double thr = config.mode == TestMode::monte_carlo ? mc_thresholds.at(k)
                                                                        : asym_thresholds.at(k);
                rejects[t * config.kernels.size() + ki] = s > thr ? 1 : 0;
            }
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<ExperimentRow> rows;
    for (std::size_t ki = 0; ki < config.kernels.size(); ++ki) {
        std::size_t hits = 0;
        for (std::size_t t = 0; t < config.reps; ++t)
            hits += rejects[t * config.kernels.size() + ki];
        ExperimentRow row;
        row.kind = config.kernels[ki];
        row.n = config.n;
        row.p = config.p;
        row.rejection_rate = static_cast<double>(hits) / static_cast<double>(config.reps);
        row.reps = config.reps;
        row.mode = config.mode;
        row.wall_s = wall;
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.n != b.n) return a.n < b.n;
        return a.p < b.p;
    });
    return rows;
}

TauStarEstimate estimate_population_taustar(const GeneratorSpec& spec, std::size_t reps,
                                            std::uint64_t seed) {
    if (spec.p != 2) throw spec_invalid("population tau* estimation needs a bivariate generator");
    if (spec.n < 4) throw sample_too_small("estimate_population_taustar", 4, spec.n);
    if (reps < 2) throw spec_invalid("estimate_population_taustar needs reps >= 2");

    std::vector<double> vals(reps);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(reps); ++t) {
        try {
            GeneratorSpec gs = spec;
            gs.seed = seed_stream(seed, static_cast<std::uint64_t>(t));
            const DataMatrix data = generate(gs);
            const RankMatrix ranks = rank_transform(data);
            vals[t] = tau_star(PairedRanks(ranks, 0, 1));
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    long double sum = 0;
    for (const double v : vals) sum += v;
    const double mean = static_cast<double>(sum / static_cast<long double>(reps));
    long double ss = 0;
    for (const double v : vals) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(static_cast<double>(ss / static_cast<long double>(reps - 1)));

    TauStarEstimate est;
    est.mean = mean;
    est.se = sd / std::sqrt(static_cast<double>(reps));
    est.reps = reps;
    return est;
}

}  // namespace maxcorr
