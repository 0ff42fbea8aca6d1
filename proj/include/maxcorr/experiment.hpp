#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maxcorr/generators.hpp"
#include "maxcorr/independence.hpp"
#include "maxcorr/types.hpp"

namespace maxcorr {

struct ExperimentConfig {
    Family family;
    std::size_t n = 0, p = 0;
    std::vector<Kernel> kernels;
    double alpha = 0.05;
    std::size_t reps = 0;
    TestMode mode = TestMode::asymptotic;
    std::size_t mc_reps = 5000;  // inner draws per monte_carlo threshold
    std::uint64_t seed = 0;
    double rho = 0.0;
};

struct ExperimentRow {
    Kernel kind;
    std::size_t n = 0, p = 0;
    double rejection_rate = 0;
    std::size_t reps = 0;
    TestMode mode = TestMode::asymptotic;
    double wall_s = 0;
};

// One size/power run: reps independent datasets (replicate t uses
// seed_stream(seed, t)), each tested with every requested kernel. Monte-Carlo
// thresholds depend only on (n, p, kernel), so their null samples are drawn
// once and shared across replicates. Rows come back sorted by (kind, n, p).
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

struct TauStarEstimate {
    double mean = 0, se = 0;
    std::size_t reps = 0;
};

// Mean of tau*-hat over reps datasets from a p = 2 generator, with the
// standard error of that mean; estimates the population coefficient.
TauStarEstimate estimate_population_taustar(const GeneratorSpec& spec, std::size_t reps,
                                            std::uint64_t seed);

}  // namespace maxcorr
