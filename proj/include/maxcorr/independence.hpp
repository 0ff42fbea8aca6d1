#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maxcorr/null_dist.hpp"
#include "maxcorr/types.hpp"

namespace maxcorr {

// Symmetric p x p matrix of pair statistics with unit diagonal.
class PairStatMatrix {
  public:
    PairStatMatrix(Kernel kind, std::size_t n, std::size_t p);

    Kernel kind() const { return kind_; }
    std::size_t sample_size() const { return n_; }
    std::size_t dim() const { return p_; }
    double operator()(std::size_t j, std::size_t k) const { return v_[j * p_ + k]; }
    void set(std::size_t j, std::size_t k, double x) { v_[j * p_ + k] = v_[k * p_ + j] = x; }
    double max_offdiag() const;

  private:
    Kernel kind_;
    std::size_t n_, p_;
    std::vector<double> v_;
};

// All p(p-1)/2 pair statistics; pairs are independent work items and run in
// parallel when OpenMP is enabled (output is identical either way).
PairStatMatrix pairwise_matrix(const RankMatrix& ranks, Kernel kind);

// Maxima of the off-diagonal pair statistics for several kernels in one pass
// over the pairs; computes tau* (and D where required) only once per pair.
struct PairMaxima {
    double d = 0, r = 0, t = 0;
    bool has_d = false, has_r = false, has_t = false;
    double get(Kernel k) const;
};
PairMaxima pair_maxima(const RankMatrix& ranks, bool want_d, bool want_r, bool want_t);

enum class TestMode { asymptotic, monte_carlo };

const char* mode_name(TestMode m);

struct TestOutcome {
    Kernel kind;
    std::size_t n = 0, p = 0;
    double statistic = 0;  // standardized max S
    double threshold = 0;
    double p_value = 0;
    bool reject = false;
    TestMode mode = TestMode::asymptotic;
    std::size_t mc_reps = 0;     // 0 unless monte_carlo
    std::uint64_t seed = 0;      // 0 unless monte_carlo

    // flat record for CSV/JSON rendering
    std::vector<std::pair<std::string, std::string>> flat_record() const;
};

// Max-type test with the closed-form Gumbel critical value. Rejects when
// S > q_alpha; p-value is 1 - gumbel_cdf(S).
TestOutcome asymptotic_test(const RankMatrix& ranks, Kernel kind, double alpha);
TestOutcome asymptotic_test(const DataMatrix& data, Kernel kind, double alpha);

// Sorted sample of the standardized max under the null, obtained from
// mc_reps draws of p independent uniform column permutations. Depends only
// on (n, p, kind, mc_reps, seed), never on observed data.
std::vector<double> mc_null_sample(std::size_t n, std::size_t p, Kernel kind,
                                   std::size_t mc_reps, std::uint64_t seed);

// Empirical 1-alpha quantile (smallest y with F_hat(y) >= 1-alpha).
double mc_threshold(const std::vector<double>& sorted_null, double alpha);

// Finite-sample valid p-value (1 + #{S_t >= s}) / (M + 1).
double mc_p_value(const std::vector<double>& sorted_null, double s);

// Monte-Carlo exact test: rejects when S strictly exceeds the empirical
// threshold, so a boundary tie keeps the null.
TestOutcome mc_exact_test(const RankMatrix& ranks, Kernel kind, double alpha,
                          std::size_t mc_reps, std::uint64_t seed);
TestOutcome mc_exact_test(const DataMatrix& data, Kernel kind, double alpha,
                          std::size_t mc_reps, std::uint64_t seed);

}  // namespace maxcorr
