#include "maxcorr/independence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>

#include "maxcorr/core_stats.hpp"
#include "maxcorr/rng.hpp"

namespace maxcorr {

namespace {

double pair_d_stat(const std::int32_t* ss, std::size_t n) {
    const auto dc = detail::d_counts_auto(ss, n);
    return detail::d_from_counts(dc, n);
}

// rows[j*n + t] = row index holding rank t+1 in column j
std::vector<std::int32_t> rank_positions(const RankMatrix& ranks) {
    const std::size_t n = ranks.rows(), p = ranks.cols();
    std::vector<std::int32_t> pos(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        const std::int32_t* r = ranks.col(j);
        std::int32_t* pj = pos.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) pj[r[i] - 1] = static_cast<std::int32_t>(i);
    }
    return pos;
}

// s-ranks of column k listed in increasing rank-order of column j
const std::int32_t* ss_for_pair(const std::vector<std::int32_t>& pos, const RankMatrix& ranks,
                                std::size_t j, std::size_t k) {
    static thread_local std::vector<std::int32_t> buf;
    const std::size_t n = ranks.rows();
    buf.resize(n);
    const std::int32_t* pj = pos.data() + j * n;
    const std::int32_t* rk = ranks.col(k);
    for (std::size_t t = 0; t < n; ++t) buf[t] = rk[pj[t]];
    return buf.data();
}

void require_n(std::size_t n, bool want_d, bool want_r, bool want_t) {
    if (want_r && n < 6) throw sample_too_small("bkr_r pair statistic", 6, n);
    if (want_d && n < 5) throw sample_too_small("hoeffding_d pair statistic", 5, n);
    if (want_t && n < 4) throw sample_too_small("tau_star pair statistic", 4, n);
}

}  // namespace

PairStatMatrix::PairStatMatrix(Kernel kind, std::size_t n, std::size_t p)
    : kind_(kind), n_(n), p_(p), v_(p * p, 0.0) {
    if (p_ < 2) throw dimension_too_small(p_);
    for (std::size_t j = 0; j < p_; ++j) v_[j * p_ + j] = 1.0;
}

double PairStatMatrix::max_offdiag() const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p_; ++j)
        for (std::size_t k = j + 1; k < p_; ++k) m = std::max(m, v_[j * p_ + k]);
    return m;
}

PairStatMatrix pairwise_matrix(const RankMatrix& ranks, Kernel kind) {
    const std::size_t n = ranks.rows(), p = ranks.cols();
    const bool want_r = kind == Kernel::bkr_r;
    require_n(n, kind == Kernel::hoeffding_d, want_r, kind == Kernel::tau_star);

    PairStatMatrix out(kind, n, p);
    const auto pos = rank_positions(ranks);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(p * (p - 1) / 2);
    for (std::size_t j = 0; j + 1 < p; ++j)
        for (std::size_t k = j + 1; k < p; ++k)
            pairs.emplace_back(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k));

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(pairs.size()); ++idx) {
        try {
            const std::size_t j = pairs[idx].first, k = pairs[idx].second;
            const std::int32_t* ss = ss_for_pair(pos, ranks, j, k);
            double val = 0;
            switch (kind) {
                case Kernel::hoeffding_d: val = pair_d_stat(ss, n); break;
                case Kernel::tau_star:
                    val = detail::tau_from_perm(ss, n);
                    break;
                case Kernel::bkr_r:
                    val = (5.0 * detail::tau_from_perm(ss, n) -
                           3.0 * pair_d_stat(ss, n)) /
                          2.0;
                    break;
            }
            out.set(j, k, val);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double PairMaxima::get(Kernel k) const {
    switch (k) {
        case Kernel::hoeffding_d:
            if (!has_d) break;
            return d;
        case Kernel::bkr_r:
            if (!has_r) break;
            return r;
        case Kernel::tau_star:
            if (!has_t) break;
            return t;
    }
    throw spec_invalid("pair maxima were not computed for this kernel");
}

PairMaxima pair_maxima(const RankMatrix& ranks, bool want_d, bool want_r, bool want_t) {
    const std::size_t n = ranks.rows(), p = ranks.cols();
    require_n(n, want_d, want_r, want_t);
    if (p < 2) throw dimension_too_small(p);

    const bool need_d = want_d || want_r;
    const bool need_t = want_t || want_r;
    const auto pos = rank_positions(ranks);

    PairMaxima mx;
    mx.has_d = want_d;
    mx.has_r = want_r;
    mx.has_t = want_t;
    double best_d = -1e300, best_r = -1e300, best_t = -1e300;

    for (std::size_t j = 0; j + 1 < p; ++j) {
        for (std::size_t k = j + 1; k < p; ++k) {
            const std::int32_t* ss = ss_for_pair(pos, ranks, j, k);
            double dv = 0, tv = 0;
            if (need_d) dv = pair_d_stat(ss, n);
            if (need_t) tv = detail::tau_from_perm(ss, n);
            if (want_d) best_d = std::max(best_d, dv);
            if (want_t) best_t = std::max(best_t, tv);
            if (want_r) best_r = std::max(best_r, (5.0 * tv - 3.0 * dv) / 2.0);
        }
    }
    mx.d = best_d;
    mx.r = best_r;
    mx.t = best_t;
    return mx;
}

const char* mode_name(TestMode m) {
    return m == TestMode::asymptotic ? "asymptotic" : "mc";
}

std::vector<std::pair<std::string, std::string>> TestOutcome::flat_record() const {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", x);
        return std::string(buf);
    };
    std::vector<std::pair<std::string, std::string>> rec{
        {"kind", kernel_name(kind)},
        {"n", std::to_string(n)},
        {"p", std::to_string(p)},
        {"statistic", fmt(statistic)},
        {"threshold", fmt(threshold)},
        {"p_value", fmt(p_value)},
        {"reject", reject ? "true" : "false"},
        {"mode", mode_name(mode)},
    };
    if (mode == TestMode::monte_carlo) {
        rec.emplace_back("mc_reps", std::to_string(mc_reps));
        rec.emplace_back("seed", std::to_string(seed));
    }
    return rec;
}

TestOutcome asymptotic_test(const RankMatrix& ranks, Kernel kind, double alpha) {
    const auto spec = null_spec_for(kind);
    const double thr = q_alpha(alpha, spec);  // validates alpha first
    PairMaxima mx = pair_maxima(ranks, kind == Kernel::hoeffding_d, kind == Kernel::bkr_r,
                                kind == Kernel::tau_star);
    TestOutcome out;
    out.kind = kind;
    out.n = ranks.rows();
    out.p = ranks.cols();
    out.statistic = standardize_max(mx.get(kind), out.n, out.p, spec);
    out.threshold = thr;
    out.p_value = 1.0 - gumbel_cdf(out.statistic, spec);
    out.reject = out.statistic > out.threshold;
    out.mode = TestMode::asymptotic;
    return out;
}

TestOutcome asymptotic_test(const DataMatrix& data, Kernel kind, double alpha) {
    return asymptotic_test(rank_transform(data), kind, alpha);
}

std::vector<double> mc_null_sample(std::size_t n, std::size_t p, Kernel kind,
                                   std::size_t mc_reps, std::uint64_t seed) {
    if (mc_reps == 0) throw spec_invalid("monte carlo null sample needs at least one draw");
    const auto spec = null_spec_for(kind);
    std::vector<double> sample(mc_reps);
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(mc_reps); ++t) {
        try {
            Rng rng(seed_stream(seed, static_cast<std::uint64_t>(t)));
            RankMatrix draw(n, p);
            for (std::size_t j = 0; j < p; ++j) rng.permutation(draw.col(j), n);
            PairMaxima mx = pair_maxima(draw, kind == Kernel::hoeffding_d,
                                        kind == Kernel::bkr_r, kind == Kernel::tau_star);
            sample[t] = standardize_max(mx.get(kind), n, p, spec);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    std::sort(sample.begin(), sample.end());
    return sample;
}

double mc_threshold(const std::vector<double>& sorted_null, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_alpha(alpha);
    const std::size_t m = sorted_null.size();
    if (m == 0) throw spec_invalid("empty null sample");
    // smallest order statistic y with F_hat(y) >= 1 - alpha
    std::size_t k = m - static_cast<std::size_t>(
                            std::floor(static_cast<double>(m) * alpha + 1e-9));
    if (k < 1) k = 1;
    return sorted_null[k - 1];
}

double mc_p_value(const std::vector<double>& sorted_null, double s) {
    const auto ge = sorted_null.end() - std::lower_bound(sorted_null.begin(), sorted_null.end(), s);
    return static_cast<double>(1 + ge) / static_cast<double>(sorted_null.size() + 1);
}

TestOutcome mc_exact_test(const RankMatrix& ranks, Kernel kind, double alpha,
                          std::size_t mc_reps, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_alpha(alpha);
    const auto spec = null_spec_for(kind);
    PairMaxima mx = pair_maxima(ranks, kind == Kernel::hoeffding_d, kind == Kernel::bkr_r,
                                kind == Kernel::tau_star);
    const double s = standardize_max(mx.get(kind), ranks.rows(), ranks.cols(), spec);
    const auto null_sample = mc_null_sample(ranks.rows(), ranks.cols(), kind, mc_reps, seed);

    TestOutcome out;
    out.kind = kind;
    out.n = ranks.rows();
    out.p = ranks.cols();
    out.statistic = s;
    out.threshold = mc_threshold(null_sample, alpha);
    out.p_value = mc_p_value(null_sample, s);
    out.reject = s > out.threshold;  // boundary ties keep the null
    out.mode = TestMode::monte_carlo;
    out.mc_reps = mc_reps;
    out.seed = seed;
    return out;
}

TestOutcome mc_exact_test(const DataMatrix& data, Kernel kind, double alpha,
                          std::size_t mc_reps, std::uint64_t seed) {
    return mc_exact_test(rank_transform(data), kind, alpha, mc_reps, seed);
}

}  // namespace maxcorr
