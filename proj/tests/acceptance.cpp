// End-to-end acceptance checks, one printed line per criterion. Slow parts
// (the large Monte Carlo grids) are annotated with their approximate cost.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "maxcorr/core_stats.hpp"
#include "maxcorr/experiment.hpp"
#include "maxcorr/generators.hpp"
#include "maxcorr/independence.hpp"
#include "maxcorr/null_dist.hpp"
#include "maxcorr/rng.hpp"
#include "maxcorr/types.hpp"

using namespace maxcorr;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, bool ok, const std::string& what) {
    std::printf("[%s] %2d  %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, ap);
    va_end(ap);
    return std::string(buf);
}

PairedRanks random_pair(std::size_t n, Rng& rng) {
    std::vector<std::int32_t> r(n), s(n);
    rng.permutation(r.data(), n);
    rng.permutation(s.data(), n);
    return PairedRanks(std::move(r), std::move(s));
}

std::vector<std::array<double, 2>> as_points(const PairedRanks& pr) {
    std::vector<std::array<double, 2>> pts(pr.size());
    for (std::size_t i = 0; i < pr.size(); ++i)
        pts[i] = {static_cast<double>(pr.r[i]), static_cast<double>(pr.s[i])};
    return pts;
}

// --- 1: fast statistics vs brute-force kernels --------------------------

void criterion_1() {
    const auto t0 = Clock::now();
    Rng rng(0xACCE5501ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 4 + rng.uniform_below(9);  // 4..12
        PairedRanks pr = random_pair(n, rng);
        const auto pts = as_points(pr);
        worst = std::max(worst, std::abs(tau_star(pr) -
                                         u_statistic_brute(Kernel::tau_star, pts)));
        if (n >= 5)
            worst = std::max(worst, std::abs(hoeffding_d(pr) -
                                             u_statistic_brute(Kernel::hoeffding_d, pts)));
        if (n >= 6)
            worst = std::max(worst, std::abs(bkr_r(pr) -
                                             u_statistic_brute(Kernel::bkr_r, pts)));
    }
    const double secs = seconds_since(t0);
    report(1, worst <= 1e-12 && secs < 60.0,
           fmt("fast D, R, tau* equal brute-force U-statistics on 200 samples "
               "(max |diff| %.2e, %.1f s)",
               worst, secs));
}

// --- 2: linear identity across the three statistics ---------------------

void criterion_2() {
    Rng rng(0xACCE5502ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 6 + rng.uniform_below(45);  // 6..50
        PairedRanks pr = random_pair(n, rng);
        worst = std::max(worst, std::abs(3.0 * hoeffding_d(pr) + 2.0 * bkr_r(pr) -
                                         5.0 * tau_star(pr)));
    }
    report(2, worst <= 1e-12,
           fmt("3D + 2R - 5tau* vanishes on 1000 random pairs (max |residual| %.2e)",
               worst));
}

// --- 3: tied six-point configuration ------------------------------------

void criterion_3() {
    std::vector<std::array<double, 2>> pts;
    for (int i = 1; i <= 6; ++i)
        pts.push_back({std::floor((i + 2) / 3.0), static_cast<double>(i)});
    const double d = u_statistic_brute(Kernel::hoeffding_d, pts);
    const double r = kernel_eval(Kernel::bkr_r, pts);
    const double t = u_statistic_brute(Kernel::tau_star, pts);
    report(3, d == 0.5 && r == 1.5 && std::abs(t - 0.6) <= 1e-15,
           fmt("tied six-point kernel averages reproduce 1/2, 3/2, 3/5 "
               "(got %.17g, %.17g, %.17g)",
               d, r, t));
}

// --- 4: null-distribution constants -------------------------------------

void criterion_4() {
    const double kappa = kappa_d();
    bool ok = std::abs(kappa - 2.466) <= 1e-3;

    double prev = 0.0;
    double worst_rel_lo = 1e9, worst_rel_hi = 0.0;
    for (std::size_t k : {100u, 1000u, 10000u, 100000u}) {
        const double sum = eigen_series_d(k).partial_sum();
        ok = ok && sum > prev && sum < 1.0 / 12.0;
        const double rel = (1.0 / 12.0 - sum) * static_cast<double>(k) /
                           std::pow(std::log(static_cast<double>(k)), 2);
        worst_rel_lo = std::min(worst_rel_lo, rel);
        worst_rel_hi = std::max(worst_rel_hi, rel);
        prev = sum;
    }
    ok = ok && worst_rel_lo > 0.02 && worst_rel_hi < 0.04;
    report(4, ok,
           fmt("kappa = %.6f (target 2.466 +- 0.001); eigenvalue sums rise to "
               "%.8f < 1/12 with tail/(logK)^2/K in [%.3f, %.3f]",
               kappa, prev, worst_rel_lo, worst_rel_hi));
}

// --- 5 and 6: size at (100, 50) and exact distribution-freeness ---------

ExperimentConfig size_config(Family f) {
    ExperimentConfig c;
    c.family = f;
    c.n = 100;
    c.p = 50;
    c.kernels = {Kernel::hoeffding_d, Kernel::bkr_r, Kernel::tau_star};
    c.alpha = 0.05;
    c.reps = 1000;
    c.seed = 0xACCE5505ULL;
    return c;
}

std::vector<ExperimentRow> criterion_5() {
    const auto t0 = Clock::now();
    auto rows = run_experiment(size_config(Family::gauss_iid));
    const double rd = rows[0].rejection_rate;
    const double rr = rows[1].rejection_rate;
    const double rt = rows[2].rejection_rate;
    const bool ok = std::abs(rd - 0.070) <= 0.025 && std::abs(rr - 0.042) <= 0.02 &&
                    std::abs(rt - 0.047) <= 0.02;
    report(5, ok,
           fmt("independent-Gaussian sizes at n=100, p=50, 1000 reps: D %.3f "
               "(0.070+-0.025), R %.3f (0.042+-0.02), tau* %.3f (0.047+-0.02) "
               "[%.0f s]",
               rd, rr, rt, seconds_since(t0)));
    return rows;
}

void criterion_6(const std::vector<ExperimentRow>& base_rows) {
    const auto t0 = Clock::now();

    // the statistics see only ranks, so the cube-root and cube transforms
    // must give byte-identical replicate data after ranking
    bool ranks_equal = true;
    for (std::size_t t = 0; t < 1000 && ranks_equal; ++t) {
        GeneratorSpec a, b, c;
        a.family = Family::gauss_iid;
        b.family = Family::gauss_copula_cube;
        c.family = Family::gauss_copula_cubed;
        for (GeneratorSpec* g : {&a, &b, &c}) {
            g->n = 100;
            g->p = 50;
            g->seed = seed_stream(0xACCE5505ULL, t);
        }
        const RankMatrix ra = rank_transform(generate(a));
        const RankMatrix rb = rank_transform(generate(b));
        const RankMatrix rc = rank_transform(generate(c));
        for (std::size_t j = 0; j < 50 && ranks_equal; ++j)
            for (std::size_t i = 0; i < 100; ++i)
                if (ra(i, j) != rb(i, j) || ra(i, j) != rc(i, j)) {
                    ranks_equal = false;
                    break;
                }
    }

    // spot-check the actual decisions on the first 100 replicates
    bool decisions_equal = true;
    for (std::size_t t = 0; t < 100 && decisions_equal; ++t) {
        GeneratorSpec a, b;
        a.family = Family::gauss_iid;
        b.family = Family::gauss_copula_cubed;
        a.n = b.n = 100;
        a.p = b.p = 50;
        a.seed = b.seed = seed_stream(0xACCE5505ULL, t);
        const DataMatrix da = generate(a), db = generate(b);
        for (Kernel k : {Kernel::hoeffding_d, Kernel::bkr_r, Kernel::tau_star}) {
            const TestOutcome oa = asymptotic_test(da, k, 0.05);
            const TestOutcome ob = asymptotic_test(db, k, 0.05);
            if (oa.statistic != ob.statistic || oa.reject != ob.reject)
                decisions_equal = false;
        }
    }

    // and the headline size estimates agree exactly
    auto rows_cube = run_experiment(size_config(Family::gauss_copula_cube));
    auto rows_cubed = run_experiment(size_config(Family::gauss_copula_cubed));
    bool sizes_equal = true;
    for (std::size_t i = 0; i < base_rows.size(); ++i) {
        sizes_equal = sizes_equal &&
                      rows_cube[i].rejection_rate == base_rows[i].rejection_rate &&
                      rows_cubed[i].rejection_rate == base_rows[i].rejection_rate;
    }

    report(6, ranks_equal && decisions_equal && sizes_equal,
           fmt("cube-root and cube marginal transforms leave ranks (1000 reps), "
               "decisions (100 reps), and size estimates bit-identical [%.0f s]",
               seconds_since(t0)));
}

// --- 7: power on the dense and sparse-correlation alternatives ----------

void criterion_7() {
    const auto t0 = Clock::now();
    ExperimentConfig dense = size_config(Family::dense_trig);
    dense.reps = 500;
    dense.seed = 0xACCE5507ULL;
    auto rows = run_experiment(dense);
    const double pd = rows[0].rejection_rate;
    const double pr = rows[1].rejection_rate;
    const double pt = rows[2].rejection_rate;

    ExperimentConfig sparse = size_config(Family::sparse_corr_gauss);
    sparse.kernels = {Kernel::hoeffding_d};
    sparse.seed = 0xACCE5517ULL;
    auto srows = run_experiment(sparse);
    const double sd = srows[0].rejection_rate;

    const bool ok = pd >= 0.99 && pr >= 0.99 && pt >= 0.99 && std::abs(sd - 0.967) <= 0.03;
    report(7, ok,
           fmt("power: trigonometric design D/R/tau* = %.3f/%.3f/%.3f (all >= 0.99); "
               "sparse-correlation D = %.3f (0.967+-0.03) [%.0f s]",
               pd, pr, pt, sd, seconds_since(t0)));
}

// --- 8: Monte-Carlo-exact calibration ------------------------------------

void criterion_8() {
    const auto t0 = Clock::now();
    ExperimentConfig c = size_config(Family::gauss_iid);
    c.mode = TestMode::monte_carlo;
    c.mc_reps = 5000;
    c.seed = 0xACCE5508ULL;
    auto rows = run_experiment(c);
    const double rd = rows[0].rejection_rate;
    const double rr = rows[1].rejection_rate;
    const double rt = rows[2].rejection_rate;
    const bool ok = std::abs(rd - 0.05) <= 0.02 && std::abs(rr - 0.05) <= 0.02 &&
                    std::abs(rt - 0.05) <= 0.02;
    report(8, ok,
           fmt("monte-carlo-exact sizes with M=5000 at n=100, p=50: D %.3f, R %.3f, "
               "tau* %.3f (all 0.05+-0.02) [%.0f s]",
               rd, rr, rt, seconds_since(t0)));
}

// --- 9: population tau* values -------------------------------------------

void criterion_9() {
    GeneratorSpec circle;
    circle.family = Family::circle_uniform;
    circle.n = 50;
    circle.p = 2;
    TauStarEstimate est = estimate_population_taustar(circle, 2000, 0xACCE5509ULL);
    const bool circle_ok = std::abs(est.mean - 0.0625) <= 3.0 * est.se;

    std::vector<double> grid;
    for (double rho : {0.0, 0.3, 0.6, 0.9}) {
        GeneratorSpec g;
        g.family = Family::bivariate_gauss_rho;
        g.n = 100;
        g.p = 2;
        g.rho = rho;
        grid.push_back(estimate_population_taustar(g, 2000, 0xACCE5519ULL).mean);
    }
    const bool grid_ok = grid[0] < grid[1] && grid[1] < grid[2] && grid[2] < grid[3];

    report(9, circle_ok && grid_ok,
           fmt("population tau*: circle %.4f +- %.4f (target 1/16); Gaussian grid "
               "rho 0/0.3/0.6/0.9 -> %.4f < %.4f < %.4f < %.4f",
               est.mean, est.se, grid[0], grid[1], grid[2], grid[3]));
}

// --- 10: Gumbel approximation improves with dimension --------------------

void criterion_10() {
    const auto t0 = Clock::now();
    const NullSpec spec = null_spec_for(Kernel::hoeffding_d);
    std::vector<double> ks;
    const std::size_t shapes[3][2] = {{100, 50}, {200, 200}, {200, 800}};
    for (const auto& s : shapes) {
        const std::vector<double> draws =
            mc_null_sample(s[0], s[1], Kernel::hoeffding_d, 2000, 0xACCE550AULL);
        double dist = 0.0;
        const double m = static_cast<double>(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) {
            const double g = gumbel_cdf(draws[i], spec);
            dist = std::max(dist, std::abs(g - (i + 1.0) / m));
            dist = std::max(dist, std::abs(g - static_cast<double>(i) / m));
        }
        ks.push_back(dist);
    }
    report(10, ks[0] > ks[1] && ks[1] > ks[2],
           fmt("null max distribution vs closed form, KS over (100,50)/(200,200)/"
               "(200,800): %.4f, %.4f, %.4f (want strictly decreasing) [%.0f s]",
               ks[0], ks[1], ks[2], seconds_since(t0)));
}

// --- 11: scaling of the fast algorithms ----------------------------------

double best_of_five(const std::vector<std::int32_t>& r, const std::vector<std::int32_t>& s,
                    double (*statistic)(const PairedRanks&)) {
    PairedRanks pr(r, s);
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = Clock::now();
        volatile double sink = statistic(pr);
        (void)sink;
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void criterion_11() {
    Rng rng(0xACCE550BULL);
    auto make_perm = [&rng](std::size_t n) {
        std::vector<std::int32_t> v(n);
        rng.permutation(v.data(), n);
        return v;
    };

    // D at n = 1e5 vs 2e5 (tree-based counting path)
    const auto r1 = make_perm(100000), s1 = make_perm(100000);
    const auto r2 = make_perm(200000), s2 = make_perm(200000);
    {  // warm up allocators and caches at the larger size first
        PairedRanks warm(r2, s2);
        volatile double sink = hoeffding_d(warm);
        (void)sink;
    }
    const double td1 = best_of_five(r1, s1, hoeffding_d);
    const double td2 = best_of_five(r2, s2, hoeffding_d);
    const double d_ratio = td2 / td1;

    // tau* at n = 1e4 vs 2e4 (quadratic path)
    const auto r3 = make_perm(10000), s3 = make_perm(10000);
    const auto r4 = make_perm(20000), s4 = make_perm(20000);
    {
        PairedRanks warm(r4, s4);
        volatile double sink = tau_star(warm);
        (void)sink;
    }
    const double tt1 = best_of_five(r3, s3, tau_star);
    const double tt2 = best_of_five(r4, s4, tau_star);
    const double t_ratio = tt2 / tt1;

    report(11, d_ratio < 2.5 && t_ratio >= 3.0 && t_ratio <= 5.0,
           fmt("scaling: D time(2e5)/time(1e5) = %.2f (< 2.5, %.0f/%.0f ms); "
               "tau* time(2e4)/time(1e4) = %.2f (in [3,5], %.0f/%.0f ms)",
               d_ratio, td2 * 1e3, td1 * 1e3, t_ratio, tt2 * 1e3, tt1 * 1e3));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    auto size_rows = criterion_5();
    criterion_6(size_rows);
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d of 11 criteria passed (%.0f s total)\n", 11 - failures,
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
