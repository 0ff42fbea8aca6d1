#include "maxcorr/core_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace maxcorr {

// ---------------------------------------------------------------------------
// ranking

RankMatrix rank_transform(const DataMatrix& data) {
    const std::size_t n = data.rows(), p = data.cols();
    RankMatrix out(n, p);
    std::vector<std::uint32_t> idx(n);
    for (std::size_t j = 0; j < p; ++j) {
        const double* x = data.col(j);
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(),
                  [x](std::uint32_t a, std::uint32_t b) { return x[a] < x[b]; });
        for (std::size_t t = 1; t < n; ++t)
            if (x[idx[t - 1]] == x[idx[t]]) throw ties_error(j, idx[t - 1], idx[t]);
        std::int32_t* r = out.col(j);
        for (std::size_t t = 0; t < n; ++t) r[idx[t]] = static_cast<std::int32_t>(t + 1);
    }
    return out;
}

namespace detail {

// ---------------------------------------------------------------------------
// P/Q/S sweeps. `perm` holds the s-ranks listed in increasing r-order, so at
// step t (rank r = t+1) the points inserted so far are exactly those with
// smaller r, and c = #{inserted with s' < s}.

namespace {

struct Fenwick {
    std::vector<std::int32_t> tree;  // 1-based
    std::size_t n = 0;
    void reset(std::size_t n_) {
        n = n_;
        tree.assign(n + 1, 0);
    }
    void add(std::size_t i) {
        for (; i <= n; i += i & (~i + 1)) ++tree[i];
    }
    std::int64_t prefix(std::size_t i) const {  // count of inserted s' <= i
        std::int64_t s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree[i];
        return s;
    }
};

inline void accumulate_pqs(std::int64_t r, std::int64_t s, std::int64_t c, DCounts& dc) {
    dc.P += static_cast<int128>((r - 1) * (r - 2)) * ((s - 1) * (s - 2));
    dc.Q += static_cast<int128>((r - 2) * (s - 2)) * c;
    dc.S += static_cast<int128>(c) * (c - 1);
}

}  // namespace

DCounts d_counts_fenwick(const std::int32_t* perm, std::size_t n,
                         std::vector<std::int64_t>* c_by_r) {
    DCounts dc;
    static thread_local Fenwick fw;
    fw.reset(n);
    if (c_by_r) c_by_r->resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::int64_t s = perm[t];
        const std::int64_t c = fw.prefix(static_cast<std::size_t>(s - 1));
        if (c_by_r) (*c_by_r)[t] = c;
        accumulate_pqs(static_cast<std::int64_t>(t + 1), s, c, dc);
        fw.add(static_cast<std::size_t>(s));
    }
    return dc;
}

DCounts d_counts_bitset(const std::int32_t* perm, std::size_t n) {
    // Bitset of inserted s-ranks plus pref[w] = popcount(words[0..w-1]),
    // maintained with a fixed-length branchless pass so the per-element cost
    // stays flat; int64 accumulators are safe because P <= n^5 and the cutoff
    // keeps n <= 2048. Beats the Fenwick tree up to roughly that point.
    static thread_local std::vector<std::uint64_t> words;
    static thread_local std::vector<std::int32_t> pref;
    const std::size_t nw = (n + 63) / 64;
    words.assign(nw, 0);
    pref.assign(nw, 0);
    std::int64_t P = 0, Q = 0, S = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const std::int64_t s = perm[t];
        const std::size_t b = static_cast<std::size_t>(s - 1);  // bits strictly below b
        const std::size_t wb = b >> 6, k = b & 63;
        const std::int64_t c =
            pref[wb] + __builtin_popcountll(words[wb] & ((1ULL << k) - 1));
        const std::int64_t r = static_cast<std::int64_t>(t + 1);
        P += (r - 1) * (r - 2) * (s - 1) * (s - 2);
        Q += (r - 2) * (s - 2) * c;
        S += c * (c - 1);
        words[wb] |= 1ULL << k;
        for (std::size_t w = 0; w < nw; ++w) pref[w] += static_cast<std::int32_t>(w > wb);
    }
    DCounts dc;
    dc.P = P;
    dc.Q = Q;
    dc.S = S;
    return dc;
}

DCounts d_counts_auto(const std::int32_t* perm, std::size_t n) {
    // Measured crossover on commodity hardware; both sides are exact.
    constexpr std::size_t kBitsetCutoff = 2048;
    return n <= kBitsetCutoff ? d_counts_bitset(perm, n) : d_counts_fenwick(perm, n);
}

double d_from_counts(const DCounts& dc, std::size_t n) {
    const auto nn = static_cast<std::int64_t>(n);
    const int128 num = dc.P - 2 * (nn - 2) * dc.Q +
                       static_cast<int128>((nn - 2) * (nn - 3)) * dc.S;
    const int128 den = static_cast<int128>(nn) * (nn - 1) * (nn - 2) * (nn - 3) * (nn - 4);
    return static_cast<double>(30.0L * static_cast<long double>(num) /
                               static_cast<long double>(den));
}

// ---------------------------------------------------------------------------
// tau* via the cumulative count matrix
//   B[r][s] = #{i <= r : perm[i-1] <= s},
// with a zero row/column. For ranks l < l' (r-order), the points below both
// and above both second-coordinate ranks among 1..l-1 are
//   B_lt = B[l-1][min-1],  B_gt = l - B[l][max],
// and each concordant quadruple is counted once at its two largest r-ranks:
//   N_c = sum_{3 <= l < l'} C(B_lt,2) + C(B_gt,2),  tau* = 3/2 (N_c/C(n,4) - 1/3).
//
// Only rows l-1 and l of B are ever read, and with hi >= s_l always,
//   B[l][hi] = B[l-1][hi] + 1,
// while lo - 1 < s_l leaves B[l-1][lo-1] untouched by the step at s_l. So one
// row, updated in place after each l, replaces the dense matrix: O(n) memory
// instead of (n+1)^2 cells, and the sweep stays cache-resident at large n.

double tau_from_perm(const std::int32_t* perm, std::size_t n) {
    static thread_local std::vector<std::int32_t> row;  // B[l-1][0..n]
    row.assign(n + 1, 0);

    int128 nc = 0;
    for (std::size_t l = 1; l <= n; ++l) {
        const std::int64_t sl = perm[l - 1];
        if (l >= 3 && l < n) {
            std::int64_t row_acc = 0;
            const std::int64_t lm1 = static_cast<std::int64_t>(l) - 1;
            for (std::size_t lp = l + 1; lp <= n; ++lp) {
                const std::int64_t slp = perm[lp - 1];
                const std::int64_t lo = sl < slp ? sl : slp;
                const std::int64_t hi = sl < slp ? slp : sl;
                const std::int64_t blt = row[lo - 1];
                const std::int64_t bgt = lm1 - row[hi];
                row_acc += (blt * (blt - 1) + bgt * (bgt - 1)) / 2;
            }
            nc += row_acc;
        }
        for (std::size_t s = static_cast<std::size_t>(sl); s <= n; ++s) ++row[s];
    }

    const auto nn = static_cast<std::int64_t>(n);
    const int128 quads = static_cast<int128>(nn) * (nn - 1) * (nn - 2) * (nn - 3) / 24;
    const long double ratio = static_cast<long double>(nc) / static_cast<long double>(quads);
    return static_cast<double>(1.5L * (ratio - 1.0L / 3.0L));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// public statistics

namespace {

// s-ranks listed in increasing r-order
std::vector<std::int32_t> s_in_r_order(const PairedRanks& pr) {
    const std::size_t n = pr.size();
    std::vector<std::int32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[pr.r[i] - 1] = pr.s[i];
    return perm;
}

}  // namespace

CountTriple concordance_counts(const PairedRanks& pr) {
    const std::size_t n = pr.size();
    if (n < 1) throw sample_too_small("concordance_counts", 1, n);
    const auto perm = s_in_r_order(pr);
    std::vector<std::int64_t> c_by_r;
    const auto dc = detail::d_counts_fenwick(perm.data(), n, &c_by_r);
    CountTriple out;
    out.P = dc.P;
    out.Q = dc.Q;
    out.S = dc.S;
    out.c.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.c[i] = c_by_r[pr.r[i] - 1];
    return out;
}

double hoeffding_d(const PairedRanks& pr) {
    const std::size_t n = pr.size();
    if (n < 5) throw sample_too_small("hoeffding_d", 5, n);
    const auto perm = s_in_r_order(pr);
    return detail::d_from_counts(detail::d_counts_auto(perm.data(), n), n);
}

double tau_star(const PairedRanks& pr) {
    const std::size_t n = pr.size();
    if (n < 4) throw sample_too_small("tau_star", 4, n);
    const auto perm = s_in_r_order(pr);
    return detail::tau_from_perm(perm.data(), n);
}

double bkr_r(const PairedRanks& pr) {
    const std::size_t n = pr.size();
    if (n < 6) throw sample_too_small("bkr_r", 6, n);
    return (5.0 * tau_star(pr) - 3.0 * hoeffding_d(pr)) / 2.0;
}

// ---------------------------------------------------------------------------
// literal kernels (testing oracles)

namespace {

inline int bracket5(const double* x, int i1, int i2, int i3, int i4, int a) {
    return ((x[i1] <= x[a]) - (x[i2] <= x[a])) * ((x[i3] <= x[a]) - (x[i4] <= x[a]));
}

// both of y1, y2 strictly below both of y3, y4
inline int both_below(double y1, double y2, double y3, double y4) {
    return (y1 < y3 && y1 < y4 && y2 < y3 && y2 < y4) ? 1 : 0;
}

inline int bracket_t(const double* x, int i1, int i2, int i3, int i4) {
    return both_below(x[i1], x[i3], x[i2], x[i4]) + both_below(x[i2], x[i4], x[i1], x[i3]) -
           both_below(x[i1], x[i4], x[i2], x[i3]) - both_below(x[i2], x[i3], x[i1], x[i4]);
}

double kernel_d(const std::vector<std::array<double, 2>>& z) {
    double x[5], y[5];
    for (int i = 0; i < 5; ++i) x[i] = z[i][0], y[i] = z[i][1];
    std::array<int, 5> id{0, 1, 2, 3, 4};
    long total = 0;
    do {
        total += bracket5(x, id[0], id[1], id[2], id[3], id[4]) *
                 bracket5(y, id[0], id[1], id[2], id[3], id[4]);
    } while (std::next_permutation(id.begin(), id.end()));
    return static_cast<double>(total) / 16.0;
}

double kernel_r(const std::vector<std::array<double, 2>>& z) {
    double x[6], y[6];
    for (int i = 0; i < 6; ++i) x[i] = z[i][0], y[i] = z[i][1];
    std::array<int, 6> id{0, 1, 2, 3, 4, 5};
    long total = 0;
    do {
        total += bracket5(x, id[0], id[1], id[2], id[3], id[4]) *
                 bracket5(y, id[0], id[1], id[2], id[3], id[5]);
    } while (std::next_permutation(id.begin(), id.end()));
    return static_cast<double>(total) / 32.0;
}

double kernel_t(const std::vector<std::array<double, 2>>& z) {
    double x[4], y[4];
    for (int i = 0; i < 4; ++i) x[i] = z[i][0], y[i] = z[i][1];
    std::array<int, 4> id{0, 1, 2, 3};
    long total = 0;
    do {
        total += bracket_t(x, id[0], id[1], id[2], id[3]) *
                 bracket_t(y, id[0], id[1], id[2], id[3]);
    } while (std::next_permutation(id.begin(), id.end()));
    return static_cast<double>(total) / 16.0;
}

}  // namespace

double kernel_eval(Kernel kind, const std::vector<std::array<double, 2>>& pts) {
    const auto m = static_cast<std::size_t>(kernel_order(kind));
    if (pts.size() != m) throw wrong_arity(m, pts.size());
    switch (kind) {
        case Kernel::hoeffding_d: return kernel_d(pts);
        case Kernel::bkr_r: return kernel_r(pts);
        case Kernel::tau_star: return kernel_t(pts);
    }
    return 0;
}

double u_statistic_brute(Kernel kind, const std::vector<std::array<double, 2>>& sample) {
    const auto m = static_cast<std::size_t>(kernel_order(kind));
    const std::size_t n = sample.size();
    if (n < m) throw sample_too_small("u_statistic_brute", m, n);

    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::array<double, 2>> sub(m);
    double sum = 0;
    std::size_t count = 0;
    while (true) {
        for (std::size_t i = 0; i < m; ++i) sub[i] = sample[idx[i]];
        sum += kernel_eval(kind, sub);
        ++count;
        // next m-combination of 0..n-1
        std::size_t k = m;
        while (k > 0 && idx[k - 1] == n - m + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t i = k; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    return sum / static_cast<double>(count);
}

}  // namespace maxcorr
