#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "maxcorr/types.hpp"

namespace maxcorr {

// Rank every column of data; strictly increasing transforms of a column leave
// the result unchanged. Throws ties_error on the first tied pair found.
RankMatrix rank_transform(const DataMatrix& data);

// Joint concordance counts and the P/Q/S sums for one rank pair, computed in
// O(n log n) by sweeping in r-order with a prefix-count tree over s.
CountTriple concordance_counts(const PairedRanks& pr);

// Hoeffding's D statistic (rank form, no ties), n >= 5:
//   D = 30 (P - 2(n-2) Q + (n-2)(n-3) S) / (n(n-1)(n-2)(n-3)(n-4))
double hoeffding_d(const PairedRanks& pr);

// Bergsma-Dassios-Yanagimoto tau*, n >= 4. O(n^2) time, O(n) memory: the
// concordant-quadruple count needs the cumulative count matrix only at rows
// l-1 and l, which a single row updated in place provides.
double tau_star(const PairedRanks& pr);

// Blum-Kiefer-Rosenblatt R through the linear identity 3D + 2R = 5 tau*,
// n >= 6. Equals the order-6 U-statistic directly (see the brute-force
// cross-checks in the tests).
double bkr_r(const PairedRanks& pr);

// Literal symmetrized kernel: averages over all m! orderings of the given
// m points (ties allowed). Only useful as a testing oracle; cost O(m!).
double kernel_eval(Kernel kind, const std::vector<std::array<double, 2>>& pts);

// Brute-force U-statistic: mean of kernel_eval over all m-subsets.
double u_statistic_brute(Kernel kind, const std::vector<std::array<double, 2>>& sample);

namespace detail {

// P/Q/S accumulation from the s-sequence taken in increasing r-order.
// Exposed for the pairwise fast paths; `perm` must be a permutation of 1..n.
struct DCounts {
    int128 P = 0, Q = 0, S = 0;
};

// Fenwick-tree sweep, O(n log n); fills c_by_r[t] = c of the point with rank
// r = t+1 when c_by_r != nullptr.
DCounts d_counts_fenwick(const std::int32_t* perm, std::size_t n,
                         std::vector<std::int64_t>* c_by_r = nullptr);

// Bitset prefix-popcount sweep, O(n^2/64); faster for small n.
DCounts d_counts_bitset(const std::int32_t* perm, std::size_t n);

// Picks the bitset sweep below a fixed cutoff, the Fenwick tree above it.
DCounts d_counts_auto(const std::int32_t* perm, std::size_t n);

double d_from_counts(const DCounts& dc, std::size_t n);

// tau* from the s-sequence in increasing r-order.
double tau_from_perm(const std::int32_t* perm, std::size_t n);

}  // namespace detail

}  // namespace maxcorr
