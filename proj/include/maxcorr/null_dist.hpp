#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxcorr/types.hpp"

namespace maxcorr {

// Limit parameters of one statistic under mutual independence. The scaled
// pair statistic (n-1) U / C(m,2) converges to sum_v lambda_v (xi_v^2 - 1)
// with xi_v iid standard normal; lambda1 is the top eigenvalue (multiplicity
// mu1), Lambda = sum_v lambda_v, and kappa the Gumbel shape product
//   kappa = prod_{v > mu1} (1 - lambda_v/lambda1)^{-1/2}.
struct NullSpec {
    Kernel kind;
    int m;          // kernel order
    double lambda1; // c_h * 3/pi^4 with c_h = 1 (D), 2 (R), 3 (tau*)
    double Lambda;  // c_h / 12
    double mu1;     // 1 for all three
    double kappa;   // common to all three
};

NullSpec null_spec_for(Kernel kind);

struct EigenSeries {
    std::vector<double> values;  // nonincreasing
    double partial_sum() const;
};

// K largest eigenvalues 3/(pi^4 i^2 j^2), i,j >= 1, with multiplicities.
EigenSeries eigen_series_d(std::size_t K);

// kappa for the D eigenvalue ratios 1/(ij)^2:
//   kappa = sqrt(2 prod_{k>=2} (pi/k)/sin(pi/k)),
// evaluated with a 1e5-term product plus analytic tail; abs error < 1e-8.
double kappa_d();

// Truncated product over an explicit eigenvalue list, skipping the top mu1
// values. Matches kappa_d() as the list grows.
double kappa_product(const EigenSeries& series, std::size_t mu1 = 1);

// Limiting CDF of the standardized maximum:
//   G(y) = exp{ -(2^{mu1/2-2} kappa / Gamma(mu1/2)) e^{-y/2} }
double gumbel_cdf(double y, const NullSpec& spec);

// Closed-form critical value, G(Q_alpha) = 1 - alpha:
//   Q_alpha = log(2^{mu1-4} kappa^2 / Gamma(mu1/2)^2) - 2 log log 1/(1-alpha)
double q_alpha(double alpha, const NullSpec& spec);

// Location-scale standardization of the max pair statistic:
//   S = (n-1)/(lambda1 C(m,2)) max_u - 4 log p - (mu1 - 2) log log p
//       + Lambda/lambda1
// Requires p >= 2; warns on stderr when p < 10 (the limit is poor there).
double standardize_max(double max_u, std::size_t n, std::size_t p, const NullSpec& spec);

// Monte Carlo estimate of P( sum_v lambda_v (xi_v^2 - 1) > x ) for the given
// truncated eigenvalue list.
double zeta_tail_mc(double x, std::span<const double> lambdas, std::size_t reps,
                    std::uint64_t seed);

}  // namespace maxcorr
