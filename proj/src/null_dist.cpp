#include "maxcorr/null_dist.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "maxcorr/rng.hpp"

namespace maxcorr {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
const double kSqrtPi = std::sqrt(std::numbers::pi);  // Gamma(1/2)

double gamma_half_mu(double mu1) {
    if (mu1 == 1.0) return kSqrtPi;
    return std::tgamma(mu1 / 2.0);
}

}  // namespace

double kappa_d() {
    static const double value = [] {
        // log prod_{k=2..N} (pi/k)/sin(pi/k), then the analytic remainder of
        // log((pi/k)/sin(pi/k)) = (pi^2/6)/k^2 + (pi^4/180)/k^4 + O(k^-6)
        // summed over k > N via Euler-Maclaurin zeta tails.
        constexpr long double N = 100000;
        long double s = 0;
        for (long double k = 2; k <= N; ++k) {
            const long double x = kPi / k;
            s += std::log(x / std::sin(x));
        }
        s += kPi * kPi / 6 * (1 / N - 1 / (2 * N * N) + 1 / (6 * N * N * N));
        s += kPi * kPi * kPi * kPi / 180 / (3 * N * N * N);
        return static_cast<double>(std::sqrt(2 * std::exp(s)));
    }();
    return value;
}

NullSpec null_spec_for(Kernel kind) {
    const double base = static_cast<double>(3.0L / (kPi * kPi * kPi * kPi));
    double ch = 1;
    switch (kind) {
        case Kernel::hoeffding_d: ch = 1; break;
        case Kernel::bkr_r: ch = 2; break;
        case Kernel::tau_star: ch = 3; break;
    }
    return NullSpec{kind, kernel_order(kind), ch * base, ch / 12.0, 1.0, kappa_d()};
}

double EigenSeries::partial_sum() const {
    long double s = 0;
    for (auto it = values.rbegin(); it != values.rend(); ++it) s += *it;  // smallest first
    return static_cast<double>(s);
}

EigenSeries eigen_series_d(std::size_t K) {
    EigenSeries out;
    if (K == 0) return out;

    const auto pairs_up_to = [](std::uint64_t M) {
        std::uint64_t c = 0;
        for (std::uint64_t i = 1; i <= M; ++i) c += M / i;
        return c;
    };
    std::uint64_t M = 64;
    while (pairs_up_to(M) < K) M *= 2;

    std::vector<std::uint64_t> products;
    products.reserve(pairs_up_to(M));
    for (std::uint64_t i = 1; i <= M; ++i)
        for (std::uint64_t j = 1; j <= M / i; ++j) products.push_back(i * j);
    std::sort(products.begin(), products.end());
    products.resize(K);

    const long double base = 3.0L / (kPi * kPi * kPi * kPi);
    out.values.resize(K);
    for (std::size_t v = 0; v < K; ++v) {
        const long double ij = static_cast<long double>(products[v]);
        out.values[v] = static_cast<double>(base / (ij * ij));
    }
    return out;
}

double kappa_product(const EigenSeries& series, std::size_t mu1) {
    if (series.values.empty() || mu1 == 0) return 1.0;
    const double l1 = series.values[0];
    long double logsum = 0;
    for (std::size_t v = mu1; v < series.values.size(); ++v)
        logsum += -0.5L * std::log1p(-static_cast<long double>(series.values[v] / l1));
    return static_cast<double>(std::exp(logsum));
}

double gumbel_cdf(double y, const NullSpec& spec) {
    const double coef =
        std::pow(2.0, spec.mu1 / 2.0 - 2.0) * spec.kappa / gamma_half_mu(spec.mu1);
    return std::exp(-coef * std::exp(-y / 2.0));
}

double q_alpha(double alpha, const NullSpec& spec) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw invalid_alpha(alpha);
    const double g = gamma_half_mu(spec.mu1);
    const double loglog = std::log(-std::log1p(-alpha));  // log log 1/(1-alpha)
    return std::log(std::pow(2.0, spec.mu1 - 4.0) * spec.kappa * spec.kappa / (g * g)) -
           2.0 * loglog;
}

double standardize_max(double max_u, std::size_t n, std::size_t p, const NullSpec& spec) {
    if (p < 2) throw dimension_too_small(p);
    static std::atomic<bool> warned{false};
    if (p < 10 && !warned.exchange(true))
        std::fprintf(stderr,
                     "warning: standardize_max with p = %zu; the extreme-value "
                     "approximation is unreliable below p = 10\n",
                     p);
    const double pairs = 0.5 * spec.m * (spec.m - 1);
    const double lp = std::log(static_cast<double>(p));
    return static_cast<double>(n - 1) / (spec.lambda1 * pairs) * max_u - 4.0 * lp -
           (spec.mu1 - 2.0) * std::log(lp) + spec.Lambda / spec.lambda1;
}

double zeta_tail_mc(double x, std::span<const double> lambdas, std::size_t reps,
                    std::uint64_t seed) {
    if (reps == 0) throw spec_invalid("zeta_tail_mc needs reps >= 1");
    Rng rng(seed);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < reps; ++t) {
        long double z = 0;
        for (const double l : lambdas) {
            const double g = rng.normal();
            z += l * (g * g - 1.0);
        }
        if (z > x) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(reps);
}

}  // namespace maxcorr
