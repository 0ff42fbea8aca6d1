#include "maxcorr/types.hpp"

#include <algorithm>
#include <cmath>

namespace maxcorr {

const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::hoeffding_d: return "d";
        case Kernel::bkr_r: return "r";
        case Kernel::tau_star: return "taustar";
    }
    return "?";
}

Kernel kernel_from_name(const std::string& name) {
    if (name == "d" || name == "D") return Kernel::hoeffding_d;
    if (name == "r" || name == "R") return Kernel::bkr_r;
    if (name == "taustar" || name == "tau_star" || name == "t") return Kernel::tau_star;
    throw std::invalid_argument("unknown statistic '" + name + "' (expected d, r or taustar)");
}

ties_error::ties_error(std::size_t col, std::size_t a, std::size_t b)
    : std::runtime_error("tied values in column " + std::to_string(col) + " (rows " +
                         std::to_string(a) + " and " + std::to_string(b) + ")"),
      column(col), row_a(a), row_b(b) {}

sample_too_small::sample_too_small(const std::string& op, std::size_t need, std::size_t got)
    : std::invalid_argument(op + " needs n >= " + std::to_string(need) + ", got n = " +
                            std::to_string(got)) {}

wrong_arity::wrong_arity(std::size_t need, std::size_t got)
    : std::invalid_argument("kernel takes " + std::to_string(need) + " points, got " +
                            std::to_string(got)) {}

invalid_alpha::invalid_alpha(double alpha)
    : std::invalid_argument("alpha must lie in (0,1), got " + std::to_string(alpha)) {}

dimension_too_small::dimension_too_small(std::size_t p)
    : std::invalid_argument("need p >= 2 columns, got p = " + std::to_string(p)) {}

DataMatrix::DataMatrix(std::size_t n, std::size_t p) : n_(n), p_(p), v_(n * p, 0.0) {
    if (n_ < 1 || p_ < 2) throw matrix_error("matrix must have n >= 1 rows and p >= 2 columns");
}

DataMatrix::DataMatrix(std::size_t n, std::size_t p, std::vector<double> values)
    : n_(n), p_(p), v_(std::move(values)) {
    if (n_ < 1 || p_ < 2) throw matrix_error("matrix must have n >= 1 rows and p >= 2 columns");
    if (v_.size() != n_ * p_) throw matrix_error("value buffer does not match n*p");
    validate();
}

void DataMatrix::validate() const {
    for (std::size_t j = 0; j < p_; ++j) {
        const double* x = col(j);
        for (std::size_t i = 0; i < n_; ++i)
            if (!std::isfinite(x[i]))
                throw matrix_error("non-finite entry at row " + std::to_string(i + 1) +
                                   ", column " + std::to_string(j + 1));
    }
}

RankMatrix::RankMatrix(std::size_t n, std::size_t p) : n_(n), p_(p), v_(n * p, 0) {
    if (n_ < 1 || p_ < 2) throw matrix_error("rank matrix must have n >= 1 rows and p >= 2 columns");
}

RankMatrix RankMatrix::from_columns(std::size_t n, std::size_t p, std::vector<std::int32_t> values) {
    RankMatrix m(n, p);
    if (values.size() != n * p) throw matrix_error("rank buffer does not match n*p");
    m.v_ = std::move(values);
    std::vector<char> seen(n);
    for (std::size_t j = 0; j < p; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        const std::int32_t* r = m.col(j);
        for (std::size_t i = 0; i < n; ++i) {
            if (r[i] < 1 || static_cast<std::size_t>(r[i]) > n || seen[r[i] - 1])
                throw matrix_error("column " + std::to_string(j + 1) +
                                   " is not a permutation of 1..n");
            seen[r[i] - 1] = 1;
        }
    }
    return m;
}

PairedRanks::PairedRanks(std::vector<std::int32_t> r_, std::vector<std::int32_t> s_)
    : r(std::move(r_)), s(std::move(s_)) {
    validate();
}

PairedRanks::PairedRanks(const RankMatrix& m, std::size_t j, std::size_t k) {
    r.assign(m.col(j), m.col(j) + m.rows());
    s.assign(m.col(k), m.col(k) + m.rows());
}

void PairedRanks::validate() const {
    if (r.size() != s.size()) throw matrix_error("rank vectors differ in length");
    const std::size_t n = r.size();
    std::vector<char> seen(n);
    for (const auto* v : {&r, &s}) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = (*v)[i];
            if (x < 1 || static_cast<std::size_t>(x) > n || seen[x - 1])
                throw matrix_error("rank vector is not a permutation of 1..n");
            seen[x - 1] = 1;
        }
    }
}

}  // namespace maxcorr
