#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxcorr {

using int128 = __int128;

// The three rank correlations, identified by the order of their kernels:
// Hoeffding's D (order 5), Blum-Kiefer-Rosenblatt's R (order 6),
// Bergsma-Dassios-Yanagimoto's tau* (order 4).
enum class Kernel { hoeffding_d, bkr_r, tau_star };

constexpr int kernel_order(Kernel k) {
    switch (k) {
        case Kernel::hoeffding_d: return 5;
        case Kernel::bkr_r: return 6;
        case Kernel::tau_star: return 4;
    }
    return 0;
}

const char* kernel_name(Kernel k);
Kernel kernel_from_name(const std::string& name);  // accepts "d", "r", "taustar"

// ---------------------------------------------------------------------------
// errors

struct ties_error : std::runtime_error {
    std::size_t column, row_a, row_b;
    ties_error(std::size_t col, std::size_t a, std::size_t b);
};

struct csv_error : std::runtime_error {
    explicit csv_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct matrix_error : std::runtime_error {
    explicit matrix_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct sample_too_small : std::invalid_argument {
    sample_too_small(const std::string& op, std::size_t need, std::size_t got);
};

struct wrong_arity : std::invalid_argument {
    wrong_arity(std::size_t need, std::size_t got);
};

struct invalid_alpha : std::invalid_argument {
    explicit invalid_alpha(double alpha);
};

struct dimension_too_small : std::invalid_argument {
    explicit dimension_too_small(std::size_t p);
};

struct spec_invalid : std::invalid_argument {
    explicit spec_invalid(const std::string& msg) : std::invalid_argument(msg) {}
};

// ---------------------------------------------------------------------------
// data containers (column-major)

class DataMatrix {
  public:
    DataMatrix(std::size_t n, std::size_t p);
    // column-major values, size n*p; validates shape and finiteness
    DataMatrix(std::size_t n, std::size_t p, std::vector<double> values);

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return p_; }
    double operator()(std::size_t i, std::size_t j) const { return v_[j * n_ + i]; }
    double& operator()(std::size_t i, std::size_t j) { return v_[j * n_ + i]; }
    const double* col(std::size_t j) const { return v_.data() + j * n_; }
    double* col(std::size_t j) { return v_.data() + j * n_; }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

    void validate() const;  // throws matrix_error on non-finite entries or bad shape

  private:
    std::size_t n_, p_;
    std::vector<double> v_;
};

// Ranks in 1..n, each column a permutation (no ties by construction).
class RankMatrix {
  public:
    RankMatrix(std::size_t n, std::size_t p);

    // validates that every column is a permutation of 1..n
    static RankMatrix from_columns(std::size_t n, std::size_t p, std::vector<std::int32_t> values);

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return p_; }
    std::int32_t operator()(std::size_t i, std::size_t j) const { return v_[j * n_ + i]; }
    std::int32_t& operator()(std::size_t i, std::size_t j) { return v_[j * n_ + i]; }
    const std::int32_t* col(std::size_t j) const { return v_.data() + j * n_; }
    std::int32_t* col(std::size_t j) { return v_.data() + j * n_; }

  private:
    std::size_t n_, p_;
    std::vector<std::int32_t> v_;
};

// One pair of rank columns; r and s are permutations of 1..n.
struct PairedRanks {
    std::vector<std::int32_t> r, s;

    PairedRanks() = default;
    PairedRanks(std::vector<std::int32_t> r_, std::vector<std::int32_t> s_);
    PairedRanks(const RankMatrix& m, std::size_t j, std::size_t k);

    std::size_t size() const { return r.size(); }
    void validate() const;  // both permutations, equal length
};

// Joint concordance counts for one rank pair.
//   c[i] = #{i' : r[i'] < r[i] and s[i'] < s[i]}
//   P = sum (r_i-1)(r_i-2)(s_i-1)(s_i-2),  Q = sum (r_i-2)(s_i-2) c_i,
//   S = sum c_i (c_i - 1)
// P and Q grow like n^5 and n^4, hence 128-bit accumulators.
struct CountTriple {
    int128 P = 0, Q = 0, S = 0;
    std::vector<std::int64_t> c;
};

}  // namespace maxcorr
