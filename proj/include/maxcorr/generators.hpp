#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "maxcorr/types.hpp"

namespace maxcorr {

// Simulation designs. The first four are null (mutually independent) models;
// dense_* and sparse_* are the trigonometric / log alternatives on all or on
// ten coordinates; sparse_corr_* draw from a sparse random correlation matrix
// (optionally pushed through coordinatewise sin transforms); circle_uniform
// is the uniform law on the unit circle; bivariate_gauss_rho is a p = 2
// Gaussian with given correlation, used for population-value curves.
enum class Family {
    gauss_iid,
    gauss_copula_cube,    // W^(1/3) of a standard normal matrix W
    gauss_copula_cubed,   // W^3
    student_t3,
    dense_trig,           // (w, sin 2pi w, cos 2pi w, sin 4pi w, cos 4pi w), p % 5 == 0
    dense_log,            // (w, log w^2), p % 2 == 0
    sparse_trig,          // trig block on 10 coordinates, rest iid normal, p >= 10
    sparse_log,           // log block on 10 coordinates, rest iid normal, p >= 10
    sparse_corr_gauss,    // N(0, R*) with sparse random R*
    sparse_corr_sin13,    // sin(2pi Z^(1/3) / 3), Z ~ N(0, R*)
    sparse_corr_sin3,     // sin(pi Z^3 / 4),     Z ~ N(0, R*)
    circle_uniform,       // uniform on the unit circle, p == 2
    bivariate_gauss_rho,  // p == 2, correlation rho
};

const char* family_name(Family f);

// Map the example tags used on the command line (5a..5d, 6a, 6b, 7a, 7b,
// 8a..8c, circle) to families.
Family family_from_example(const std::string& tag);

struct GeneratorSpec {
    Family family;
    std::size_t n = 0, p = 0;
    std::uint64_t seed = 0;
    double rho = 0.0;  // bivariate_gauss_rho only
};

// Draws one n x p dataset. Throws spec_invalid on shape constraints
// (divisibility, p >= 10, p == 2, |rho| < 1). Columns with exactly tied
// values trigger a full re-draw under a derived seed (logged to stderr);
// ties have probability ~0 under every family here.
DataMatrix generate(const GeneratorSpec& spec);

// True if some column of m contains two exactly equal values.
// Reports the first offending column.
bool has_column_ties(const DataMatrix& m, std::size_t* column = nullptr);

namespace detail {

// Row-major p x p copy of the random correlation matrix used by the
// sparse_corr_* families, for structural checks.
std::vector<double> sparse_corr_instance(std::size_t p, std::uint64_t seed);

}  // namespace detail

}  // namespace maxcorr
