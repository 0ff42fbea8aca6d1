#include "maxcorr/generators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "maxcorr/rng.hpp"

namespace maxcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void fill_iid_normal(DataMatrix& m, Rng& rng) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double* x = m.col(j);
        for (std::size_t i = 0; i < m.rows(); ++i) x[i] = rng.normal();
    }
}

// omega block expanded to (omega, sin 2pi w, cos 2pi w, sin 4pi w, cos 4pi w)
DataMatrix trig_design(std::size_t n, std::size_t width, std::size_t p, Rng& rng) {
    DataMatrix out(n, p);
    for (std::size_t j = 0; j < width; ++j) {
        double* w = out.col(j);
        double* s2 = out.col(width + j);
        double* c2 = out.col(2 * width + j);
        double* s4 = out.col(3 * width + j);
        double* c4 = out.col(4 * width + j);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = rng.normal();
            w[i] = v;
            s2[i] = std::sin(kTwoPi * v);
            c2[i] = std::cos(kTwoPi * v);
            s4[i] = std::sin(2.0 * kTwoPi * v);
            c4[i] = std::cos(2.0 * kTwoPi * v);
        }
    }
    for (std::size_t j = 5 * width; j < p; ++j) {
        double* x = out.col(j);
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal();
    }
    return out;
}

// omega block expanded to (omega, log omega^2)
DataMatrix log_design(std::size_t n, std::size_t width, std::size_t p, Rng& rng) {
    DataMatrix out(n, p);
    for (std::size_t j = 0; j < width; ++j) {
        double* w = out.col(j);
        double* lg = out.col(width + j);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = rng.normal();
            w[i] = v;
            lg[i] = std::log(v * v);
        }
    }
    for (std::size_t j = 2 * width; j < p; ++j) {
        double* x = out.col(j);
        for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal();
    }
    return out;
}

// Sparse random correlation: Delta has four entries drawn Uniform[0,1] at
// distinct upper-triangle positions (mirrored); R* = (1+delta) I + Delta with
// delta = (-lambda_min(I+Delta) + 0.05) 1{lambda_min <= 0}, which keeps R*
// positive definite.
Eigen::MatrixXd sparse_corr_matrix(std::size_t p, Rng& rng) {
    const std::uint64_t total = static_cast<std::uint64_t>(p) * (p - 1) / 2;
    std::vector<std::uint64_t> picked;
    while (picked.size() < 4) {
        const std::uint64_t cand = rng.uniform_below(total);
        if (std::find(picked.begin(), picked.end(), cand) == picked.end())
            picked.push_back(cand);
    }

    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(p, p);
    for (const std::uint64_t flat : picked) {
        // flat upper-triangle index -> (j, k)
        std::uint64_t rem = flat;
        std::size_t j = 0;
        while (rem >= p - 1 - j) {
            rem -= p - 1 - j;
            ++j;
        }
        const std::size_t k = j + 1 + static_cast<std::size_t>(rem);
        const double mag = rng.uniform01();
        delta(j, k) = delta(k, j) = mag;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Eigen::MatrixXd::Identity(p, p) + delta, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double shift = lmin <= 0.0 ? -lmin + 0.05 : 0.0;
    return (1.0 + shift) * Eigen::MatrixXd::Identity(p, p) + delta;
}

DataMatrix correlated_gauss(std::size_t n, std::size_t p, Rng& rng) {
    const Eigen::MatrixXd rstar = sparse_corr_matrix(p, rng);
    Eigen::LLT<Eigen::MatrixXd> llt(rstar);
    if (llt.info() != Eigen::Success) {
        std::fprintf(stderr,
                     "note: Cholesky of the sparse correlation matrix failed; "
                     "retrying with 1e-10 diagonal jitter\n");
        llt.compute(rstar + 1e-10 * Eigen::MatrixXd::Identity(p, p));
        if (llt.info() != Eigen::Success)
            throw matrix_error("sparse correlation matrix is not positive definite");
    }
    DataMatrix z(n, p);
    fill_iid_normal(z, rng);
    Eigen::Map<const Eigen::MatrixXd> zm(z.values().data(), n, p);
    Eigen::MatrixXd x = zm * llt.matrixL().transpose();
    DataMatrix out(n, p);
    Eigen::Map<Eigen::MatrixXd>(out.col(0), n, p) = x;
    return out;
}

DataMatrix generate_once(const GeneratorSpec& spec, std::uint64_t seed) {
    const std::size_t n = spec.n, p = spec.p;
    Rng rng(seed);
    switch (spec.family) {
        case Family::gauss_iid:
        case Family::gauss_copula_cube:
        case Family::gauss_copula_cubed: {
            DataMatrix m(n, p);
            fill_iid_normal(m, rng);
            if (spec.family == Family::gauss_copula_cube)
                for (double& v : m.values()) v = std::cbrt(v);
            else if (spec.family == Family::gauss_copula_cubed)
                for (double& v : m.values()) v = v * v * v;
            return m;
        }
        case Family::student_t3: {
            DataMatrix m(n, p);
            for (std::size_t j = 0; j < p; ++j) {
                double* x = m.col(j);
                for (std::size_t i = 0; i < n; ++i) {
                    const double z = rng.normal();
                    const double a = rng.normal(), b = rng.normal(), c = rng.normal();
                    x[i] = z / std::sqrt((a * a + b * b + c * c) / 3.0);
                }
            }
            return m;
        }
        case Family::dense_trig: return trig_design(n, p / 5, p, rng);
        case Family::dense_log: return log_design(n, p / 2, p, rng);
        case Family::sparse_trig: return trig_design(n, 2, p, rng);
        case Family::sparse_log: return log_design(n, 5, p, rng);
        case Family::sparse_corr_gauss: return correlated_gauss(n, p, rng);
        case Family::sparse_corr_sin13: {
            DataMatrix m = correlated_gauss(n, p, rng);
            for (double& v : m.values())
                v = std::sin(kTwoPi * std::cbrt(v) / 3.0);
            return m;
        }
        case Family::sparse_corr_sin3: {
            DataMatrix m = correlated_gauss(n, p, rng);
            for (double& v : m.values())
                v = std::sin(std::numbers::pi * v * v * v / 4.0);
            return m;
        }
        case Family::circle_uniform: {
            DataMatrix m(n, 2);
            double* x = m.col(0);
            double* y = m.col(1);
            for (std::size_t i = 0; i < n; ++i) {
                const double theta = kTwoPi * rng.uniform01();
                x[i] = std::cos(theta);
                y[i] = std::sin(theta);
            }
            return m;
        }
        case Family::bivariate_gauss_rho: {
            DataMatrix m(n, 2);
            double* x = m.col(0);
            double* y = m.col(1);
            const double c = std::sqrt(1.0 - spec.rho * spec.rho);
            for (std::size_t i = 0; i < n; ++i) {
                const double z1 = rng.normal(), z2 = rng.normal();
                x[i] = z1;
                y[i] = spec.rho * z1 + c * z2;
            }
            return m;
        }
    }
    throw spec_invalid("unknown generator family");
}

void validate(const GeneratorSpec& spec) {
    const std::size_t n = spec.n, p = spec.p;
    if (n < 1) throw spec_invalid("generator needs n >= 1");
    switch (spec.family) {
        case Family::dense_trig:
            if (p < 5 || p % 5 != 0) throw spec_invalid("dense_trig needs p divisible by 5");
            break;
        case Family::dense_log:
            if (p < 2 || p % 2 != 0) throw spec_invalid("dense_log needs p divisible by 2");
            break;
        case Family::sparse_trig:
        case Family::sparse_log:
            if (p < 10) throw spec_invalid("sparse designs need p >= 10");
            break;
        case Family::circle_uniform:
            if (p != 2) throw spec_invalid("circle_uniform is bivariate (p == 2)");
            break;
        case Family::bivariate_gauss_rho:
            if (p != 2) throw spec_invalid("bivariate_gauss_rho is bivariate (p == 2)");
            if (!(std::abs(spec.rho) < 1.0))
                throw spec_invalid("bivariate_gauss_rho needs |rho| < 1");
            break;
        case Family::sparse_corr_gauss:
        case Family::sparse_corr_sin13:
        case Family::sparse_corr_sin3:
            if (p < 4) throw spec_invalid("sparse correlation designs need p >= 4");
            break;
        default:
            if (p < 2) throw spec_invalid("generator needs p >= 2");
            break;
    }
}

}  // namespace

bool has_column_ties(const DataMatrix& m, std::size_t* column) {
    std::vector<double> sorted(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        sorted.assign(m.col(j), m.col(j) + m.rows());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i - 1] == sorted[i]) {
                if (column) *column = j;
                return true;
            }
        }
    }
    return false;
}

DataMatrix generate(const GeneratorSpec& spec) {
    validate(spec);
    std::uint64_t seed = spec.seed;
    for (int attempt = 0; attempt < 64; ++attempt) {
        DataMatrix m = generate_once(spec, seed);
        std::size_t col = 0;
        if (!has_column_ties(m, &col)) return m;
        seed = seed_stream(spec.seed, 0xD0D0ULL + static_cast<std::uint64_t>(attempt));
        std::fprintf(stderr,
                     "note: %s draw produced tied values in column %zu; "
                     "re-drawing with derived seed %llu\n",
                     family_name(spec.family), col + 1,
                     static_cast<unsigned long long>(seed));
    }
    throw matrix_error("could not draw a tie-free dataset after 64 attempts");
}

const char* family_name(Family f) {
    switch (f) {
        case Family::gauss_iid: return "gauss_iid";
        case Family::gauss_copula_cube: return "gauss_copula_cube";
        case Family::gauss_copula_cubed: return "gauss_copula_cubed";
        case Family::student_t3: return "student_t3";
        case Family::dense_trig: return "dense_trig";
        case Family::dense_log: return "dense_log";
        case Family::sparse_trig: return "sparse_trig";
        case Family::sparse_log: return "sparse_log";
        case Family::sparse_corr_gauss: return "sparse_corr_gauss";
        case Family::sparse_corr_sin13: return "sparse_corr_sin13";
        case Family::sparse_corr_sin3: return "sparse_corr_sin3";
        case Family::circle_uniform: return "circle_uniform";
        case Family::bivariate_gauss_rho: return "bivariate_gauss_rho";
    }
    return "?";
}

std::vector<double> detail::sparse_corr_instance(std::size_t p, std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::MatrixXd rstar = sparse_corr_matrix(p, rng);
    std::vector<double> flat(p * p);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t k = 0; k < p; ++k) flat[j * p + k] = rstar(j, k);
    return flat;
}

Family family_from_example(const std::string& tag) {
    if (tag == "5a") return Family::gauss_iid;
    if (tag == "5b") return Family::gauss_copula_cube;
    if (tag == "5c") return Family::gauss_copula_cubed;
    if (tag == "5d") return Family::student_t3;
    if (tag == "6a") return Family::dense_trig;
    if (tag == "6b") return Family::dense_log;
    if (tag == "7a") return Family::sparse_trig;
    if (tag == "7b") return Family::sparse_log;
    if (tag == "8a") return Family::sparse_corr_gauss;
    if (tag == "8b") return Family::sparse_corr_sin13;
    if (tag == "8c") return Family::sparse_corr_sin3;
    if (tag == "circle") return Family::circle_uniform;
    throw spec_invalid("unknown example tag '" + tag + "'");
}

}  // namespace maxcorr
