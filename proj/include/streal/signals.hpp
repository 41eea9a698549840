#ifndef STREAL_SIGNALS_HPP
#define STREAL_SIGNALS_HPP

#include <cmath>
#include <set>
#include <vector>

#include "streal/types.hpp"

namespace streal {

namespace detail {
inline void check_sparse_indices(Eigen::Index n, const std::vector<Eigen::Index>& ks) {
    std::set<Eigen::Index> seen;
    for (Eigen::Index k : ks) {
        if (k < 1 || k >= n)
            throw domain_error("sparse_input: index k must satisfy 1 <= k < N");
        if (!seen.insert(k).second)
            throw domain_error("sparse_input: duplicate index k");
    }
}
}  // namespace detail

/// Excitation sparse in the Fourier domain, realified to cosine terms:
/// u_j = (1/N) sum_i cos(2 pi k_i j / N). The DFT then carries coefficient
/// 1/2 at each k_i and at its conjugate image N - k_i.
inline double sparse_input_discrete(Eigen::Index n, const std::vector<Eigen::Index>& ks,
                                    Eigen::Index j) {
    detail::check_sparse_indices(n, ks);
    if (j < 0 || j > n) throw domain_error("sparse_input: index j out of [0, N]");
    double acc = 0.0;
    for (Eigen::Index k : ks)
        acc += std::cos(2.0 * M_PI * static_cast<double>(k) * static_cast<double>(j) /
                        static_cast<double>(n));
    return acc / static_cast<double>(n);
}

/// Continuous representation of the discrete sparse input; sampling at
/// t_j = j * dt with t_f = N * dt reproduces the discrete signal.
inline double sparse_input_continuous(Eigen::Index n, const std::vector<Eigen::Index>& ks,
                                      double t, double t_f) {
    detail::check_sparse_indices(n, ks);
    if (!(t_f > 0.0)) throw domain_error("sparse_input: t_f must be positive");
    if (t < 0.0 || t > t_f) throw domain_error("sparse_input: t out of [0, t_f]");
    double acc = 0.0;
    for (Eigen::Index k : ks)
        acc += std::cos(2.0 * M_PI * static_cast<double>(k) * t / t_f);
    return acc / static_cast<double>(n);
}

/// Complex-exponential form u_j = (1/N) sum_i q_{k_i}^j (used by tests that
/// check the analytic Fourier coefficients).
inline Complex sparse_input_complex(Eigen::Index n, const std::vector<Eigen::Index>& ks,
                                    Eigen::Index j) {
    detail::check_sparse_indices(n, ks);
    if (j < 0 || j > n) throw domain_error("sparse_input: index j out of [0, N]");
    Complex acc = 0.0;
    for (Eigen::Index k : ks) {
        double angle = 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(j) /
                       static_cast<double>(n);
        acc += Complex(std::cos(angle), std::sin(angle));
    }
    return acc / static_cast<double>(n);
}

/// Sparse excitation with indices validated once at construction; the
/// per-sample evaluators are cheap enough for multi-million-step runs.
class SparseInputSignal {
public:
    SparseInputSignal(Eigen::Index n, std::vector<Eigen::Index> ks, double t_f)
        : n_(n), ks_(std::move(ks)), t_f_(t_f) {
        detail::check_sparse_indices(n_, ks_);
        if (!(t_f_ > 0.0)) throw domain_error("SparseInputSignal: t_f must be positive");
    }

    double continuous(double t) const {
        double acc = 0.0;
        for (Eigen::Index k : ks_)
            acc += std::cos(2.0 * M_PI * static_cast<double>(k) * t / t_f_);
        return acc / static_cast<double>(n_);
    }

    double discrete(Eigen::Index j) const {
        double acc = 0.0;
        for (Eigen::Index k : ks_)
            acc += std::cos(2.0 * M_PI * static_cast<double>(k) * static_cast<double>(j) /
                            static_cast<double>(n_));
        return acc / static_cast<double>(n_);
    }

private:
    Eigen::Index n_;
    std::vector<Eigen::Index> ks_;
    double t_f_;
};

/// Validation inputs: u_1(t) = sin(t),
/// u_2(t) = 2 (t - floor(2t + 1/2) / 2) (-1)^{floor(2t + 1/2)} + 1 (triangle wave),
/// u_3(t) = t exp(-t^2).
inline double validation_input(int which, double t) {
    if (t < 0.0) throw domain_error("validation_input: t must be nonnegative");
    switch (which) {
        case 1:
            return std::sin(t);
        case 2: {
            double f = std::floor(2.0 * t + 0.5);
            double sign = (static_cast<long long>(f) % 2 == 0) ? 1.0 : -1.0;
            return 2.0 * (t - 0.5 * f) * sign + 1.0;
        }
        case 3:
            return t * std::exp(-t * t);
        default:
            throw domain_error("validation_input: which must be 1, 2, or 3");
    }
}

}  // namespace streal

#endif  // STREAL_SIGNALS_HPP
