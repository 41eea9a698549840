#ifndef STREAL_REALIZE_HPP
#define STREAL_REALIZE_HPP

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "streal/lstfe.hpp"
#include "streal/structured_system.hpp"
#include "streal/types.hpp"

namespace streal {

/// Pairs (lambda_i, theta_i) of complex frequency and transfer value.
struct InterpolationData {
    std::vector<Complex> lambda;
    std::vector<Complex> theta;
    bool conjugate_closed = false;

    Eigen::Index count() const { return static_cast<Eigen::Index>(lambda.size()); }
};

inline InterpolationData make_interpolation_data(const TransferEstimate& est) {
    InterpolationData data;
    for (Eigen::Index i = 0; i < est.count(); ++i) {
        data.lambda.push_back(est.lambda(i));
        data.theta.push_back(est.value(i));
    }
    return data;
}

/// Interleaves each point with its complex conjugate so a real realization
/// exists: (lambda_1, conj lambda_1, lambda_2, conj lambda_2, ...).
inline InterpolationData close_under_conjugation(const InterpolationData& data) {
    if (data.conjugate_closed)
        throw domain_error("close_under_conjugation: data is already closed");
    InterpolationData out;
    out.conjugate_closed = true;
    for (Eigen::Index i = 0; i < data.count(); ++i) {
        Complex l = data.lambda[static_cast<size_t>(i)];
        if (!(l.imag() > 0.0))
            throw domain_error("close_under_conjugation: frequencies must have "
                               "positive imaginary part");
        for (Eigen::Index j = 0; j < i; ++j)
            if (data.lambda[static_cast<size_t>(j)] == l)
                throw domain_error("close_under_conjugation: duplicate frequency");
        out.lambda.push_back(l);
        out.lambda.push_back(std::conj(l));
        out.theta.push_back(data.theta[static_cast<size_t>(i)]);
        out.theta.push_back(std::conj(data.theta[static_cast<size_t>(i)]));
    }
    return out;
}

/// The renamed data blocks of the entry-wise construction. Row q of mu/f
/// holds mu_{q;i} / f_{q;i} over i = 1..n (and likewise sigma/g).
struct DataPartition {
    CMat mu, f;      // Q_F x n
    CMat sigma, g;   // Q_G x n
    Eigen::Index order = 0;   // n, even
    Eigen::Index used = 0;    // K * n
    Eigen::Index unused = 0;  // trailing points not assigned
};

/// Splits conjugate-closed data into the mu/f and sigma/g blocks with
/// n = largest even integer satisfying K * n <= M. Surplus trailing points
/// are left out.
inline DataPartition partition_data(const InterpolationData& data, int K) {
    if (K < 1) throw domain_error("partition_data: K must be positive");
    const Eigen::Index m = data.count();
    if (m < 2 * K)
        throw insufficient_data_error("partition_data: need at least 2K points");
    Eigen::Index n = (m / K) & ~Eigen::Index(1);  // largest even n with K*n <= M
    const Eigen::Index q_f = (K + 1) / 2;
    const Eigen::Index q_g = K / 2;

    DataPartition part;
    part.order = n;
    part.used = static_cast<Eigen::Index>(K) * n;
    part.unused = m - part.used;
    part.mu.resize(q_f, n);
    part.f.resize(q_f, n);
    part.sigma.resize(q_g, n);
    part.g.resize(q_g, n);
    for (Eigen::Index j = 1; j <= q_f; ++j)
        for (Eigen::Index i = 1; i <= n; ++i) {
            auto idx = static_cast<size_t>(2 * (j - 1) * n + i - 1);
            part.mu(j - 1, i - 1) = data.lambda[idx];
            part.f(j - 1, i - 1) = data.theta[idx];
        }
    for (Eigen::Index j = 1; j <= q_g; ++j)
        for (Eigen::Index i = 1; i <= n; ++i) {
            auto idx = static_cast<size_t>((2 * j - 1) * n + i - 1);
            part.sigma(j - 1, i - 1) = data.lambda[idx];
            part.g(j - 1, i - 1) = data.theta[idx];
        }
    return part;
}

/// Block-diagonal unitary realifying transform with 2x2 blocks
/// (1/sqrt(2)) [[1, -i], [1, i]].
inline CMat build_realifying_transform(Eigen::Index n) {
    if (n < 2 || n % 2 != 0)
        throw domain_error("build_realifying_transform: n must be even and >= 2");
    CMat t = CMat::Zero(n, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index b = 0; b < n; b += 2) {
        t(b, b) = inv_sqrt2;
        t(b, b + 1) = Complex(0.0, -inv_sqrt2);
        t(b + 1, b) = inv_sqrt2;
        t(b + 1, b + 1) = Complex(0.0, inv_sqrt2);
    }
    return t;
}

/// Solves the entry-wise K x K coefficient systems: for every (i, j) the rows
/// are f_{q;i} * [h_1(mu_{q;i}) ... h_K(mu_{q;i})] followed by
/// g_{q;j} * [h_1(sigma_{q;j}) ... h_K(sigma_{q;j})], with right-hand side of
/// ones; the solution supplies ([A_1]_{ij}, ..., [A_K]_{ij}).
inline std::vector<CMat> solve_haar_entries(const FunctionFamily& family, const Vec& p,
                                            const DataPartition& part) {
    const int K = family.size();
    const Eigen::Index n = part.order;
    const Eigen::Index q_f = part.mu.rows();
    const Eigen::Index q_g = part.sigma.rows();
    if (q_f + q_g != K)
        throw domain_error("solve_haar_entries: partition does not match family size");

    for (Eigen::Index q = 0; q < q_f; ++q)
        for (Eigen::Index i = 0; i < n; ++i)
            if (part.f(q, i) == Complex(0.0))
                throw domain_error("solve_haar_entries: zero transfer value in data");
    for (Eigen::Index q = 0; q < q_g; ++q)
        for (Eigen::Index i = 0; i < n; ++i)
            if (part.g(q, i) == Complex(0.0))
                throw domain_error("solve_haar_entries: zero transfer value in data");

    // Family evaluations depend on the column index only; cache them.
    std::vector<std::vector<CVec>> h_mu(static_cast<size_t>(q_f)),
        h_sigma(static_cast<size_t>(q_g));
    for (Eigen::Index q = 0; q < q_f; ++q)
        for (Eigen::Index i = 0; i < n; ++i)
            h_mu[static_cast<size_t>(q)].push_back(family.evaluate(part.mu(q, i), p));
    for (Eigen::Index q = 0; q < q_g; ++q)
        for (Eigen::Index i = 0; i < n; ++i)
            h_sigma[static_cast<size_t>(q)].push_back(
                family.evaluate(part.sigma(q, i), p));

    std::vector<CMat> a(static_cast<size_t>(K), CMat(n, n));
    CMat system(K, K);
    CVec ones = CVec::Ones(K);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index q = 0; q < q_f; ++q)
                system.row(q) =
                    part.f(q, i) *
                    h_mu[static_cast<size_t>(q)][static_cast<size_t>(i)].transpose();
            for (Eigen::Index q = 0; q < q_g; ++q)
                system.row(q_f + q) =
                    part.g(q, j) *
                    h_sigma[static_cast<size_t>(q)][static_cast<size_t>(j)].transpose();
            Eigen::PartialPivLU<CMat> lu(system);
            if (detail::lu_rcond_estimate(lu) < 1e-13) {
                std::ostringstream msg;
                msg << "solve_haar_entries: Haar condition violated at entry ("
                    << i + 1 << ", " << j + 1 << ")";
                throw haar_violation_error(msg.str());
            }
            CVec sol = lu.solve(ones);
            for (int k = 0; k < K; ++k) a[static_cast<size_t>(k)](i, j) = sol[k];
        }
    }
    return a;
}

/// A realization with provenance; matrices are stored complex with a
/// certified-real flag set when all imaginary parts are negligible.
struct Realization {
    StructuredSystem system;
    bool certified_real = false;
    std::string source_digest;
    Eigen::Index pivot_index = 0;
    double rank_tol = 0.0;

    Eigen::Index order() const { return system.order(); }
    Complex transfer(Complex s) const { return system.transfer(s); }
};

/// Applies the realifying transform: A~_k = T* A_k T, B~ = T* ones, C~ = B~^T.
/// Imaginary parts are certified below 1e-10 relative and then zeroed.
inline Realization realify(const std::vector<CMat>& a, const FunctionFamily& family,
                           const Vec& p) {
    if (a.empty()) throw domain_error("realify: no matrices");
    const Eigen::Index n = a.front().rows();
    CMat t = build_realifying_transform(n);
    std::vector<CMat> tilde;
    for (const auto& ak : a) tilde.push_back(t.adjoint() * ak * t);
    CVec b_tilde = t.adjoint() * CVec::Ones(n);
    Eigen::RowVectorXcd c_tilde = b_tilde.transpose();

    auto certify = [](CMat& m, const char* what) {
        double imax = m.imag().cwiseAbs().maxCoeff();
        double rmax = m.real().cwiseAbs().maxCoeff();
        if (imax > 1e-10 * (1.0 + rmax))
            throw realness_error(std::string("realify: matrix ") + what +
                                 " failed the realness certification (data is not "
                                 "conjugate-closed?)");
        m = m.real().cast<Complex>();
    };
    for (size_t k = 0; k < tilde.size(); ++k) certify(tilde[k], "A");
    CMat bm = b_tilde, cm = c_tilde;
    certify(bm, "B");
    certify(cm, "C");

    Realization rz{StructuredSystem(std::move(tilde), bm.col(0), cm.row(0), family, p)};
    rz.certified_real = true;
    return rz;
}

/// Per-point interpolation deviations |H~(lambda_i) - theta_i| / |theta_i|.
struct InterpolationReport {
    std::vector<double> deviation;
    double max_deviation = 0.0;
};

inline InterpolationReport verify_interpolation(const Realization& rz,
                                                const InterpolationData& data) {
    InterpolationReport report;
    for (Eigen::Index i = 0; i < data.count(); ++i) {
        double dev;
        try {
            Complex h = rz.transfer(data.lambda[static_cast<size_t>(i)]);
            dev = std::abs(h - data.theta[static_cast<size_t>(i)]) /
                  std::abs(data.theta[static_cast<size_t>(i)]);
        } catch (const singularity_error&) {
            dev = std::numeric_limits<double>::infinity();
        }
        report.deviation.push_back(dev);
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    return report;
}

namespace detail {

inline Eigen::Index numerical_rank(const CMat& m, double rank_tol) {
    Eigen::JacobiSVD<CMat> svd(m);
    const Vec& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > rank_tol * sigma[0]) ++rank;
    return rank;
}

}  // namespace detail

/// Removes redundancy by the pencil SVD at one interpolation frequency:
/// K~(lambda) = [W1 W2] diag(S, 0) [V1*; V2*], A~_{k;r} = W1* A~_k V1,
/// B~_r = W1* B~, C~_r = C~ V1. Requires the numerical rank of K~(lambda) to
/// agree with the rank of the stacked coefficient matrices; re-verifies the
/// interpolation conditions afterwards. A full-rank pencil leaves the
/// realization unchanged.
inline Realization truncate(const Realization& rz, const InterpolationData& data,
                            Eigen::Index pivot_index = 0, double rank_tol = 1e-10) {
    if (pivot_index < 0 || pivot_index >= data.count())
        throw domain_error("truncate: pivot index out of range");
    const Eigen::Index n = rz.order();
    const int K = rz.system.family().size();
    Complex pivot = data.lambda[static_cast<size_t>(pivot_index)];

    CMat pencil = rz.system.pencil(pivot);
    Eigen::JacobiSVD<CMat> svd(pencil, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Index rank_pencil = 0;
    {
        const Vec& sigma = svd.singularValues();
        for (Eigen::Index i = 0; i < sigma.size(); ++i)
            if (sigma[i] > rank_tol * sigma[0]) ++rank_pencil;
    }
    if (rank_pencil < n) {
        // An invertible pencil has full rank regardless of how spread its
        // singular values are; use the same criterion as transfer evaluation.
        Eigen::PartialPivLU<CMat> lu(pencil);
        if (detail::lu_rcond_estimate(lu) >= kSingularPencilRcond) rank_pencil = n;
    }
    CMat stacked_rows(static_cast<Eigen::Index>(K) * n, n);
    CMat stacked_cols(n, static_cast<Eigen::Index>(K) * n);
    for (int k = 0; k < K; ++k) {
        stacked_rows.middleRows(static_cast<Eigen::Index>(k) * n, n) =
            rz.system.matrix(k);
        stacked_cols.middleCols(static_cast<Eigen::Index>(k) * n, n) =
            rz.system.matrix(k);
    }
    Eigen::Index rank_rows = detail::numerical_rank(stacked_rows, rank_tol);
    Eigen::Index rank_cols = detail::numerical_rank(stacked_cols, rank_tol);
    // An invertible pencil forces the stacked matrices to full rank as well
    // (the pencil is a linear combination of them), so a smaller numerical
    // stacked rank is a tolerance artifact; no reduction happens in that case.
    if (rank_pencil == n) {
        rank_rows = std::max(rank_rows, n);
        rank_cols = std::max(rank_cols, n);
    }
    if (rank_pencil != rank_rows || rank_pencil != rank_cols) {
        std::ostringstream msg;
        msg << "truncate: rank condition violated (pencil rank " << rank_pencil
            << ", stacked ranks " << rank_rows << " / " << rank_cols << ")";
        throw truncation_error(msg.str());
    }

    Realization out = rz;
    out.pivot_index = pivot_index;
    out.rank_tol = rank_tol;
    if (rank_pencil < n) {
        CMat w1 = svd.matrixU().leftCols(rank_pencil);
        CMat v1 = svd.matrixV().leftCols(rank_pencil);
        std::vector<CMat> reduced;
        for (int k = 0; k < K; ++k)
            reduced.push_back(w1.adjoint() * rz.system.matrix(k) * v1);
        CVec b_r = w1.adjoint() * rz.system.b();
        Eigen::RowVectorXcd c_r = rz.system.c() * v1;
        out.system = StructuredSystem(std::move(reduced), std::move(b_r), std::move(c_r),
                                      rz.system.family(), rz.system.parameter());
        double imax = 0.0, rmax = 0.0;
        for (const auto& m : out.system.matrices()) {
            imax = std::max(imax, m.imag().cwiseAbs().maxCoeff());
            rmax = std::max(rmax, m.real().cwiseAbs().maxCoeff());
        }
        out.certified_real = imax <= 1e-10 * (1.0 + rmax);
    }

    InterpolationReport report = verify_interpolation(out, data);
    if (report.max_deviation > 1e-6) {
        std::ostringstream msg;
        msg << "truncate: interpolation lost after truncation (max relative "
               "deviation "
            << report.max_deviation << ")";
        throw truncation_error(msg.str());
    }
    return out;
}

namespace detail {

inline std::string digest_interpolation_data(const InterpolationData& data) {
    // FNV-1a over the raw point bytes; provenance only.
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xFF;
            h *= 1099511628211ull;
        }
    };
    for (Eigen::Index i = 0; i < data.count(); ++i) {
        mix(data.lambda[static_cast<size_t>(i)].real());
        mix(data.lambda[static_cast<size_t>(i)].imag());
        mix(data.theta[static_cast<size_t>(i)].real());
        mix(data.theta[static_cast<size_t>(i)].imag());
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

}  // namespace detail

/// End-to-end construction: conjugate closure, partition, entry-wise solves,
/// realifying transform, and redundancy truncation, with the interpolation
/// conditions verified on the closed data.
inline Realization structured_realization(const InterpolationData& open_data,
                                          const FunctionFamily& family, const Vec& p,
                                          Eigen::Index pivot_index = 0,
                                          double rank_tol = 1e-10) {
    for (Eigen::Index i = 0; i < open_data.count(); ++i)
        if (open_data.theta[static_cast<size_t>(i)] == Complex(0.0))
            throw domain_error("structured_realization: transfer values must be "
                               "nonzero");
    InterpolationData closed = close_under_conjugation(open_data);
    DataPartition part = partition_data(closed, family.size());
    InterpolationData used;
    used.conjugate_closed = true;
    used.lambda.assign(closed.lambda.begin(), closed.lambda.begin() + part.used);
    used.theta.assign(closed.theta.begin(), closed.theta.begin() + part.used);

    std::vector<CMat> a = solve_haar_entries(family, p, part);
    Realization rz = realify(a, family, p);
    rz.source_digest = detail::digest_interpolation_data(used);
    return truncate(rz, used, pivot_index, rank_tol);
}

inline Realization structured_realization(const TransferEstimate& est,
                                          const FunctionFamily& family, const Vec& p,
                                          Eigen::Index pivot_index = 0,
                                          double rank_tol = 1e-10) {
    return structured_realization(make_interpolation_data(est), family, p, pivot_index,
                                  rank_tol);
}

}  // namespace streal

#endif  // STREAL_REALIZE_HPP
