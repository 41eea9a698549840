#ifndef STREAL_LSTFE_HPP
#define STREAL_LSTFE_HPP

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "streal/fft.hpp"
#include "streal/time_series.hpp"
#include "streal/types.hpp"

namespace streal {

/// Relative magnitude floor defining the numerically nonzero Fourier
/// coefficients of the input.
inline constexpr double kExcitationFloor = 1e-12;

/// Default relative singular-value truncation for the regularized solve.
inline constexpr double kDefaultSvdThreshold = 1e-10;

/// Above this entry count the Fourier matrix is not materialized; the normal
/// equations are accumulated in a streaming pass instead.
inline constexpr double kMaxInMemoryEntries = 2e8;

/// Frequencies at which the transfer function will be estimated:
/// lambda_i = 2 pi i k_i / t_f with distinct ascending integer indices k_i,
/// tied to the unit circle via q_{k_i} = exp(lambda_i dt) = exp(2 pi i k_i / N).
struct FrequencySelection {
    std::vector<Eigen::Index> k;
    double t_f = 0.0;
    double dt = 0.0;
    Eigen::Index n = 0;  // N with t_f = N * dt

    Eigen::Index count() const { return static_cast<Eigen::Index>(k.size()); }

    double omega(Eigen::Index i) const {
        return 2.0 * M_PI * static_cast<double>(k[static_cast<size_t>(i)]) / t_f;
    }
    Complex lambda(Eigen::Index i) const { return Complex(0.0, omega(i)); }
    Complex unit_circle_point(Eigen::Index i) const {
        double angle =
            2.0 * M_PI * static_cast<double>(k[static_cast<size_t>(i)]) /
            static_cast<double>(n);
        return Complex(std::cos(angle), std::sin(angle));
    }
};

/// Transfer-function estimates (lambda_i, H_i) on the positive imaginary
/// axis, with the provenance needed to reproduce them.
struct TransferEstimate {
    std::vector<Eigen::Index> k;
    CVec values;
    double t_f = 0.0;
    double dt = 0.0;
    Eigen::Index j_min = 0;
    double threshold = 0.0;

    Eigen::Index count() const { return static_cast<Eigen::Index>(k.size()); }
    double omega(Eigen::Index i) const {
        return 2.0 * M_PI * static_cast<double>(k[static_cast<size_t>(i)]) / t_f;
    }
    Complex lambda(Eigen::Index i) const { return Complex(0.0, omega(i)); }
    Complex value(Eigen::Index i) const { return values[i]; }
};

/// Maps r~ log-spaced target frequencies on [i f_min, i f_max] to the nearest
/// grid frequencies 2 pi k / t_f with k >= 1, removing duplicates.
inline FrequencySelection select_frequencies(double f_min, double f_max,
                                             Eigen::Index r_tilde, double t_f,
                                             double dt) {
    if (!(f_min > 0.0) || f_min > f_max)
        throw domain_error("select_frequencies: need 0 < f_min <= f_max");
    if (r_tilde < 1) throw domain_error("select_frequencies: r~ must be >= 1");
    if (!(t_f > 0.0) || !(dt > 0.0))
        throw domain_error("select_frequencies: t_f and dt must be positive");

    FrequencySelection sel;
    sel.t_f = t_f;
    sel.dt = dt;
    sel.n = static_cast<Eigen::Index>(std::llround(t_f / dt));
    if (std::abs(static_cast<double>(sel.n) * dt - t_f) > 1e-9 * t_f)
        throw domain_error("select_frequencies: t_f must be an integer multiple of dt");

    const double scale = t_f / (2.0 * M_PI);
    for (Eigen::Index i = 0; i < r_tilde; ++i) {
        double target = (r_tilde == 1)
                            ? f_min
                            : f_min * std::pow(f_max / f_min,
                                               static_cast<double>(i) /
                                                   static_cast<double>(r_tilde - 1));
        auto ki = std::max<long long>(1, std::llround(target * scale));
        if (sel.k.empty() || sel.k.back() != ki) sel.k.push_back(ki);
    }
    if (f_max * scale < 1.0)
        std::cerr << "select_frequencies: warning: all requested frequencies clamp "
                     "to the lowest grid frequency 2*pi/t_f\n";
    return sel;
}

/// Plain ETFE ratio H_k = yhat_k / uhat_k over the numerically excited index
/// set.
inline std::map<Eigen::Index, Complex> etfe_ratio(const TimeSeries& ts) {
    const auto n = static_cast<size_t>(ts.steps());
    Fft plan(n);
    CVec uc(ts.steps()), yc(ts.steps());
    for (Eigen::Index j = 0; j < ts.steps(); ++j) {
        uc[j] = ts.u[j];
        yc[j] = ts.y[j];
    }
    CVec u_hat(ts.steps()), y_hat(ts.steps());
    plan.transform(uc.data(), u_hat.data());
    plan.transform(yc.data(), y_hat.data());

    double floor_mag = kExcitationFloor * u_hat.cwiseAbs().maxCoeff();
    std::map<Eigen::Index, Complex> out;
    for (Eigen::Index kk = 0; kk < ts.steps(); ++kk)
        if (std::abs(u_hat[kk]) > floor_mag) out[kk] = y_hat[kk] / u_hat[kk];
    if (out.empty()) throw missing_excitation_error("etfe_ratio: empty index set");
    return out;
}

/// Fourier matrix F with rows j = j_min..N and columns uhat_{k_i} q_{k_i}^j / N.
/// Column powers are formed by a running product, re-normalized to the unit
/// circle every 2^16 steps.
inline CMat assemble_fourier_matrix(const CVec& u_hat,
                                    const std::vector<Eigen::Index>& ks,
                                    Eigen::Index j_min, Eigen::Index n) {
    if (j_min < 0 || j_min > n)
        throw domain_error("assemble_fourier_matrix: j_min out of [0, N]");
    const auto r = static_cast<Eigen::Index>(ks.size());
    CMat f(n - j_min + 1, r);
    for (Eigen::Index col = 0; col < r; ++col) {
        Eigen::Index kk = ks[static_cast<size_t>(col)];
        Complex coeff = u_hat[kk];
        if (std::abs(coeff) <= kExcitationFloor * u_hat.cwiseAbs().maxCoeff())
            throw missing_excitation_error(
                "assemble_fourier_matrix: zero Fourier coefficient at k = " +
                std::to_string(kk));
        double angle = 2.0 * M_PI * static_cast<double>(kk) / static_cast<double>(n);
        Complex q(std::cos(angle), std::sin(angle));
        Complex power = std::exp(Complex(0.0, angle * static_cast<double>(j_min)));
        const Complex scale = coeff / static_cast<double>(n);
        for (Eigen::Index row = 0; row <= n - j_min; ++row) {
            f(row, col) = scale * power;
            power *= q;
            if (((row + 1) & 0xFFFF) == 0) power /= std::abs(power);
        }
    }
    return f;
}

/// Minimum-norm least-squares solution of F H = Y with singular values below
/// rel_threshold * sigma_max truncated. Tall problems are first reduced by a
/// QR factorization so only a small matrix is decomposed.
inline CVec solve_regularized_ls(const CMat& f, const Vec& y, double rel_threshold) {
    if (f.rows() != y.size())
        throw domain_error("solve_regularized_ls: row/right-hand-side mismatch");
    if (rel_threshold < 0.0 || rel_threshold >= 1.0)
        throw domain_error("solve_regularized_ls: rel_threshold must be in [0, 1)");

    const Eigen::Index m = f.rows(), r = f.cols();
    CMat small;     // r x r (or m x r when m < r)
    CVec rhs_head;  // transformed right-hand side matching `small`
    if (m > r) {
        Eigen::HouseholderQR<CMat> qr(f);
        small = qr.matrixQR().topRows(r).template triangularView<Eigen::Upper>();
        CVec qty = y.cast<Complex>();
        qty.applyOnTheLeft(qr.householderQ().adjoint());
        rhs_head = qty.head(r);
    } else {
        small = f;
        rhs_head = y.cast<Complex>();
    }

    Eigen::JacobiSVD<CMat> svd(small, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec& sigma = svd.singularValues();
    double cutoff = rel_threshold * sigma[0];
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > cutoff && sigma[i] > 0.0) ++rank;
    if (rank == 0)
        throw error("solve_regularized_ls: all singular values truncated");

    CVec coeffs = svd.matrixU().leftCols(rank).adjoint() * rhs_head;
    coeffs.array() /= sigma.head(rank).cast<Complex>().array();
    return svd.matrixV().leftCols(rank) * coeffs;
}

namespace detail {

/// Streaming accumulation of F^H F and F^H Y with compensated summation,
/// followed by a truncated eigen-solve of the small Hermitian system.
inline CVec solve_streaming_normal_equations(const CVec& u_hat,
                                             const std::vector<Eigen::Index>& ks,
                                             Eigen::Index j_min, Eigen::Index n,
                                             const Vec& y, double rel_threshold) {
    const auto r = static_cast<Eigen::Index>(ks.size());
    CMat gram = CMat::Zero(r, r), gram_comp = CMat::Zero(r, r);
    CVec rhs = CVec::Zero(r), rhs_comp = CVec::Zero(r);
    CVec powers(r), qs(r), scales(r);
    for (Eigen::Index col = 0; col < r; ++col) {
        Eigen::Index kk = ks[static_cast<size_t>(col)];
        double angle = 2.0 * M_PI * static_cast<double>(kk) / static_cast<double>(n);
        qs[col] = Complex(std::cos(angle), std::sin(angle));
        powers[col] = std::exp(Complex(0.0, angle * static_cast<double>(j_min)));
        scales[col] = u_hat[kk] / static_cast<double>(n);
    }
    CVec row(r);
    auto kahan_add = [](Complex& sum, Complex& comp, Complex term) {
        Complex t = term - comp;
        Complex s = sum + t;
        comp = (s - sum) - t;
        sum = s;
    };
    for (Eigen::Index j = j_min; j <= n; ++j) {
        for (Eigen::Index col = 0; col < r; ++col) row[col] = scales[col] * powers[col];
        for (Eigen::Index a = 0; a < r; ++a) {
            for (Eigen::Index bcol = 0; bcol < r; ++bcol)
                kahan_add(gram(a, bcol), gram_comp(a, bcol),
                          std::conj(row[a]) * row[bcol]);
            kahan_add(rhs[a], rhs_comp[a], std::conj(row[a]) * y[j - j_min]);
        }
        for (Eigen::Index col = 0; col < r; ++col) {
            powers[col] *= qs[col];
            if (((j - j_min + 1) & 0xFFFF) == 0) powers[col] /= std::abs(powers[col]);
        }
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
    Vec evals = eig.eigenvalues().cwiseMax(0.0);  // ascending
    double sigma_max = std::sqrt(evals[r - 1]);
    double cutoff = rel_threshold * sigma_max;
    CVec sol = CVec::Zero(r);
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
        double sigma = std::sqrt(evals[i]);
        if (sigma <= cutoff || sigma == 0.0) continue;
        ++kept;
        CVec v = eig.eigenvectors().col(i);
        sol += v * (v.adjoint() * rhs)(0) / evals[i];
    }
    if (kept == 0)
        throw error("lstfe: all singular values truncated in streaming solve");
    return sol;
}

}  // namespace detail

/// Full estimation pipeline: DFT of the input, Fourier-matrix assembly over
/// the excited coefficients (each selected k and its conjugate image N - k),
/// regularized least-squares solve on the trailing fraction of the series,
/// and extraction of the estimates at the positive frequencies.
inline TransferEstimate lstfe_pipeline(const TimeSeries& ts,
                                       const FrequencySelection& sel,
                                       double j_min_fraction = 0.75,
                                       double rel_threshold = kDefaultSvdThreshold) {
    if (!(j_min_fraction > 0.0) || !(j_min_fraction < 1.0))
        throw domain_error("lstfe_pipeline: j_min_fraction must be in (0, 1)");
    if (ts.steps() != sel.n)
        throw domain_error("lstfe_pipeline: time series length does not match the "
                           "frequency selection");
    const Eigen::Index n = sel.n;
    const auto j_min = static_cast<Eigen::Index>(
        std::floor((1.0 - j_min_fraction) * static_cast<double>(n)));

    CVec uc(n);
    for (Eigen::Index j = 0; j < n; ++j) uc[j] = ts.u[j];
    Fft plan(static_cast<size_t>(n));
    CVec u_hat(n);
    plan.transform(uc.data(), u_hat.data());
    const double floor_mag = kExcitationFloor * u_hat.cwiseAbs().maxCoeff();

    // Columns: every selected index plus its excited conjugate image.
    std::vector<Eigen::Index> cols;
    for (Eigen::Index kk : sel.k) {
        if (std::abs(u_hat[kk]) <= floor_mag)
            throw missing_excitation_error(
                "lstfe_pipeline: input carries no excitation at k = " +
                std::to_string(kk));
        cols.push_back(kk);
        Eigen::Index image = n - kk;
        if (image != kk && std::abs(u_hat[image]) > floor_mag) cols.push_back(image);
    }

    Vec y_tail = ts.y.segment(j_min, n - j_min + 1);
    CVec solution;
    double entries = static_cast<double>(n - j_min + 1) * static_cast<double>(cols.size());
    if (entries <= kMaxInMemoryEntries) {
        CMat f = assemble_fourier_matrix(u_hat, cols, j_min, n);
        solution = solve_regularized_ls(f, y_tail, rel_threshold);
    } else {
        solution = detail::solve_streaming_normal_equations(u_hat, cols, j_min, n,
                                                            y_tail, rel_threshold);
    }

    TransferEstimate est;
    est.k = sel.k;
    est.t_f = sel.t_f;
    est.dt = sel.dt;
    est.j_min = j_min;
    est.threshold = rel_threshold;
    est.values.resize(sel.count());
    for (Eigen::Index i = 0; i < sel.count(); ++i) {
        auto it = std::find(cols.begin(), cols.end(), sel.k[static_cast<size_t>(i)]);
        est.values[i] = solution[static_cast<Eigen::Index>(it - cols.begin())];
    }
    return est;
}

}  // namespace streal

#endif  // STREAL_LSTFE_HPP
