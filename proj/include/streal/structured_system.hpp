#ifndef STREAL_STRUCTURED_SYSTEM_HPP
#define STREAL_STRUCTURED_SYSTEM_HPP

#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/LU>

#include "streal/family.hpp"
#include "streal/types.hpp"

namespace streal {

/// Reciprocal-condition floor below which a pencil counts as singular.
inline constexpr double kSingularPencilRcond = 1e-14;

namespace detail {

/// Cheap reciprocal-condition estimate from the LU diagonal.
inline double lu_rcond_estimate(const Eigen::PartialPivLU<CMat>& lu) {
    const CMat& u = lu.matrixLU();
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (int i = 0; i < u.rows(); ++i) {
        double d = std::abs(u(i, i));
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (dmax == 0.0) return 0.0;
    return dmin / dmax;
}

}  // namespace detail

/// Structured SISO system: real (or certified-complex) matrices A_1..A_K
/// paired with a coefficient family, so that the transfer function is
/// H(s) = C (sum_k h_k(s, p) A_k)^{-1} B.
class StructuredSystem {
public:
    StructuredSystem(std::vector<CMat> matrices, CVec b, Eigen::RowVectorXcd c,
                     FunctionFamily family, Vec parameter)
        : matrices_(std::move(matrices)),
          b_(std::move(b)),
          c_(std::move(c)),
          family_(std::move(family)),
          parameter_(std::move(parameter)) {
        if (matrices_.size() != static_cast<size_t>(family_.size()))
            throw domain_error("StructuredSystem: matrix count must equal family size");
        const Eigen::Index n = b_.size();
        if (n < 1) throw domain_error("StructuredSystem: order must be positive");
        if (c_.size() != n) throw domain_error("StructuredSystem: C dimension mismatch");
        for (const auto& a : matrices_)
            if (a.rows() != n || a.cols() != n)
                throw domain_error("StructuredSystem: A_k dimension mismatch");
        family_.check_parameter(parameter_);
    }

    int order() const { return static_cast<int>(b_.size()); }
    const std::vector<CMat>& matrices() const { return matrices_; }
    const CMat& matrix(int k) const { return matrices_.at(k); }
    const CVec& b() const { return b_; }
    const Eigen::RowVectorXcd& c() const { return c_; }
    const FunctionFamily& family() const { return family_; }
    const Vec& parameter() const { return parameter_; }

    /// The pencil sum_k h_k(s, p) A_k.
    CMat pencil(Complex s) const {
        CVec h = family_.evaluate(s, parameter_);
        CMat k = h[0] * matrices_[0];
        for (int i = 1; i < family_.size(); ++i) k += h[i] * matrices_[i];
        return k;
    }

    /// Transfer function value H(s) = C pencil(s)^{-1} B via a dense LU solve.
    Complex transfer(Complex s) const {
        CMat k = pencil(s);
        Eigen::PartialPivLU<CMat> lu(k);
        if (detail::lu_rcond_estimate(lu) < kSingularPencilRcond) {
            std::ostringstream msg;
            msg << "singular pencil at s = (" << s.real() << ", " << s.imag() << ")";
            throw singularity_error(msg.str());
        }
        return (c_ * lu.solve(b_))(0, 0);
    }

private:
    std::vector<CMat> matrices_;
    CVec b_;
    Eigen::RowVectorXcd c_;
    FunctionFamily family_;
    Vec parameter_;
};

inline Complex eval_transfer(const StructuredSystem& system, Complex s) {
    return system.transfer(s);
}

/// Delay benchmark: E xdot(t) = A_1 x(t) + A_2 x(t - tau) + B u(t) with
/// E = (nu I + T)/10, A_1 = (1/(10 tau))(1/zeta + 1)(T - nu I),
/// A_2 = (1/(10 tau))(1/zeta - 1)(T - nu I), where T carries ones on the
/// sub- and superdiagonal and at the (1,1) and (N,N) positions. B has ones
/// in the first two components and C = B^T. Stored with the family
/// {s, -1, -e^{-tau s}} so the pencil reads s E - A_1 - e^{-tau s} A_2.
/// The common 1/10 factor does not alter the state dynamics; it fixes the
/// input-to-output gain of the reference data this benchmark reproduces.
inline StructuredSystem make_delay_benchmark(int n, double tau, double zeta, double nu) {
    if (n < 2) throw domain_error("make_delay_benchmark: N must be at least 2");
    if (!(tau > 0.0)) throw domain_error("make_delay_benchmark: tau must be positive");
    if (zeta == 0.0) throw domain_error("make_delay_benchmark: zeta must be nonzero");

    Mat t = Mat::Zero(n, n);
    t(0, 0) = 1.0;
    t(n - 1, n - 1) = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
        t(i, i + 1) = 1.0;
        t(i + 1, i) = 1.0;
    }
    Mat e = 0.1 * (nu * Mat::Identity(n, n) + t);
    Mat a1 = (0.1 / tau) * (1.0 / zeta + 1.0) * (t - nu * Mat::Identity(n, n));
    Mat a2 = (0.1 / tau) * (1.0 / zeta - 1.0) * (t - nu * Mat::Identity(n, n));

    CVec b = CVec::Zero(n);
    b[0] = 1.0;
    b[1] = 1.0;
    Eigen::RowVectorXcd c = b.transpose();

    Vec p(1);
    p[0] = tau;
    return StructuredSystem({e.cast<Complex>(), a1.cast<Complex>(), a2.cast<Complex>()},
                            std::move(b), std::move(c), make_family("delay"), p);
}

}  // namespace streal

#endif  // STREAL_STRUCTURED_SYSTEM_HPP
