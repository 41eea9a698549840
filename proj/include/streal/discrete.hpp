#ifndef STREAL_DISCRETE_HPP
#define STREAL_DISCRETE_HPP

#include <Eigen/LU>

#include "streal/types.hpp"

namespace streal {

/// Discrete-time SISO system E x_{j+1} = A x_j + B u_j, y_j = C x_j, x_0 = 0.
struct DiscreteSystem {
    Mat e;
    Mat a;
    Vec b;
    Eigen::RowVectorXd c;

    DiscreteSystem(Mat e_in, Mat a_in, Vec b_in, Eigen::RowVectorXd c_in)
        : e(std::move(e_in)), a(std::move(a_in)), b(std::move(b_in)), c(std::move(c_in)) {
        const Eigen::Index n = e.rows();
        if (e.cols() != n || a.rows() != n || a.cols() != n || b.size() != n ||
            c.size() != n)
            throw domain_error("DiscreteSystem: dimension mismatch");
    }

    Eigen::Index order() const { return e.rows(); }

    /// Transfer function H(z) = C (z E - A)^{-1} B.
    Complex transfer(Complex z) const {
        CMat pencil = z * e.cast<Complex>() - a.cast<Complex>();
        Eigen::PartialPivLU<CMat> lu(pencil);
        return (c.cast<Complex>() * lu.solve(b.cast<Complex>().eval()))(0, 0);
    }
};

namespace detail {
inline Eigen::PartialPivLU<Mat> factor_e(const Mat& e) {
    Eigen::PartialPivLU<Mat> lu(e);
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = 0.0;
    for (int i = 0; i < e.rows(); ++i) {
        double d = std::abs(lu.matrixLU()(i, i));
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (dmax == 0.0 || dmin / dmax < 1e-14)
        throw singularity_error("DiscreteSystem: E is numerically singular");
    return lu;
}
}  // namespace detail

/// Runs the recurrence E x_{j+1} = A x_j + B u_j from x_0 = 0; returns y_j = C x_j.
inline Vec simulate_discrete(const DiscreteSystem& sys, const Vec& u) {
    auto lu = detail::factor_e(sys.e);
    Vec x = Vec::Zero(sys.order());
    Vec y(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) {
        y[j] = sys.c * x;
        if (j + 1 < u.size()) x = lu.solve(sys.a * x + sys.b * u[j]);
    }
    return y;
}

/// Impulse response h_i = C (E^{-1}A)^{i-1} (E^{-1}B) for i > 0, h_0 = 0.
inline Vec impulse_response(const DiscreteSystem& sys, Eigen::Index j_max) {
    if (j_max < 0) throw domain_error("impulse_response: j_max must be nonnegative");
    auto lu = detail::factor_e(sys.e);
    Vec h = Vec::Zero(j_max + 1);
    Vec v = lu.solve(sys.b);
    for (Eigen::Index i = 1; i <= j_max; ++i) {
        h[i] = sys.c * v;
        v = lu.solve(sys.a * v);
    }
    return h;
}

}  // namespace streal

#endif  // STREAL_DISCRETE_HPP
