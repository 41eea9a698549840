#ifndef STREAL_METRICS_HPP
#define STREAL_METRICS_HPP

#include <cmath>

#include "streal/types.hpp"

namespace streal {

/// Validation error measures on a uniform grid: L2 norm of the input by
/// trapezoidal quadrature, sup-norm of the output mismatch over the input
/// energy, and L2 norm of the mismatch over the input energy.
struct ErrorMetrics {
    double u_l2 = 0.0;
    double linf_ratio = 0.0;
    double l2_ratio = 0.0;
};

namespace detail {
inline double trapezoid_l2(const Vec& v, double dt) {
    if (v.size() < 2) throw domain_error("trapezoid_l2: need at least 2 samples");
    double acc = 0.5 * (v[0] * v[0] + v[v.size() - 1] * v[v.size() - 1]);
    for (Eigen::Index j = 1; j + 1 < v.size(); ++j) acc += v[j] * v[j];
    return std::sqrt(acc * dt);
}
}  // namespace detail

inline ErrorMetrics error_metrics(const Vec& y, const Vec& y_approx, const Vec& u,
                                  double dt) {
    if (y.size() != y_approx.size() || y.size() != u.size())
        throw domain_error("error_metrics: sample counts differ");
    if (!(dt > 0.0)) throw domain_error("error_metrics: dt must be positive");
    ErrorMetrics m;
    m.u_l2 = detail::trapezoid_l2(u, dt);
    if (m.u_l2 == 0.0)
        throw domain_error("error_metrics: input norm is zero, ratios undefined");
    Vec diff = y - y_approx;
    m.linf_ratio = diff.cwiseAbs().maxCoeff() / m.u_l2;
    m.l2_ratio = detail::trapezoid_l2(diff, dt) / m.u_l2;
    return m;
}

}  // namespace streal

#endif  // STREAL_METRICS_HPP
