#ifndef STREAL_DELAY_INTEGRATOR_HPP
#define STREAL_DELAY_INTEGRATOR_HPP

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/LU>

#include "streal/structured_system.hpp"
#include "streal/time_series.hpp"
#include "streal/types.hpp"

namespace streal {

namespace detail {

inline Mat require_real_matrix(const CMat& m, const char* what) {
    double imax = m.imag().cwiseAbs().maxCoeff();
    double rmax = m.real().cwiseAbs().maxCoeff();
    if (imax > 1e-10 * (1.0 + rmax))
        throw realness_error(std::string("simulate_delay: matrix ") + what +
                             " has a non-negligible imaginary part");
    return m.real();
}

}  // namespace detail

/// Integrates the delay system E xdot(t) = A_1 x(t) + A_2 x(t - tau) + B u(t)
/// with zero history on [-tau, 0] by the method of steps: an implicit Euler
/// step in the non-delayed state with the delayed term read explicitly from
/// the stored trajectory at the previous step,
///   E x_{j+1} = E x_j + dt (A_1 x_{j+1} + A_2 x(t_j - tau) + B u(t_{j+1})).
/// This one-sided scheme reproduces the frequency-response bias of the
/// reference data this integrator regenerates (a half-sample input lag plus a
/// one-step lag of the delayed term); a centered scheme yields estimates so
/// close to the exact transfer function that the downstream delay fit loses
/// its published minimum. When tau / dt is not an integer the delayed state
/// is linearly interpolated between adjacent stored steps. Only the last
/// ceil(tau/dt) + 2 states are retained.
inline TimeSeries simulate_delay(const StructuredSystem& sys,
                                 const std::function<double(double)>& u, double t_f,
                                 double dt) {
    if (sys.family().name() != "delay")
        throw domain_error("simulate_delay: system must use the 'delay' family");
    if (!(dt > 0.0) || !(t_f > 0.0))
        throw domain_error("simulate_delay: dt and t_f must be positive");
    const double tau = sys.parameter()[0];
    const double lag = tau / dt;
    if (lag < 1.0) throw domain_error("simulate_delay: need tau >= dt");
    const auto n_steps = static_cast<Eigen::Index>(std::llround(t_f / dt));
    if (std::abs(static_cast<double>(n_steps) * dt - t_f) > 1e-9 * t_f)
        throw domain_error("simulate_delay: t_f must be an integer multiple of dt");

    const Mat e = detail::require_real_matrix(sys.matrix(0), "E");
    const Mat a1 = detail::require_real_matrix(sys.matrix(1), "A_1");
    const Mat a2 = detail::require_real_matrix(sys.matrix(2), "A_2");
    const Vec b = detail::require_real_matrix(sys.b(), "B");
    const Eigen::RowVectorXd c = detail::require_real_matrix(sys.c(), "C");
    const Eigen::Index n = e.rows();

    {
        auto lu_e = Eigen::PartialPivLU<Mat>(e);
        double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            double d = std::abs(lu_e.matrixLU()(i, i));
            dmin = std::min(dmin, d);
            dmax = std::max(dmax, d);
        }
        if (dmax == 0.0 || dmin / dmax < 1e-14)
            throw singularity_error("simulate_delay: E is numerically singular");
    }

    Mat lhs = e - dt * a1;
    Eigen::PartialPivLU<Mat> lu(lhs);

    const auto lag_floor = static_cast<Eigen::Index>(std::floor(lag));
    const double lag_frac = lag - static_cast<double>(lag_floor);
    const bool integer_lag = lag_frac < 1e-12 * std::max<double>(1.0, lag);

    // Ring buffer of the last states; index j lives at slot j % capacity.
    const Eigen::Index capacity = lag_floor + 3;
    std::vector<Vec> ring(static_cast<size_t>(capacity), Vec::Zero(n));

    auto delayed_state = [&](Eigen::Index j) -> Vec {
        // x(t_j - tau); zero history before t = 0.
        if (integer_lag) {
            Eigen::Index i = j - lag_floor;
            if (i <= 0) return Vec::Zero(n);
            return ring[static_cast<size_t>(i % capacity)];
        }
        double pos = static_cast<double>(j) - lag;
        auto i = static_cast<Eigen::Index>(std::floor(pos));
        double w = pos - static_cast<double>(i);
        Vec lo = (i <= 0) ? Vec::Zero(n) : ring[static_cast<size_t>(i % capacity)];
        Vec hi = (i + 1 <= 0) ? Vec::Zero(n)
                              : ring[static_cast<size_t>((i + 1) % capacity)];
        return (1.0 - w) * lo + w * hi;
    };

    Vec us(n_steps + 1), ys(n_steps + 1);
    Vec x = Vec::Zero(n);
    ring[0] = x;
    us[0] = u(0.0);
    ys[0] = 0.0;

    Vec rhs(n);
    for (Eigen::Index j = 0; j < n_steps; ++j) {
        double ujp = u(static_cast<double>(j + 1) * dt);
        rhs.noalias() = e * x;
        rhs.noalias() += dt * (a2 * delayed_state(j));
        rhs += dt * ujp * b;
        x = lu.solve(rhs);
        ring[static_cast<size_t>((j + 1) % capacity)] = x;
        us[j + 1] = ujp;
        double yj = c * x;
        if (!std::isfinite(yj))
            throw instability_error("simulate_delay: non-finite state at step " +
                                    std::to_string(j + 1));
        ys[j + 1] = yj;
    }
    return TimeSeries(dt, std::move(us), std::move(ys));
}

}  // namespace streal

#endif  // STREAL_DELAY_INTEGRATOR_HPP
