#ifndef STREAL_PARAMFIT_HPP
#define STREAL_PARAMFIT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "streal/realize.hpp"
#include "streal/types.hpp"

namespace streal {

/// Held-out transfer samples (zeta_j, psi_j) used to fit free structural
/// parameters; disjoint from the interpolation frequencies.
struct TestData {
    std::vector<Complex> zeta;
    std::vector<Complex> psi;

    Eigen::Index count() const { return static_cast<Eigen::Index>(zeta.size()); }
};

inline TestData make_test_data(const TransferEstimate& est) {
    TestData data;
    for (Eigen::Index i = 0; i < est.count(); ++i) {
        data.zeta.push_back(est.lambda(i));
        data.psi.push_back(est.value(i));
    }
    return data;
}

/// One sampled point of the parameter cost landscape.
struct CostSample {
    Vec parameter;
    double cost = std::numeric_limits<double>::infinity();
    bool success = false;
    std::string diagnostic;
};

/// Least-squares mismatch E(p) = sum_j |psi_j - H~(zeta_j, p)|^2, where the
/// realization H~(., p) is rebuilt from the interpolation data at each p.
/// A failed realization yields an infinite-cost sample instead of an error.
inline CostSample cost_sample(const Vec& p, const InterpolationData& interp,
                              const TestData& test, const FunctionFamily& family) {
    CostSample sample;
    sample.parameter = p;
    if (!family.within_bounds(p)) {
        sample.diagnostic = "parameter out of bounds";
        return sample;
    }
    try {
        Realization rz = structured_realization(interp, family, p);
        double acc = 0.0;
        for (Eigen::Index j = 0; j < test.count(); ++j) {
            Complex h = rz.transfer(test.zeta[static_cast<size_t>(j)]);
            acc += std::norm(test.psi[static_cast<size_t>(j)] - h);
        }
        sample.cost = acc;
        sample.success = true;
    } catch (const error& e) {
        sample.diagnostic = e.what();
    }
    return sample;
}

/// Cost for a valid parameter; realization failure raises.
inline double cost(const Vec& p, const InterpolationData& interp, const TestData& test,
                   const FunctionFamily& family) {
    family.check_parameter(p);
    CostSample sample = cost_sample(p, interp, test, family);
    if (!sample.success)
        throw error("cost: realization failed at the requested parameter: " +
                    sample.diagnostic);
    return sample.cost;
}

/// Evaluates the cost on a parameter grid, order preserved.
inline std::vector<CostSample> sample_cost(const std::vector<Vec>& grid,
                                           const InterpolationData& interp,
                                           const TestData& test,
                                           const FunctionFamily& family) {
    std::vector<CostSample> out;
    out.reserve(grid.size());
    for (const Vec& p : grid) out.push_back(cost_sample(p, interp, test, family));
    return out;
}

/// Result of the scalar parameter fit.
struct FitResult {
    double p_star = 0.0;
    double cost = std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

/// Bounded derivative-free minimization of the scalar cost: a 21-point coarse
/// grid brackets the minimum, then golden-section refines to an absolute
/// parameter tolerance of 1e-6.
inline FitResult minimize_cost(double lo, double hi, double start,
                               const InterpolationData& interp, const TestData& test,
                               const FunctionFamily& family) {
    if (!(lo < hi)) throw domain_error("minimize_cost: need lo < hi");
    if (start < lo || start > hi)
        throw domain_error("minimize_cost: start must lie in [lo, hi]");
    if (family.parameter_dimension() != 1)
        throw domain_error("minimize_cost: only scalar parameters are supported");

    int evaluations = 0;
    double best_p = start, best_cost = std::numeric_limits<double>::infinity();
    auto eval = [&](double p) {
        Vec pv(1);
        pv[0] = p;
        ++evaluations;
        double c = cost_sample(pv, interp, test, family).cost;
        // The search never loses its best point, even when golden-section
        // refinement drifts into a neighboring well of a multimodal landscape.
        if (c < best_cost) {
            best_cost = c;
            best_p = p;
        }
        return c;
    };

    // Coarse bracket including the start value.
    constexpr int kGridPoints = 21;
    std::vector<double> grid;
    for (int i = 0; i < kGridPoints; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (kGridPoints - 1));
    grid.push_back(start);
    std::sort(grid.begin(), grid.end());

    std::vector<double> costs;
    for (double p : grid) costs.push_back(eval(p));
    if (!std::isfinite(best_cost))
        throw optimization_error("minimize_cost: no finite cost on the bracket grid");

    size_t best_idx = static_cast<size_t>(
        std::min_element(costs.begin(), costs.end()) - costs.begin());
    double a = (best_idx == 0) ? grid.front() : grid[best_idx - 1];
    double b = (best_idx + 1 == grid.size()) ? grid.back() : grid[best_idx + 1];

    // Golden-section refinement on [a, b].
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    while (b - a > 1e-6) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = eval(x2);
        }
    }
    double p_star = (f1 <= f2) ? x1 : x2;
    double c_star = std::min(f1, f2);
    if (best_cost < c_star) {
        p_star = best_p;
        c_star = best_cost;
    }
    return FitResult{p_star, c_star, evaluations};
}

/// Merges test data into the interpolation data (sorted ascending by
/// imaginary part) and rebuilds the realization at the fitted parameter.
inline Realization refit_with_all_data(const Vec& p_star,
                                       const InterpolationData& interp,
                                       const TestData& test,
                                       const FunctionFamily& family) {
    InterpolationData merged = interp;
    for (Eigen::Index j = 0; j < test.count(); ++j) {
        merged.lambda.push_back(test.zeta[static_cast<size_t>(j)]);
        merged.theta.push_back(test.psi[static_cast<size_t>(j)]);
    }
    std::vector<size_t> order(merged.lambda.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return std::abs(merged.lambda[a].imag()) < std::abs(merged.lambda[b].imag());
    });
    InterpolationData sorted;
    for (size_t i : order) {
        sorted.lambda.push_back(merged.lambda[i]);
        sorted.theta.push_back(merged.theta[i]);
    }
    return structured_realization(sorted, family, p_star);
}

}  // namespace streal

#endif  // STREAL_PARAMFIT_HPP
