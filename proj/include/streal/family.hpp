#ifndef STREAL_FAMILY_HPP
#define STREAL_FAMILY_HPP

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "streal/types.hpp"

namespace streal {

/// A family of K scalar coefficient functions h_k(s, p) of a complex
/// frequency s and a real parameter vector p, together with box bounds for
/// the parameters. The transfer-function pencil of a structured system is
/// sum_k h_k(s, p) * A_k.
class FunctionFamily {
public:
    using Coefficient = std::function<Complex(Complex, const Vec&)>;

    FunctionFamily(std::string name, std::vector<Coefficient> coefficients,
                   std::vector<std::pair<double, double>> bounds)
        : name_(std::move(name)),
          coefficients_(std::move(coefficients)),
          bounds_(std::move(bounds)) {
        if (coefficients_.empty())
            throw domain_error("FunctionFamily: need at least one coefficient function");
        for (const auto& [lo, hi] : bounds_)
            if (!(lo <= hi))
                throw domain_error("FunctionFamily: invalid parameter bounds");
    }

    const std::string& name() const { return name_; }
    int size() const { return static_cast<int>(coefficients_.size()); }
    int parameter_dimension() const { return static_cast<int>(bounds_.size()); }
    const std::vector<std::pair<double, double>>& bounds() const { return bounds_; }

    bool within_bounds(const Vec& p) const {
        if (p.size() != parameter_dimension()) return false;
        for (int i = 0; i < p.size(); ++i)
            if (p[i] < bounds_[i].first || p[i] > bounds_[i].second) return false;
        return true;
    }

    void check_parameter(const Vec& p) const {
        if (!within_bounds(p))
            throw domain_error("FunctionFamily '" + name_ + "': parameter out of bounds");
    }

    /// Evaluates all K coefficient functions at (s, p).
    CVec evaluate(Complex s, const Vec& p) const {
        check_parameter(p);
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw domain_error("FunctionFamily: non-finite frequency");
        CVec out(size());
        for (int k = 0; k < size(); ++k) {
            Complex v = coefficients_[k](s, p);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw evaluation_error("FunctionFamily '" + name_ +
                                       "': coefficient " + std::to_string(k + 1) +
                                       " evaluated to a non-finite value");
            out[k] = v;
        }
        return out;
    }

private:
    std::string name_;
    std::vector<Coefficient> coefficients_;
    std::vector<std::pair<double, double>> bounds_;
};

inline CVec eval_family(const FunctionFamily& family, Complex s, const Vec& p) {
    return family.evaluate(s, p);
}

/// Built-in families selected by name: "standard" {s, -1}, "second-order"
/// {s^2, s, 1}, "delay" {s, -1, -e^{-tau s}} with p = (tau), and
/// "neutral-delay" {s, 1, s e^{-tau s}} with p = (tau).
inline FunctionFamily make_family(const std::string& name,
                                  std::vector<std::pair<double, double>> bounds = {}) {
    auto default_tau_bounds = [&]() -> std::vector<std::pair<double, double>> {
        if (!bounds.empty()) return bounds;
        return {{1e-6, 1e6}};
    };
    if (name == "standard") {
        if (!bounds.empty()) throw domain_error("family 'standard' has no parameters");
        return FunctionFamily(name,
                              {[](Complex s, const Vec&) { return s; },
                               [](Complex, const Vec&) { return Complex(-1.0); }},
                              {});
    }
    if (name == "second-order") {
        if (!bounds.empty()) throw domain_error("family 'second-order' has no parameters");
        return FunctionFamily(name,
                              {[](Complex s, const Vec&) { return s * s; },
                               [](Complex s, const Vec&) { return s; },
                               [](Complex, const Vec&) { return Complex(1.0); }},
                              {});
    }
    if (name == "delay") {
        return FunctionFamily(name,
                              {[](Complex s, const Vec&) { return s; },
                               [](Complex, const Vec&) { return Complex(-1.0); },
                               [](Complex s, const Vec& p) { return -std::exp(-p[0] * s); }},
                              default_tau_bounds());
    }
    if (name == "neutral-delay") {
        return FunctionFamily(name,
                              {[](Complex s, const Vec&) { return s; },
                               [](Complex, const Vec&) { return Complex(1.0); },
                               [](Complex s, const Vec& p) { return s * std::exp(-p[0] * s); }},
                              default_tau_bounds());
    }
    throw domain_error("unknown family '" + name + "'");
}

}  // namespace streal

#endif  // STREAL_FAMILY_HPP
