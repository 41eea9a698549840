#ifndef STREAL_PIPELINE_HPP
#define STREAL_PIPELINE_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "streal/delay_integrator.hpp"
#include "streal/io.hpp"
#include "streal/lstfe.hpp"
#include "streal/metrics.hpp"
#include "streal/paramfit.hpp"
#include "streal/realize.hpp"
#include "streal/signals.hpp"
#include "streal/structured_system.hpp"
#include "streal/time_series.hpp"
#include "streal/types.hpp"

namespace streal {

/// Parameters of one simulation/estimation run (interpolation or test).
struct RunParams {
    bool enabled = false;
    double t_f = 0.0;
    double dt = 0.0;
    double f_min = 0.0;
    double f_max = 0.0;
    Eigen::Index r = 0;
    double j_min_fraction = 0.75;
    double threshold = kDefaultSvdThreshold;
    std::string data_path;  // external time-series CSV; empty = simulate
};

struct PipelineConfig {
    std::string model = "benchmark";  // "benchmark" or "data"
    int bench_n = 12;
    double bench_tau = 1.0;
    double bench_zeta = 0.01;
    double bench_nu = 5.0;

    RunParams interp;
    RunParams test;

    std::string family = "delay";
    double param_value = 1.0;   // fixed parameter for the initial realization
    bool have_bounds = false;   // enables the fit stage (with test data)
    double param_lo = 0.0;
    double param_hi = 0.0;
    double param_start = 0.0;
    bool round_parameter = false;  // round the fitted value to 3 decimals

    std::vector<int> validation_inputs = {1, 2, 3};
    double validate_t_f = 10.0;
    double validate_dt = 1e-3;

    std::string out_dir;
};

/// Table-2 configuration of the benchmark study.
inline PipelineConfig reproduce_paper_config() {
    PipelineConfig cfg;
    cfg.interp.enabled = true;
    cfg.interp.t_f = 1e4;
    cfg.interp.dt = 5e-3;
    cfg.interp.f_min = 1e-4;
    cfg.interp.f_max = 1.0;
    cfg.interp.r = 10;
    cfg.test.enabled = true;
    cfg.test.t_f = 40.0;
    cfg.test.dt = 1e-5;
    cfg.test.f_min = std::pow(10.0, 0.3);
    cfg.test.f_max = 10.0;
    cfg.test.r = 6;
    cfg.have_bounds = true;
    cfg.param_lo = 0.9;
    cfg.param_hi = 1.1;
    cfg.param_start = 0.98;
    return cfg;
}

namespace detail {

inline void set_config_key(PipelineConfig& cfg, const std::string& key,
                           const std::string& value) {
    auto to_d = [&] { return std::stod(value); };
    auto to_i = [&] { return std::stoll(value); };
    auto run_key = [&](RunParams& run, const std::string& sub) -> bool {
        if (sub == "t_f") run.t_f = to_d();
        else if (sub == "dt") run.dt = to_d();
        else if (sub == "f_min") run.f_min = to_d();
        else if (sub == "f_max") run.f_max = to_d();
        else if (sub == "r") run.r = to_i();
        else if (sub == "j_min_fraction") run.j_min_fraction = to_d();
        else if (sub == "threshold") run.threshold = to_d();
        else if (sub == "data") run.data_path = value;
        else return false;
        run.enabled = true;
        return true;
    };

    if (key == "model") cfg.model = value;
    else if (key == "benchmark.N") cfg.bench_n = static_cast<int>(to_i());
    else if (key == "benchmark.tau") cfg.bench_tau = to_d();
    else if (key == "benchmark.zeta") cfg.bench_zeta = to_d();
    else if (key == "benchmark.nu") cfg.bench_nu = to_d();
    else if (key == "family") cfg.family = value;
    else if (key == "param.value") cfg.param_value = to_d();
    else if (key == "param.lo") { cfg.param_lo = to_d(); cfg.have_bounds = true; }
    else if (key == "param.hi") { cfg.param_hi = to_d(); cfg.have_bounds = true; }
    else if (key == "param.start") cfg.param_start = to_d();
    else if (key == "round") cfg.round_parameter = (value == "true" || value == "1");
    else if (key == "validate.t_f") cfg.validate_t_f = to_d();
    else if (key == "validate.dt") cfg.validate_dt = to_d();
    else if (key == "validate.inputs") {
        cfg.validation_inputs.clear();
        std::istringstream parts(value);
        std::string tok;
        while (std::getline(parts, tok, ','))
            if (!tok.empty()) cfg.validation_inputs.push_back(std::stoi(tok));
    } else if (key == "out") cfg.out_dir = value;
    else if (key.rfind("interp.", 0) == 0) {
        if (!run_key(cfg.interp, key.substr(7)))
            throw domain_error("unknown config key '" + key + "'");
    } else if (key.rfind("test.", 0) == 0) {
        if (!run_key(cfg.test, key.substr(5)))
            throw domain_error("unknown config key '" + key + "'");
    } else {
        throw domain_error("unknown config key '" + key + "'");
    }
}

}  // namespace detail

/// Flat key=value config file; '#' starts a comment line.
inline PipelineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open config '" + path + "'");
    PipelineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw error("config '" + path + "' line " + std::to_string(lineno) +
                        ": expected key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
        };
        detail::set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

struct ValidationRow {
    int input = 0;
    std::string realization;
    ErrorMetrics metrics;
};

struct PipelineResult {
    std::optional<TransferEstimate> interp_estimate;
    std::optional<TransferEstimate> test_estimate;
    std::optional<Realization> realization;
    std::optional<Realization> fitted_realization;
    std::optional<FitResult> fit;
    std::vector<ValidationRow> validation;
};

namespace detail {

inline TimeSeries obtain_time_series(const PipelineConfig& cfg, const RunParams& run,
                                     const FrequencySelection& sel,
                                     const std::string& out_path) {
    if (!run.data_path.empty()) return read_time_series_csv(run.data_path);
    if (cfg.model != "benchmark")
        throw domain_error("pipeline: model 'data' requires interp.data/test.data paths");
    StructuredSystem bench =
        make_delay_benchmark(cfg.bench_n, cfg.bench_tau, cfg.bench_zeta, cfg.bench_nu);
    SparseInputSignal input(sel.n, sel.k, run.t_f);
    TimeSeries ts = simulate_delay(
        bench, [&](double t) { return input.continuous(t); }, run.t_f, run.dt);
    write_time_series_csv(ts, out_path);
    return ts;
}

inline void write_validation_csv(const std::vector<ValidationRow>& rows,
                                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "input,realization,u_l2,linf_ratio,l2_ratio\n";
    for (const auto& row : rows)
        out << 'u' << row.input << ',' << row.realization << ','
            << format_full(row.metrics.u_l2) << ','
            << format_full(row.metrics.linf_ratio) << ','
            << format_full(row.metrics.l2_ratio) << '\n';
}

inline void write_overlay_csv(const std::string& path, const TimeSeries& reference,
                              const Vec* rom, const Vec* rom_fitted) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "t,u,y";
    if (rom) out << ",y_rom";
    if (rom_fitted) out << ",y_rom_fitted";
    out << '\n';
    for (Eigen::Index j = 0; j < reference.samples(); ++j) {
        out << format_full(static_cast<double>(j) * reference.dt) << ','
            << format_full(reference.u[j]) << ',' << format_full(reference.y[j]);
        if (rom) out << ',' << format_full((*rom)[j]);
        if (rom_fitted) out << ',' << format_full((*rom_fitted)[j]);
        out << '\n';
    }
}

inline void write_transfer_magnitude_csv(const std::string& path,
                                         const StructuredSystem* truth,
                                         const Realization* rom,
                                         const Realization* fitted, double omega_min,
                                         double omega_max, int points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "omega";
    if (truth) out << ",abs_h_true";
    if (rom) out << ",abs_h_rom";
    if (fitted) out << ",abs_h_rom_fitted";
    out << '\n';
    for (int i = 0; i < points; ++i) {
        double omega = omega_min * std::pow(omega_max / omega_min,
                                            static_cast<double>(i) / (points - 1));
        Complex s(0.0, omega);
        out << format_full(omega);
        if (truth) out << ',' << format_full(std::abs(truth->transfer(s)));
        if (rom) out << ',' << format_full(std::abs(rom->transfer(s)));
        if (fitted) out << ',' << format_full(std::abs(fitted->transfer(s)));
        out << '\n';
    }
}

template <typename Fn>
inline auto run_stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw error(std::string("stage '") + name + "' failed: " + e.what());
    }
}

}  // namespace detail

/// Runs the configured stages end to end, persisting every intermediate
/// artifact under cfg.out_dir. Returns the in-memory results for callers that
/// want to inspect them.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
    if (cfg.out_dir.empty()) throw domain_error("pipeline: output directory required");
    if (!cfg.interp.enabled)
        throw domain_error("pipeline: interpolation run configuration required");
    std::filesystem::create_directories(cfg.out_dir);
    auto path = [&](const std::string& name) {
        return (std::filesystem::path(cfg.out_dir) / name).string();
    };

    PipelineResult result;
    FunctionFamily family =
        cfg.have_bounds ? make_family(cfg.family, {{cfg.param_lo, cfg.param_hi}})
                        : make_family(cfg.family);

    // Estimation for each configured run.
    auto estimate_run = [&](const RunParams& run, const std::string& tag) {
        FrequencySelection sel;
        TimeSeries ts = detail::run_stage("simulate", [&] {
            TimeSeries inner = [&] {
                if (!run.data_path.empty()) return read_time_series_csv(run.data_path);
                FrequencySelection pre =
                    select_frequencies(run.f_min, run.f_max, run.r, run.t_f, run.dt);
                return detail::obtain_time_series(cfg, run, pre,
                                                  path(tag + "_timeseries.csv"));
            }();
            return inner;
        });
        sel = select_frequencies(run.f_min, run.f_max, run.r,
                                 ts.final_time(), ts.dt);
        return detail::run_stage("estimate", [&] {
            TransferEstimate est =
                lstfe_pipeline(ts, sel, run.j_min_fraction, run.threshold);
            write_transfer_estimate(est, path(tag + "_estimates.csv"));
            return est;
        });
    };

    result.interp_estimate = estimate_run(cfg.interp, "interp");
    if (cfg.test.enabled) result.test_estimate = estimate_run(cfg.test, "test");

    // Realization at the fixed parameter.
    InterpolationData interp_data = make_interpolation_data(*result.interp_estimate);
    Vec p_fixed(family.parameter_dimension());
    for (Eigen::Index i = 0; i < p_fixed.size(); ++i) p_fixed[i] = cfg.param_value;
    result.realization = detail::run_stage("realize", [&] {
        Realization rz = structured_realization(interp_data, family, p_fixed);
        write_realization(rz, path("realization.json"));
        return rz;
    });

    // Parameter fit against the test data.
    if (cfg.test.enabled && cfg.have_bounds) {
        TestData test_data = make_test_data(*result.test_estimate);
        detail::run_stage("fit", [&] {
            std::vector<Vec> grid;
            for (int i = 0; i < 41; ++i) {
                Vec p(1);
                p[0] = cfg.param_lo + (cfg.param_hi - cfg.param_lo) * i / 40.0;
                grid.push_back(p);
            }
            write_cost_samples(sample_cost(grid, interp_data, test_data, family),
                               path("cost_sweep.csv"));
            FitResult fit = minimize_cost(cfg.param_lo, cfg.param_hi, cfg.param_start,
                                          interp_data, test_data, family);
            result.fit = fit;
            write_fit_result(fit, path("fit.json"));
            double p_use = cfg.round_parameter
                               ? std::round(fit.p_star * 1000.0) / 1000.0
                               : fit.p_star;
            Vec p_star(1);
            p_star[0] = p_use;
            result.fitted_realization =
                refit_with_all_data(p_star, interp_data, test_data, family);
            write_realization(*result.fitted_realization,
                              path("realization_fitted.json"));
            return 0;
        });
    }

    // Time-domain validation against the benchmark model.
    if (cfg.model == "benchmark" && !cfg.validation_inputs.empty()) {
        detail::run_stage("validate", [&] {
            StructuredSystem bench = make_delay_benchmark(cfg.bench_n, cfg.bench_tau,
                                                          cfg.bench_zeta, cfg.bench_nu);
            for (int which : cfg.validation_inputs) {
                auto u = [&](double t) { return validation_input(which, t); };
                TimeSeries truth =
                    simulate_delay(bench, u, cfg.validate_t_f, cfg.validate_dt);
                std::optional<Vec> y_rom, y_fit;
                if (result.realization) {
                    TimeSeries rom = simulate_delay(result.realization->system, u,
                                                    cfg.validate_t_f, cfg.validate_dt);
                    y_rom = rom.y;
                    result.validation.push_back(
                        {which, "fixed",
                         error_metrics(truth.y, rom.y, truth.u, truth.dt)});
                }
                if (result.fitted_realization) {
                    TimeSeries rom = simulate_delay(result.fitted_realization->system,
                                                    u, cfg.validate_t_f,
                                                    cfg.validate_dt);
                    y_fit = rom.y;
                    result.validation.push_back(
                        {which, "fitted",
                         error_metrics(truth.y, rom.y, truth.u, truth.dt)});
                }
                detail::write_overlay_csv(
                    path("validate_u" + std::to_string(which) + ".csv"), truth,
                    y_rom ? &*y_rom : nullptr, y_fit ? &*y_fit : nullptr);
            }
            detail::write_validation_csv(result.validation, path("validation.csv"));
            detail::write_transfer_magnitude_csv(
                path("transfer_magnitude.csv"), &bench,
                result.realization ? &*result.realization : nullptr,
                result.fitted_realization ? &*result.fitted_realization : nullptr,
                1e-4, 20.0, 200);
            return 0;
        });
    }
    return result;
}

}  // namespace streal

#endif  // STREAL_PIPELINE_HPP
