// Command-line front end for the structured-realization pipeline.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "streal/delay_integrator.hpp"
#include "streal/io.hpp"
#include "streal/pipeline.hpp"

namespace fs = std::filesystem;
using namespace streal;

namespace {

struct BenchmarkFlags {
    int n = 12;
    double tau = 1.0;
    double zeta = 0.01;
    double nu = 5.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--N", n, "benchmark order");
        cmd->add_option("--tau", tau, "benchmark delay time");
        cmd->add_option("--zeta", zeta, "benchmark damping parameter");
        cmd->add_option("--nu", nu, "benchmark diagonal shift");
    }

    StructuredSystem build() const { return make_delay_benchmark(n, tau, zeta, nu); }
};

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streal: structured realizations of LTI systems from "
                 "input/output time series"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate",
                                   "simulate the benchmark delay model and write a "
                                   "t,u,y time series");
    BenchmarkFlags sim_bench;
    sim_bench.attach(sim);
    double sim_tf = 10.0, sim_dt = 1e-3, sim_fmin = 0.0, sim_fmax = 0.0;
    Eigen::Index sim_r = 0;
    int sim_input = 0;
    std::string sim_out;
    sim->add_option("--t-f", sim_tf, "final time")->required();
    sim->add_option("--dt", sim_dt, "time step")->required();
    sim->add_option("--f-min", sim_fmin, "sparse input: lowest frequency");
    sim->add_option("--f-max", sim_fmax, "sparse input: highest frequency");
    sim->add_option("--r", sim_r, "sparse input: requested frequency count");
    sim->add_option("--input", sim_input, "validation input 1|2|3 instead of a sparse input");
    sim->add_option("--out", sim_out, "output directory")->required();

    // --- estimate ---
    auto* est = app.add_subcommand("estimate",
                                   "least-squares transfer function estimate from a "
                                   "time-series CSV");
    std::string est_data, est_out;
    double est_fmin = 0.0, est_fmax = 0.0, est_fraction = 0.75,
           est_threshold = kDefaultSvdThreshold;
    Eigen::Index est_r = 0;
    est->add_option("--data", est_data, "time-series CSV (t,u,y)")->required();
    est->add_option("--f-min", est_fmin, "lowest requested frequency")->required();
    est->add_option("--f-max", est_fmax, "highest requested frequency")->required();
    est->add_option("--r", est_r, "requested frequency count")->required();
    est->add_option("--j-min-fraction", est_fraction,
                    "fraction of the series used for the least-squares fit");
    est->add_option("--threshold", est_threshold, "relative SVD truncation threshold");
    est->add_option("--out", est_out, "output directory")->required();

    // --- realize ---
    auto* rea = app.add_subcommand("realize",
                                   "structured realization interpolating estimates");
    std::string rea_est, rea_family = "delay", rea_out;
    double rea_param = 1.0, rea_rank_tol = 1e-10;
    Eigen::Index rea_pivot = 0;
    rea->add_option("--estimates", rea_est, "estimates CSV (omega,re,im)")->required();
    rea->add_option("--family", rea_family, "coefficient family name");
    rea->add_option("--param", rea_param, "fixed structural parameter value");
    rea->add_option("--pivot", rea_pivot, "truncation pivot index (0-based)");
    rea->add_option("--rank-tol", rea_rank_tol, "relative rank tolerance");
    rea->add_option("--out", rea_out, "output directory")->required();

    // --- fit ---
    auto* fit = app.add_subcommand("fit", "fit the free structural parameter to test data");
    std::string fit_interp, fit_test, fit_family = "delay", fit_out;
    double fit_lo = 0.0, fit_hi = 0.0, fit_start = 0.0;
    bool fit_round = false;
    fit->add_option("--interp", fit_interp, "interpolation estimates CSV")->required();
    fit->add_option("--test", fit_test, "test estimates CSV")->required();
    fit->add_option("--family", fit_family, "coefficient family name");
    fit->add_option("--lo", fit_lo, "lower parameter bound")->required();
    fit->add_option("--hi", fit_hi, "upper parameter bound")->required();
    fit->add_option("--start", fit_start, "start value")->required();
    fit->add_flag("--round", fit_round, "round the fitted value to 3 decimals");
    fit->add_option("--out", fit_out, "output directory")->required();

    // --- validate ---
    auto* val = app.add_subcommand("validate",
                                   "time-domain comparison of a realization against "
                                   "the benchmark model");
    BenchmarkFlags val_bench;
    val_bench.attach(val);
    std::string val_rz, val_out;
    std::vector<int> val_inputs = {1, 2, 3};
    double val_tf = 10.0, val_dt = 1e-3;
    val->add_option("--realization", val_rz, "realization JSON")->required();
    val->add_option("--input", val_inputs, "validation inputs (1|2|3)");
    val->add_option("--t-f", val_tf, "validation horizon");
    val->add_option("--dt", val_dt, "validation time step");
    val->add_option("--out", val_out, "output directory")->required();

    // --- pipeline ---
    auto* pip = app.add_subcommand("pipeline", "run the configured pipeline end to end");
    std::string pip_config, pip_out;
    std::vector<std::string> pip_overrides;
    pip->add_option("--config", pip_config, "flat key=value config file")->required();
    pip->add_option("--set", pip_overrides, "config overrides key=value");
    pip->add_option("--out", pip_out, "output directory")->required();

    // --- reproduce-paper ---
    auto* rep = app.add_subcommand("reproduce-paper",
                                   "run the benchmark study end to end");
    std::string rep_out;
    bool rep_round = false;
    rep->add_flag("--round", rep_round, "round the fitted delay to 3 decimals");
    rep->add_option("--out", rep_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            fs::create_directories(sim_out);
            StructuredSystem bench = sim_bench.build();
            std::function<double(double)> u;
            if (sim_input != 0) {
                u = [=](double t) { return validation_input(sim_input, t); };
            } else {
                if (!(sim_fmin > 0.0) || !(sim_fmax > 0.0) || sim_r < 1)
                    throw domain_error("simulate: need --input or --f-min/--f-max/--r");
                FrequencySelection sel =
                    select_frequencies(sim_fmin, sim_fmax, sim_r, sim_tf, sim_dt);
                auto input = std::make_shared<SparseInputSignal>(sel.n, sel.k, sim_tf);
                u = [input](double t) { return input->continuous(t); };
            }
            TimeSeries ts = simulate_delay(bench, u, sim_tf, sim_dt);
            write_time_series_csv(ts, join(sim_out, "timeseries.csv"));
            std::cout << "wrote " << join(sim_out, "timeseries.csv") << "\n";
        } else if (*est) {
            fs::create_directories(est_out);
            TimeSeries ts = read_time_series_csv(est_data);
            FrequencySelection sel = select_frequencies(est_fmin, est_fmax, est_r,
                                                        ts.final_time(), ts.dt);
            TransferEstimate e = lstfe_pipeline(ts, sel, est_fraction, est_threshold);
            write_transfer_estimate(e, join(est_out, "estimates.csv"));
            std::cout << "wrote " << join(est_out, "estimates.csv") << " ("
                      << e.count() << " frequencies)\n";
        } else if (*rea) {
            fs::create_directories(rea_out);
            TransferEstimate e = read_transfer_estimate(rea_est);
            FunctionFamily family = make_family(rea_family);
            Vec p(family.parameter_dimension());
            for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rea_param;
            Realization rz = structured_realization(e, family, p, rea_pivot, rea_rank_tol);
            write_realization(rz, join(rea_out, "realization.json"));
            InterpolationData closed =
                close_under_conjugation(make_interpolation_data(e));
            std::cout << "wrote " << join(rea_out, "realization.json") << " (order "
                      << rz.order() << ", max interpolation deviation "
                      << verify_interpolation(rz, closed).max_deviation << ")\n";
        } else if (*fit) {
            fs::create_directories(fit_out);
            InterpolationData interp =
                make_interpolation_data(read_transfer_estimate(fit_interp));
            TestData test = make_test_data(read_transfer_estimate(fit_test));
            FunctionFamily family = make_family(fit_family, {{fit_lo, fit_hi}});
            std::vector<Vec> grid;
            for (int i = 0; i < 41; ++i) {
                Vec p(1);
                p[0] = fit_lo + (fit_hi - fit_lo) * i / 40.0;
                grid.push_back(p);
            }
            write_cost_samples(sample_cost(grid, interp, test, family),
                               join(fit_out, "cost_sweep.csv"));
            FitResult result = minimize_cost(fit_lo, fit_hi, fit_start, interp, test,
                                             family);
            write_fit_result(result, join(fit_out, "fit.json"));
            double p_use = fit_round ? std::round(result.p_star * 1000.0) / 1000.0
                                     : result.p_star;
            Vec p_star(1);
            p_star[0] = p_use;
            Realization rz = refit_with_all_data(p_star, interp, test, family);
            write_realization(rz, join(fit_out, "realization_fitted.json"));
            std::cout << "p* = " << result.p_star << ", cost = " << result.cost
                      << " (" << result.evaluations << " evaluations)\n";
        } else if (*val) {
            fs::create_directories(val_out);
            StructuredSystem bench = val_bench.build();
            Realization rz = read_realization(val_rz);
            std::vector<ValidationRow> rows;
            for (int which : val_inputs) {
                auto u = [=](double t) { return validation_input(which, t); };
                TimeSeries truth = simulate_delay(bench, u, val_tf, val_dt);
                TimeSeries rom = simulate_delay(rz.system, u, val_tf, val_dt);
                rows.push_back({which, "realization",
                                error_metrics(truth.y, rom.y, truth.u, truth.dt)});
                detail::write_overlay_csv(
                    join(val_out, "validate_u" + std::to_string(which) + ".csv"),
                    truth, &rom.y, nullptr);
            }
            detail::write_validation_csv(rows, join(val_out, "validation.csv"));
            for (const auto& row : rows)
                std::cout << 'u' << row.input << ": |u|_L2 = " << row.metrics.u_l2
                          << ", Linf ratio = " << row.metrics.linf_ratio
                          << ", L2 ratio = " << row.metrics.l2_ratio << "\n";
        } else if (*pip) {
            PipelineConfig cfg = parse_config_file(pip_config);
            for (const auto& ov : pip_overrides) {
                auto eq = ov.find('=');
                if (eq == std::string::npos)
                    throw domain_error("--set expects key=value, got '" + ov + "'");
                detail::set_config_key(cfg, ov.substr(0, eq), ov.substr(eq + 1));
            }
            cfg.out_dir = pip_out;
            run_pipeline(cfg);
            std::cout << "pipeline artifacts written to " << pip_out << "\n";
        } else if (*rep) {
            PipelineConfig cfg = reproduce_paper_config();
            cfg.round_parameter = rep_round;
            cfg.out_dir = rep_out;
            PipelineResult result = run_pipeline(cfg);
            if (result.fit)
                std::cout << "fitted delay tau* = " << result.fit->p_star
                          << ", cost = " << result.fit->cost << "\n";
            for (const auto& row : result.validation)
                std::cout << 'u' << row.input << " (" << row.realization
                          << "): Linf ratio = " << row.metrics.linf_ratio
                          << ", L2 ratio = " << row.metrics.l2_ratio << "\n";
            std::cout << "artifacts written to " << rep_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
