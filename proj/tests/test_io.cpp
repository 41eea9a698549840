#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <streal/io.hpp>
#include <streal/pipeline.hpp>

using namespace streal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("streal-io-" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << text;
}

}  // namespace

TEST_CASE("time series CSV round trip preserves every double exactly") {
    TempDir tmp;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    Vec u(64), y(64);
    for (Eigen::Index j = 0; j < 64; ++j) {
        u[j] = dist(rng);
        y[j] = dist(rng) * 1e-7;
    }
    TimeSeries ts(0.012345678901234567, u, y);
    std::string p = tmp.path("ts.csv");
    write_time_series_csv(ts, p);
    TimeSeries back = read_time_series_csv(p);
    CHECK(back.dt == ts.dt);
    REQUIRE(back.samples() == ts.samples());
    for (Eigen::Index j = 0; j < ts.samples(); ++j) {
        CHECK(back.u[j] == ts.u[j]);
        CHECK(back.y[j] == ts.y[j]);
    }

    // double write is byte identical (deterministic formatting)
    std::string p2 = tmp.path("ts2.csv");
    write_time_series_csv(ts, p2);
    CHECK(slurp(p) == slurp(p2));
}

TEST_CASE("time series CSV rejects bad headers and short files") {
    TempDir tmp;
    std::string p = tmp.path("bad.csv");
    spit(p, "time,in,out\n0,0,0\n1,0,0\n");
    CHECK_THROWS_AS(read_time_series_csv(p), error);
    spit(p, "t,u,y\n0,1,2\n");
    CHECK_THROWS_AS(read_time_series_csv(p), error);
    CHECK_THROWS_AS(read_time_series_csv(tmp.path("absent.csv")), error);
}

TEST_CASE("transfer estimate round trip including the metadata sidecar") {
    TempDir tmp;
    TransferEstimate est;
    est.k = {1, 3, 10};
    est.values = CVec(3);
    est.values << Complex(1.25e-3, -7.5), Complex(0.0, 1e-17), Complex(-2.0, 3.0);
    est.t_f = 1e4;
    est.dt = 5e-3;
    est.j_min = 1500000;
    est.threshold = 1e-10;
    std::string p = tmp.path("est.csv");
    write_transfer_estimate(est, p);
    TransferEstimate back = read_transfer_estimate(p);
    CHECK(back.k == est.k);
    CHECK(back.t_f == est.t_f);
    CHECK(back.dt == est.dt);
    CHECK(back.j_min == est.j_min);
    CHECK(back.threshold == est.threshold);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(back.values[i] == est.values[i]);
        CHECK(back.omega(i) == est.omega(i));
    }

    // row count must match the k index list in the sidecar
    std::string body = slurp(p);
    spit(p, body + "9.9,1,1\n");
    CHECK_THROWS_AS(read_transfer_estimate(p), error);
}

TEST_CASE("realization JSON round trip reproduces the transfer function") {
    TempDir tmp;
    InterpolationData data;
    StructuredSystem truth = make_delay_benchmark(6, 1.0, 0.01, 5.0);
    for (double w : {0.05, 0.3, 1.7})
        {
            data.lambda.emplace_back(0.0, w);
            data.theta.push_back(truth.transfer(Complex(0.0, w)));
        }
    Vec p(1);
    p[0] = 1.0;
    Realization rz = structured_realization(data, make_family("delay"), p);
    REQUIRE(rz.certified_real);
    std::string path = tmp.path("real.json");
    write_realization(rz, path);
    Realization back = read_realization(path);
    CHECK(back.order() == rz.order());
    CHECK(back.pivot_index == rz.pivot_index);
    CHECK(back.rank_tol == rz.rank_tol);
    CHECK(back.source_digest == rz.source_digest);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> im(0.05, 5.0);
    for (int trial = 0; trial < 10; ++trial) {
        Complex s(0.0, im(rng));
        Complex a = rz.transfer(s);
        Complex b = back.transfer(s);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }

    // an uncertified realization must not serialize
    Realization fake = rz;
    fake.certified_real = false;
    CHECK_THROWS_AS(write_realization(fake, tmp.path("nope.json")), realness_error);

    // double write is byte identical
    std::string path2 = tmp.path("real2.json");
    write_realization(rz, path2);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("cost sweep CSV records failures with an inf sentinel") {
    TempDir tmp;
    Vec p(1);
    p[0] = 0.75;
    CostSample good{p, 1.5e-3, true, ""};
    CostSample bad{p, std::numeric_limits<double>::infinity(), false, "boom"};
    std::string path = tmp.path("sweep.csv");
    write_cost_samples({good, bad}, path);
    std::string body = slurp(path);
    CHECK(body.rfind("p,cost,status\n", 0) == 0);
    CHECK(body.find(",ok\n") != std::string::npos);
    CHECK(body.find("inf,failed\n") != std::string::npos);
}

TEST_CASE("fit result JSON is parseable and faithful") {
    TempDir tmp;
    FitResult fit{1.0050465843002271, 1.6842771620862032e-4, 48};
    std::string path = tmp.path("fit.json");
    write_fit_result(fit, path);
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("p_star").get<double>() == fit.p_star);
    CHECK(j.at("cost").get<double>() == fit.cost);
    CHECK(j.at("evaluations").get<int>() == fit.evaluations);
}

TEST_CASE("pipeline config parsing") {
    TempDir tmp;
    std::string path = tmp.path("run.cfg");
    spit(path,
         "# comment line\n"
         "model = benchmark\n"
         "benchmark.N = 8   # trailing comment\n"
         "benchmark.tau = 2.5\n"
         "param.lo = 0.8\n"
         "param.hi = 1.2\n"
         "interp.t_f = 100\n"
         "interp.dt = 0.01\n"
         "interp.f_min = 0.01\n"
         "interp.f_max = 1\n"
         "interp.r = 4\n"
         "\n");
    PipelineConfig cfg = parse_config_file(path);
    CHECK(cfg.model == "benchmark");
    CHECK(cfg.bench_n == 8);
    CHECK(cfg.bench_tau == 2.5);
    CHECK(cfg.have_bounds);
    CHECK(cfg.param_lo == 0.8);
    CHECK(cfg.param_hi == 1.2);
    CHECK(cfg.interp.t_f == 100.0);
    CHECK(cfg.interp.r == 4);

    spit(path, "mystery.key = 1\n");
    CHECK_THROWS_AS(parse_config_file(path), domain_error);
    spit(path, "no equals sign here\n");
    CHECK_THROWS_AS(parse_config_file(path), error);
}
