#ifndef STREAL_TIME_SERIES_HPP
#define STREAL_TIME_SERIES_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "streal/types.hpp"

namespace streal {

/// Uniform-grid samples of a scalar input and scalar output, t_j = j * dt.
struct TimeSeries {
    double dt = 0.0;
    Vec u;
    Vec y;

    TimeSeries() = default;
    TimeSeries(double step, Vec input, Vec output)
        : dt(step), u(std::move(input)), y(std::move(output)) {
        if (!(dt > 0.0)) throw domain_error("TimeSeries: step must be positive");
        if (u.size() != y.size() || u.size() < 2)
            throw domain_error("TimeSeries: u and y need equal length >= 2");
    }

    /// Number of samples, N + 1.
    Eigen::Index samples() const { return u.size(); }
    /// Grid count N with t_f = N * dt.
    Eigen::Index steps() const { return u.size() - 1; }
    double final_time() const { return static_cast<double>(steps()) * dt; }
};

namespace detail {
inline std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace detail

/// Writes `t,u,y` CSV with 17-digit round-trip precision and LF endings.
inline void write_time_series_csv(const TimeSeries& ts, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "t,u,y\n";
    for (Eigen::Index j = 0; j < ts.samples(); ++j) {
        out << detail::format_full(static_cast<double>(j) * ts.dt) << ','
            << detail::format_full(ts.u[j]) << ',' << detail::format_full(ts.y[j])
            << '\n';
    }
}

inline TimeSeries read_time_series_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,u,y", 0) != 0)
        throw error("'" + path + "': expected header t,u,y");
    std::vector<double> ts, us, ys;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(row, field, ','))
                throw error("'" + path + "': malformed row '" + line + "'");
            vals[i] = std::stod(field);
        }
        ts.push_back(vals[0]);
        us.push_back(vals[1]);
        ys.push_back(vals[2]);
    }
    if (ts.size() < 2) throw error("'" + path + "': need at least 2 samples");
    double dt = ts[1] - ts[0];
    Vec u = Eigen::Map<Vec>(us.data(), static_cast<Eigen::Index>(us.size()));
    Vec y = Eigen::Map<Vec>(ys.data(), static_cast<Eigen::Index>(ys.size()));
    return TimeSeries(dt, std::move(u), std::move(y));
}

}  // namespace streal

#endif  // STREAL_TIME_SERIES_HPP
