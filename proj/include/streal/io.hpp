#ifndef STREAL_IO_HPP
#define STREAL_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "streal/lstfe.hpp"
#include "streal/paramfit.hpp"
#include "streal/realize.hpp"
#include "streal/time_series.hpp"
#include "streal/types.hpp"

namespace streal {

namespace detail {
inline std::string json_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s = buf;
    // Bare integers would parse as such; keep them valid JSON numbers either way.
    return s;
}
}  // namespace detail

/// Writes `omega,re,im` CSV (positive frequencies only) plus a metadata JSON
/// sidecar at path + ".json".
inline void write_transfer_estimate(const TransferEstimate& est,
                                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "omega,re,im\n";
    for (Eigen::Index i = 0; i < est.count(); ++i)
        out << detail::format_full(est.omega(i)) << ','
            << detail::format_full(est.value(i).real()) << ','
            << detail::format_full(est.value(i).imag()) << '\n';

    std::ofstream meta(path + ".json", std::ios::binary);
    if (!meta) throw error("cannot open '" + path + ".json' for writing");
    meta << "{\n  \"t_f\": " << detail::json_number(est.t_f)
         << ",\n  \"dt\": " << detail::json_number(est.dt)
         << ",\n  \"j_min\": " << est.j_min
         << ",\n  \"threshold\": " << detail::json_number(est.threshold)
         << ",\n  \"k\": [";
    for (size_t i = 0; i < est.k.size(); ++i) meta << (i ? ", " : "") << est.k[i];
    meta << "]\n}\n";
}

inline TransferEstimate read_transfer_estimate(const std::string& path) {
    std::ifstream meta_in(path + ".json");
    if (!meta_in) throw error("cannot open '" + path + ".json' for reading");
    nlohmann::json meta = nlohmann::json::parse(meta_in);

    TransferEstimate est;
    est.t_f = meta.at("t_f").get<double>();
    est.dt = meta.at("dt").get<double>();
    est.j_min = meta.at("j_min").get<Eigen::Index>();
    est.threshold = meta.at("threshold").get<double>();
    for (const auto& k : meta.at("k")) est.k.push_back(k.get<Eigen::Index>());

    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line) || line.rfind("omega,re,im", 0) != 0)
        throw error("'" + path + "': expected header omega,re,im");
    std::vector<Complex> values;
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
        values.emplace_back(vals[1], vals[2]);
    }
    if (values.size() != est.k.size())
        throw error("'" + path + "': row count does not match the k index list");
    est.values.resize(static_cast<Eigen::Index>(values.size()));
    for (size_t i = 0; i < values.size(); ++i)
        est.values[static_cast<Eigen::Index>(i)] = values[i];
    return est;
}

/// Realization JSON with dense row-major real matrices and 17-digit numbers.
/// Only certified-real realizations are serializable.
inline void write_realization(const Realization& rz, const std::string& path) {
    if (!rz.certified_real)
        throw realness_error("write_realization: realization is not certified real");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    const Eigen::Index n = rz.order();
    const int K = rz.system.family().size();

    auto write_row_major = [&](const CMat& m) {
        out << '[';
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (i + j > 0) out << ", ";
                out << detail::json_number(m(i, j).real());
            }
        out << ']';
    };

    out << "{\n  \"family\": \"" << rz.system.family().name() << "\",\n"
        << "  \"parameters\": [";
    for (Eigen::Index i = 0; i < rz.system.parameter().size(); ++i)
        out << (i ? ", " : "") << detail::json_number(rz.system.parameter()[i]);
    out << "],\n  \"n\": " << n << ",\n  \"A\": [";
    for (int k = 0; k < K; ++k) {
        if (k) out << ", ";
        write_row_major(rz.system.matrix(k));
    }
    out << "],\n  \"B\": ";
    write_row_major(rz.system.b());
    out << ",\n  \"C\": ";
    write_row_major(rz.system.c());
    out << ",\n  \"provenance\": {\"source\": \"" << rz.source_digest
        << "\", \"pivot_index\": " << rz.pivot_index
        << ", \"tolerance\": " << detail::json_number(rz.rank_tol) << "}\n}\n";
}

inline Realization read_realization(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "' for reading");
    nlohmann::json j = nlohmann::json::parse(in);

    std::string family_name = j.at("family").get<std::string>();
    Vec p(static_cast<Eigen::Index>(j.at("parameters").size()));
    for (Eigen::Index i = 0; i < p.size(); ++i)
        p[i] = j.at("parameters")[static_cast<size_t>(i)].get<double>();
    FunctionFamily family = make_family(family_name);
    auto n = j.at("n").get<Eigen::Index>();

    auto read_matrix = [&](const nlohmann::json& arr, Eigen::Index rows,
                           Eigen::Index cols) {
        if (static_cast<Eigen::Index>(arr.size()) != rows * cols)
            throw error("'" + path + "': matrix entry count mismatch");
        CMat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index c = 0; c < cols; ++c)
                m(i, c) = arr[static_cast<size_t>(i * cols + c)].get<double>();
        return m;
    };

    std::vector<CMat> matrices;
    for (const auto& arr : j.at("A")) matrices.push_back(read_matrix(arr, n, n));
    CMat b = read_matrix(j.at("B"), n, 1);
    CMat c = read_matrix(j.at("C"), 1, n);

    Realization rz{StructuredSystem(std::move(matrices), b.col(0), c.row(0),
                                    std::move(family), p)};
    rz.certified_real = true;
    if (j.contains("provenance")) {
        const auto& prov = j.at("provenance");
        rz.source_digest = prov.value("source", std::string());
        rz.pivot_index = prov.value("pivot_index", Eigen::Index(0));
        rz.rank_tol = prov.value("tolerance", 0.0);
    }
    return rz;
}

/// Cost sweep CSV: `p,cost,status` with status ok|failed.
inline void write_cost_samples(const std::vector<CostSample>& samples,
                               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "p,cost,status\n";
    for (const auto& s : samples) {
        out << detail::format_full(s.parameter.size() ? s.parameter[0] : 0.0) << ',';
        if (s.success)
            out << detail::format_full(s.cost) << ",ok\n";
        else
            out << "inf,failed\n";
    }
}

inline void write_fit_result(const FitResult& fit, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open '" + path + "' for writing");
    out << "{\n  \"p_star\": " << detail::json_number(fit.p_star)
        << ",\n  \"cost\": " << detail::json_number(fit.cost)
        << ",\n  \"evaluations\": " << fit.evaluations << "\n}\n";
}

}  // namespace streal

#endif  // STREAL_IO_HPP
