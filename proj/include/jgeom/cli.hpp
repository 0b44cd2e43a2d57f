#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "io.hpp"
#include "manifold.hpp"

namespace jgeom::cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv };

struct RunConfig {
    Tolerances tolerances;
    std::size_t sample_count = 11;
    OutputFormat format = OutputFormat::json;

    bool valid() const { return tolerances.valid() && sample_count >= 2; }
};

/// Result of one command: the results document plus its CSV rendering.
struct Report {
    Json doc;
    std::string csv;

    std::string render(OutputFormat f) const { return f == OutputFormat::json ? doc.dump(2) + "\n" : csv; }
};

inline int exit_code_for(ErrorClass cls)
{
    switch (cls) {
    case ErrorClass::validation: return 2;
    case ErrorClass::precondition: return 3;
    case ErrorClass::numerical: return 4;
    }
    return 4;
}

inline OutputFormat parse_format(const std::string& s)
{
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw ParseError("unknown format '" + s + "' (expected json or csv)");
}

/// Overlays keys of a jgconfig.json document onto cfg. Unknown keys are rejected.
inline RunConfig apply_config(const Json& j, RunConfig cfg)
{
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        auto number = [&]() {
            if (!value.is_number()) throw ParseError("config key '" + key + "' must be a number");
            return value.get<double>();
        };
        if (key == "tol_herm") cfg.tolerances.tol_herm = number();
        else if (key == "tol_proj") cfg.tolerances.tol_proj = number();
        else if (key == "tol_cluster") cfg.tolerances.tol_cluster = number();
        else if (key == "tol_invert") cfg.tolerances.tol_invert = number();
        else if (key == "tol_eq") cfg.tolerances.tol_eq = number();
        else if (key == "samples") {
            if (!value.is_number_integer() || value.get<long long>() < 2)
                throw ParseError("config key 'samples' must be an integer ≥ 2");
            cfg.sample_count = value.get<std::size_t>();
        } else if (key == "format") {
            if (!value.is_string()) throw ParseError("config key 'format' must be a string");
            cfg.format = parse_format(value.get<std::string>());
        } else {
            throw ParseError("unknown config key '" + key + "'");
        }
    }
    if (!cfg.valid()) throw ParseError("config produces invalid tolerances");
    return cfg;
}

inline RunConfig load_config(const std::string& path, RunConfig cfg)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config " + path);
    try {
        return apply_config(Json::parse(in), cfg);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid config JSON: ") + e.what());
    }
}

namespace detail {

inline std::string fmt(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline Json tolerances_json(const Tolerances& t)
{
    Json j;
    j["tol_herm"] = t.tol_herm;
    j["tol_proj"] = t.tol_proj;
    j["tol_cluster"] = t.tol_cluster;
    j["tol_invert"] = t.tol_invert;
    j["tol_eq"] = t.tol_eq;
    return j;
}

inline Json skeleton(const std::string& command, Json inputs, const RunConfig& cfg)
{
    Json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["tolerances"] = tolerances_json(cfg.tolerances);
    j["result"] = Json::object();
    j["residuals"] = Json::object();
    return j;
}

inline void csv_matrix_rows(std::ostringstream& os, const std::string& prefix, const CMat& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k)
            os << prefix << i << ',' << k << ',' << fmt(m(i, k).real()) << ',' << fmt(m(i, k).imag()) << '\n';
}

inline HermMat read_hermitian(const std::string& path, const RunConfig& cfg)
{
    return HermMat::from(io::read_matrix(path), cfg.tolerances.tol_herm);
}

inline Projection read_projection(const std::string& path, const RunConfig& cfg)
{
    return Projection::from(read_hermitian(path, cfg), cfg.tolerances);
}

inline double op_distance(const HermMat& x, const HermMat& y) { return op_norm((x - y).mat()); }

} // namespace detail

/// Hermiticity, idempotency residual, rank and eigenvalue extrema of one matrix file.
inline Report cmd_check(const std::string& file, const RunConfig& cfg)
{
    const HermMat m = detail::read_hermitian(file, cfg);
    const auto check = is_projection(m, cfg.tolerances);
    const auto eig = herm_eig(m);

    Report r;
    r.doc = detail::skeleton("check", Json{{"file", file}}, cfg);
    auto& res = r.doc["result"];
    res["hermitian"] = true;
    res["projection"] = check.is_projection;
    res["rank"] = check.rank;
    res["dimension"] = m.dim();
    res["eigenvalue_min"] = eig.values.back();
    res["eigenvalue_max"] = eig.values.front();
    res["summary"] = check.is_projection ? "projection, rank " + std::to_string(check.rank) : std::string("not a projection");
    r.doc["residuals"]["idempotency"] = check.residual;

    std::ostringstream os;
    os << "key,value\n"
       << "projection," << (check.is_projection ? "true" : "false") << '\n'
       << "rank," << check.rank << '\n'
       << "dimension," << m.dim() << '\n'
       << "eigenvalue_min," << detail::fmt(eig.values.back()) << '\n'
       << "eigenvalue_max," << detail::fmt(eig.values.front()) << '\n'
       << "idempotency_residual," << detail::fmt(check.residual) << '\n';
    r.csv = os.str();
    return r;
}

/// Writes E₁(a)x, E½(a)x, E₀(a)x to <prefix>_E1.json, <prefix>_Ehalf.json, <prefix>_E0.json.
inline Report cmd_peirce(const std::string& file_a, const std::string& file_x, const std::string& out_prefix,
                         const RunConfig& cfg)
{
    const Projection a = detail::read_projection(file_a, cfg);
    const HermMat x = detail::read_hermitian(file_x, cfg);
    require_same_dim(a.herm(), x, "peirce");

    const struct {
        const char* name;
        PeirceIndex k;
    } parts[] = {{"E1", PeirceIndex::one}, {"Ehalf", PeirceIndex::half}, {"E0", PeirceIndex::zero}};

    Report r;
    r.doc = detail::skeleton("peirce", Json{{"a", file_a}, {"x", file_x}}, cfg);
    auto& res = r.doc["result"];
    res["rank"] = a.rank();
    std::ostringstream os;
    os << "component,row,col,re,im\n";
    HermMat sum = HermMat::zeros(x.dim());
    for (const auto& part : parts) {
        const HermMat e = peirce(a, part.k, x);
        sum += e;
        const std::string path = out_prefix.empty() ? std::string() : out_prefix + "_" + part.name + ".json";
        if (!path.empty()) io::write_matrix(path, e.mat());
        res["components"][part.name] = {{"peirce_index", to_string(part.k)}, {"file", path}, {"matrix", io::to_json(e.mat())}};
        detail::csv_matrix_rows(os, std::string(part.name) + ",", e.mat());
    }
    r.doc["residuals"]["reconstruction"] = detail::op_distance(sum, x);
    r.csv = os.str();
    return r;
}

/// Samples γ(i/(N−1)), i = 0…N−1, of the geodesic from a to b.
inline Report cmd_geodesic(const std::string& file_a, const std::string& file_b, const RunConfig& cfg)
{
    const Projection a = detail::read_projection(file_a, cfg);
    const Projection b = detail::read_projection(file_b, cfg);
    const TangentVec u = log_map(a, b, cfg.tolerances);
    const Geodesic g = geodesic(u, cfg.tolerances);
    const std::size_t n_samples = cfg.sample_count;

    Report r;
    r.doc = detail::skeleton("geodesic", Json{{"a", file_a}, {"b", file_b}, {"samples", n_samples}}, cfg);
    auto& res = r.doc["result"];
    res["rank"] = a.rank();
    res["tangent"] = io::to_json(u.mat());
    res["levi_norm"] = levi_norm(u);

    std::ostringstream os;
    os << "sample,t,row,col,re,im\n";
    Json samples = Json::array();
    double worst_projection = 0;
    bool ranks_ok = true;
    Projection last;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_samples - 1);
        const Projection p = eval(g, t);
        const auto check = is_projection(p.herm(), cfg.tolerances);
        worst_projection = std::max(worst_projection, check.residual);
        ranks_ok = ranks_ok && check.is_projection && check.rank == a.rank();
        samples.push_back({{"index", i}, {"t", t}, {"rank", check.rank}, {"projection_residual", check.residual},
                           {"matrix", io::to_json(p.mat())}});
        detail::csv_matrix_rows(os, std::to_string(i) + "," + detail::fmt(t) + ",", p.mat());
        last = p;
    }
    res["samples"] = std::move(samples);
    res["rank_preserved"] = ranks_ok;
    r.doc["residuals"]["endpoint"] = detail::op_distance(last.herm(), b.herm());
    r.doc["residuals"]["max_projection"] = worst_projection;
    r.csv = os.str();
    return r;
}

/// d(a,b), the principal angles and the ranks of the three pair cases.
inline Report cmd_distance(const std::string& file_a, const std::string& file_b, const RunConfig& cfg)
{
    const Projection a = detail::read_projection(file_a, cfg);
    const Projection b = detail::read_projection(file_b, cfg);
    const auto dec = decompose_pair(a, b, cfg.tolerances);
    const auto angles = principal_angles(a, b, cfg.tolerances).expanded();
    const double d = distance(a, b, cfg.tolerances);

    Report r;
    r.doc = detail::skeleton("distance", Json{{"a", file_a}, {"b", file_b}}, cfg);
    auto& res = r.doc["result"];
    res["distance"] = d;
    res["angles"] = angles;
    res["case_ranks"] = {{"orthogonal", dec.a0.rank()}, {"shared", dec.shared.rank()}, {"angle_pairs", dec.pairs.size()}};
    res["antipodal"] = is_antipodal(a, b, cfg.tolerances);
    double sq = 0;
    for (double th : angles) sq += th * th;
    r.doc["residuals"]["angle_sum"] = std::abs(std::sqrt(sq) - d);

    std::ostringstream os;
    os << "name,index,value\n" << "distance,0," << detail::fmt(d) << '\n';
    for (std::size_t k = 0; k < angles.size(); ++k) os << "theta," << k << ',' << detail::fmt(angles[k]) << '\n';
    r.csv = os.str();
    return r;
}

/// γ(τ) on the geodesic from a to b; optionally written to out_file.
inline Report cmd_interpolate(const std::string& file_a, const std::string& file_b, double tau,
                              const std::string& out_file, const RunConfig& cfg)
{
    const Projection a = detail::read_projection(file_a, cfg);
    const Projection b = detail::read_projection(file_b, cfg);
    const Geodesic g = geodesic(log_map(a, b, cfg.tolerances), cfg.tolerances);
    const Projection p = eval(g, tau);
    if (!out_file.empty()) io::write_matrix(out_file, p.mat());

    const auto mid = midpoint_symmetry(a, b, cfg.tolerances);
    const double swap = std::max(detail::op_distance(mid.sigma(a.herm()), b.herm()),
                                 detail::op_distance(mid.sigma(b.herm()), a.herm()));

    Report r;
    r.doc = detail::skeleton("interpolate", Json{{"a", file_a}, {"b", file_b}, {"t", tau}}, cfg);
    auto& res = r.doc["result"];
    res["t"] = tau;
    res["rank"] = a.rank();
    res["file"] = out_file;
    res["matrix"] = io::to_json(p.mat());
    r.doc["residuals"]["projection"] = is_projection(p.herm(), cfg.tolerances).residual;
    r.doc["residuals"]["midpoint_swap"] = swap;

    std::ostringstream os;
    os << "row,col,re,im\n";
    detail::csv_matrix_rows(os, "", p.mat());
    r.csv = os.str();
    return r;
}

} // namespace jgeom::cli
