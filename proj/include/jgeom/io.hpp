#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "matrix_core.hpp"

namespace jgeom::io {

// Matrix file layout: {"n": rows, "m": cols, "re": [[...]], "im": [[...]]}.
// "im" is optional on input. Doubles are written in shortest round-trip form.

inline nlohmann::ordered_json to_json(const CMat& m)
{
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto rrow = nlohmann::ordered_json::array();
        auto irow = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    nlohmann::ordered_json j;
    j["n"] = m.rows();
    j["m"] = m.cols();
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

template <typename Json>
CMat from_json(const Json& j)
{
    if (!j.is_object()) throw ParseError("matrix JSON must be an object");
    for (const char* key : {"n", "m", "re"})
        if (!j.contains(key)) throw ParseError(std::string("matrix JSON missing \"") + key + "\"");
    if (!j["n"].is_number_integer() || !j["m"].is_number_integer())
        throw ParseError("\"n\" and \"m\" must be integers");
    const auto rows = j["n"].template get<long long>();
    const auto cols = j["m"].template get<long long>();
    if (rows <= 0 || cols <= 0) throw ParseError("matrix dimensions must be positive");

    CMat m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    auto fill = [&](const Json& arr, const char* name, bool imaginary) {
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(rows))
            throw ParseError(std::string("\"") + name + "\" must have n rows");
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const auto& row = arr[i];
            if (!row.is_array() || row.size() != m.cols())
                throw ParseError(std::string("\"") + name + "\" row " + std::to_string(i) + " must have m entries");
            for (std::size_t k = 0; k < m.cols(); ++k) {
                if (!row[k].is_number()) throw ParseError(std::string("\"") + name + "\" entries must be numbers");
                const double v = row[k].template get<double>();
                if (imaginary) m(i, k).imag(v);
                else m(i, k).real(v);
            }
        }
    };
    fill(j["re"], "re", false);
    if (j.contains("im")) fill(j["im"], "im", true);
    if (!m.all_finite()) throw ParseError("matrix entries must be finite");
    return m;
}

inline CMat parse_matrix(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return from_json(j);
}

inline CMat read_matrix(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str());
}

inline std::string dump_matrix(const CMat& m) { return to_json(m).dump() + "\n"; }

inline void write_matrix(const std::string& path, const CMat& m)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << dump_matrix(m);
}

} // namespace jgeom::io
