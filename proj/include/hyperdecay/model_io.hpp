#pragma once

// JSON model/data files and CSV output for the command-line tool.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperdecay/presets.hpp"
#include "hyperdecay/solver.hpp"

namespace hyperdecay {

using json = nlohmann::json;

/// A stack plus whatever the file said about it.
struct Model {
    std::string name;
    std::string preset;  // empty for explicit symbols
    Params params;
    int dim = 0;
    json doc;  // full document; fixtures live under "expected"
    OperatorStack stack() const;
};

namespace detail {

inline HomogeneousSymbol parse_symbol(const json& j, int dim) {
    const int order = j.at("order").get<int>();
    HomogeneousSymbol s(order, dim);
    if (j.contains("radial"))
        for (const auto& t : j.at("radial")) {
            if (!t.is_array() || t.size() != 3) throw Error("radial term must be [k, p, c]");
            s.add_radial(t[0].get<int>(), t[1].get<int>(), t[2].get<double>());
        }
    if (j.contains("terms"))
        for (const auto& t : j.at("terms")) {
            MultiIndex alpha = t.at("alpha").get<MultiIndex>();
            if (static_cast<int>(alpha.size()) != dim) throw Error("multi-index length does not match dim");
            const int k = t.at("k").get<int>();
            if (k < 0 || k + abs_index(alpha) != order) throw Error("term degree does not match symbol order");
            s.add(k, alpha, t.at("c").get<double>());
        }
    return s;
}

}  // namespace detail

inline OperatorStack Model::stack() const {
    if (!preset.empty()) return make_preset(preset, params, dim);
    const json& syms = doc.at("symbols");
    if (!syms.is_array() || syms.empty()) throw Error("model needs a non-empty 'symbols' array");
    std::vector<HomogeneousSymbol> s;
    for (const auto& j : syms) s.push_back(detail::parse_symbol(j, dim));
    return OperatorStack(std::move(s), name);
}

inline Model model_from_json(const json& doc, const std::string& fallback_name = "model") {
    Model m;
    m.doc = doc;
    try {
        if (doc.contains("preset")) {
            m.preset = doc.at("preset").get<std::string>();
            if (!is_preset(m.preset)) throw Error("unknown preset '" + m.preset + "'");
            if (doc.contains("params")) m.params = doc.at("params").get<Params>();
            m.dim = doc.value("dim", 0);
            if (m.dim <= 0) m.dim = preset_info(m.preset).default_dim;
        } else {
            if (!doc.contains("dim")) throw Error("explicit model needs 'dim'");
            m.dim = doc.at("dim").get<int>();
        }
        m.name = doc.value("name", m.preset.empty() ? fallback_name : m.preset);
        m.stack();  // validate now so later commands fail early
    } catch (const json::exception& e) {
        throw Error(std::string("model file: ") + e.what());
    }
    return m;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

/// A path to a JSON file, or a preset name (its fixture in models_dir when present).
inline Model load_model(const std::string& arg, const std::string& models_dir) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(arg)) return model_from_json(read_json_file(arg), fs::path(arg).stem().string());
    if (is_preset(arg)) {
        fs::path p = fs::path(models_dir) / (arg + ".json");
        if (fs::is_regular_file(p)) return model_from_json(read_json_file(p.string()), arg);
        return model_from_json(json{{"preset", arg}}, arg);
    }
    throw Error("'" + arg + "' is neither a model file nor a preset");
}

inline DataProfile profile_from_json(const json& j) {
    const std::string kind = j.value("kind", "zero");
    if (kind == "zero") return DataProfile::zero();
    if (kind == "gaussian") return DataProfile::gaussian(j.value("amplitude", 1.0), j.value("width", 1.0));
    if (kind == "ring") return DataProfile::ring(j.value("amplitude", 1.0), j.at("r0").get<double>(), j.value("sigma", 1.0));
    if (kind == "grid")
        return DataProfile::grid(j.at("rho").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
    throw Error("unknown data profile kind '" + kind + "'");
}

inline json profile_to_json(const DataProfile& p) {
    switch (p.kind) {
        case DataProfile::ZERO: return {{"kind", "zero"}};
        case DataProfile::GAUSSIAN: return {{"kind", "gaussian"}, {"amplitude", p.amplitude}, {"width", p.width}};
        case DataProfile::RING: return {{"kind", "ring"}, {"amplitude", p.amplitude}, {"r0", p.r0}, {"sigma", p.sigma}};
        case DataProfile::GRID: return {{"kind", "grid"}, {"rho", p.grid_rho}, {"values", p.grid_values}};
    }
    return {};
}

/// {"u": [profile, ...]} with exactly m entries; missing "u" means a unit gaussian in u_{m-1}.
inline DataSpec data_from_json(const json& j, const OperatorStack& st) {
    if (!j.contains("u")) return top_datum(st.m(), st.dim(), DataProfile::gaussian(1.0, 1.0));
    DataSpec d;
    d.n = st.dim();
    try {
        for (const auto& p : j.at("u")) d.u.push_back(profile_from_json(p));
    } catch (const json::exception& e) {
        throw Error(std::string("data: ") + e.what());
    }
    if (static_cast<int>(d.u.size()) != st.m()) throw Error("data must list m = " + std::to_string(st.m()) + " profiles");
    return d;
}

inline json data_to_json(const DataSpec& d) {
    json u = json::array();
    for (const auto& p : d.u) u.push_back(profile_to_json(p));
    return {{"u", u}};
}

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Plain CSV: header line, then rows of doubles (%.17g) or preformatted strings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : ncol_(header.size()) { line(header); }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != ncol_) throw Error("CSV row width mismatch");
        line(cells);
    }
    void row(const std::vector<double>& v) {
        std::vector<std::string> cells;
        for (double x : v) cells.push_back(fmt17(x));
        row(cells);
    }

    std::string str() const { return out_.str(); }

    void save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write '" + path + "'");
        f << out_.str();
    }

private:
    void line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    std::size_t ncol_;
    std::ostringstream out_;
};

inline void save_json(const json& j, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << j.dump(2) << '\n';
}

}  // namespace hyperdecay
