#pragma once

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hyperdecay/symbol.hpp"

namespace hyperdecay {

using Params = std::map<std::string, double>;

struct PresetInfo {
    std::string name;
    int default_dim;
    Params defaults;
    std::string description;
};

inline const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> cat = {
        {"damped_wave", 3, {{"c", 1.0}, {"a", 1.0}}, "u_tt - c^2 Lap u + a u_t"},
        {"mgt", 3, {{"tau", 1.0}, {"c", 1.0}, {"b", 1.0}}, "tau u_ttt + u_tt - c^2 Lap u - b Lap u_t"},
        {"blackstock_crighton", 3, {{"tau", 1.0}, {"a", 1.0}, {"b", 1.0}, {"c", 1.0}},
         "thermally relaxing fourth-order acoustic model"},
        {"em_elastic", 3, {{"mu", 1.0}, {"c", 1.0}, {"gamma", 1.0}, {"sigma", 1.0}},
         "scalar reduction of the electromagnetic-elastic system"},
        {"em_elastic_dissipative", 3, {{"a", 2.0}, {"sigma", 1.0}, {"mu", 1.0}, {"c", 1.0}, {"gamma", 1.0}},
         "electromagnetic-elastic model with friction-type damping"},
        {"anisotropic_elastic_2d", 2, {{"a1", 2.0}, {"a2", 1.0}, {"mu", 1.0}, {"nu", 0.0}},
         "plane elasticity with direction-dependent damping diag(a1, a2)"},
        {"mgt_classical_damping", 3, {{"tau", 1.0}, {"c", 1.0}, {"b", 1.0}}, "MGT-type model with u_t damping"},
        {"fourth_order_weak", 1, {{"c", 2.0}}, "fourth-order model with weakly hyperbolic principal part"},
        {"example_ell3", 3, {{"a", 1.0}, {"b", 0.5}, {"c1", 1.0}, {"c2", 1.0}, {"c3", 2.0}},
         "fourth-order operator with three lower-order terms"},
    };
    return cat;
}

inline const PresetInfo& preset_info(const std::string& name) {
    for (const auto& p : preset_catalog())
        if (p.name == name) return p;
    throw Error("unknown preset '" + name + "'");
}

inline bool is_preset(const std::string& name) {
    for (const auto& p : preset_catalog())
        if (p.name == name) return true;
    return false;
}

namespace detail {

/// Isotropic symbol sum_i c_i lambda^{k_i} |xi|^{2 p_i}.
inline HomogeneousSymbol radial_symbol(int order, int dim, const std::vector<std::tuple<int, int, double>>& terms) {
    HomogeneousSymbol s(order, dim);
    for (auto [k, p, c] : terms) s.add_radial(k, p, c);
    return s;
}

}  // namespace detail

/// Builds a preset stack; unspecified parameters take the catalog defaults, dim <= 0 means the default dimension.
inline OperatorStack make_preset(const std::string& name, const Params& overrides = {}, int dim = 0) {
    const PresetInfo& info = preset_info(name);
    Params P = info.defaults;
    for (const auto& [k, v] : overrides) {
        if (!P.count(k)) throw Error("preset '" + name + "' has no parameter '" + k + "'");
        P[k] = v;
    }
    const int n = dim > 0 ? dim : info.default_dim;
    using detail::radial_symbol;
    std::vector<HomogeneousSymbol> s;

    if (name == "damped_wave") {
        const double c = P["c"], a = P["a"];
        s.push_back(radial_symbol(2, n, {{2, 0, 1.0}, {0, 1, -c * c}}));
        s.push_back(radial_symbol(1, n, {{1, 0, a}}));
    } else if (name == "mgt") {
        const double tau = P["tau"], c = P["c"], b = P["b"];
        s.push_back(radial_symbol(3, n, {{3, 0, 1.0}, {1, 1, -(c * c + b / tau)}}));
        s.push_back(radial_symbol(2, n, {{2, 0, 1.0 / tau}, {0, 1, -c * c / tau}}));
    } else if (name == "blackstock_crighton") {
        const double tau = P["tau"], a = P["a"], b = P["b"], c = P["c"];
        s.push_back(radial_symbol(4, n, {{4, 0, 1.0}, {2, 1, -(c * c + (a + b) / tau)}, {0, 2, a * c * c / tau}}));
        s.push_back(radial_symbol(3, n, {{3, 0, 1.0 / tau}, {1, 1, -c * c / tau}}));
    } else if (name == "em_elastic") {
        const double mu = P["mu"], c = P["c"], g = P["gamma"], sg = P["sigma"];
        s.push_back(radial_symbol(5, n, {{5, 0, 1.0}, {3, 1, -(mu + c * c + g * g)}, {1, 2, c * c * mu}}));
        s.push_back(radial_symbol(4, n, {{4, 0, 2.0 * sg}, {2, 1, -sg * (2.0 * mu + c * c + g * g)}, {0, 2, sg * c * c * mu}}));
        s.push_back(radial_symbol(3, n, {{3, 0, sg * sg}, {1, 1, -sg * sg * mu}}));
    } else if (name == "em_elastic_dissipative") {
        const double a = P["a"], sg = P["sigma"], mu = P["mu"], c = P["c"], g = P["gamma"];
        s.push_back(radial_symbol(4, n, {{4, 0, 1.0}, {2, 1, -(mu + c * c + g * g)}, {0, 2, c * c * mu}}));
        s.push_back(radial_symbol(3, n, {{3, 0, a + sg}, {1, 1, -(a * c * c + mu * sg)}}));
        s.push_back(radial_symbol(2, n, {{2, 0, a * sg}}));
    } else if (name == "anisotropic_elastic_2d") {
        if (n != 2) throw Error("anisotropic_elastic_2d is defined in two space dimensions");
        const double a1 = P["a1"], a2 = P["a2"], mu = P["mu"], nu = P["nu"];
        s.push_back(radial_symbol(4, n, {{4, 0, 1.0}, {2, 1, -(3.0 * mu + nu)}, {0, 2, mu * (2.0 * mu + nu)}}));
        HomogeneousSymbol p3 = radial_symbol(3, n, {{3, 0, a1 + a2}, {1, 1, -(a1 + a2) * mu}});
        p3.add(1, {0, 2}, -a1 * (mu + nu));
        p3.add(1, {2, 0}, -a2 * (mu + nu));
        s.push_back(p3);
        s.push_back(radial_symbol(2, n, {{2, 0, a1 * a2}}));
    } else if (name == "mgt_classical_damping") {
        const double tau = P["tau"], c = P["c"], b = P["b"];
        s.push_back(radial_symbol(3, n, {{3, 0, 1.0}, {1, 1, -c * c}}));
        s.push_back(radial_symbol(2, n, {{2, 0, 1.0 / tau}, {0, 1, -c * c / tau}}));
        s.push_back(radial_symbol(1, n, {{1, 0, b / tau}}));
    } else if (name == "fourth_order_weak") {
        const double c = P["c"];
        s.push_back(radial_symbol(4, n, {{4, 0, 1.0}, {2, 1, -c * c}}));
        s.push_back(radial_symbol(3, n, {{3, 0, 1.0}, {1, 1, -1.0}}));
        s.push_back(radial_symbol(2, n, {{2, 0, 1.0}, {0, 1, -1.0}}));
    } else if (name == "example_ell3") {
        const double a = P["a"], b = P["b"], c1 = P["c1"], c2 = P["c2"], c3 = P["c3"];
        s.push_back(radial_symbol(4, n, {{4, 0, 1.0}, {2, 1, -a * a}}));
        s.push_back(radial_symbol(3, n, {{3, 0, c3}, {1, 1, -c3 * a * a}}));
        s.push_back(radial_symbol(2, n, {{2, 0, c2}, {0, 1, -c2 * b * b}}));
        s.push_back(radial_symbol(1, n, {{1, 0, c1}}));
    }
    return OperatorStack(std::move(s), name);
}

}  // namespace hyperdecay
