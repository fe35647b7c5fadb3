#include <cmath>

#include "zml/error.hpp"
#include "zml/ladder.hpp"

namespace zml {

double CoefficientModel::b_delta(const LadderParams& params, int j) {
    if (eta(params, j) == 1) return 0.5 + kSurrogateEps;
    // 2 pi Delta_j / log T = beta_j
    return 1.0 / (1.0 - std::exp(-params.beta[static_cast<std::size_t>(j)]));
}

double CoefficientModel::cap(const LadderParams& params, int j) {
    const double b = b_delta(params, j);
    if (eta(params, j) == 0) return b;
    // log T / Delta_j = 2 pi / beta_j
    return b * std::log(6.283185307179586 / params.beta[static_cast<std::size_t>(j)]);
}

CoefficientModel CoefficientModel::by_name(const std::string& name, const LadderParams& params) {
    CoefficientModel m;
    m.name = name;
    if (name == "surrogate") {
        std::vector<double> caps;
        for (int j = 0; j <= params.K; ++j) caps.push_back(cap(params, j));
        m.b = [caps](std::int64_t, int j) { return caps[static_cast<std::size_t>(j)]; };
    } else if (name == "zero") {
        m.b = [](std::int64_t, int) { return 0.0; };
    } else if (name == "unit") {
        m.b = [](std::int64_t, int) { return 1.0; };
    } else if (name.rfind("constant:", 0) == 0) {
        double v = 0.0;
        try {
            v = std::stod(name.substr(9));
        } catch (const std::exception&) {
            throw ConfigError("bad constant in coefficient model '" + name + "'");
        }
        m.b = [v](std::int64_t, int) { return v; };
    } else {
        throw ConfigError("unknown coefficient model '" + name + "' (surrogate, zero, unit, constant:<v>)");
    }
    return m;
}

}  // namespace zml
