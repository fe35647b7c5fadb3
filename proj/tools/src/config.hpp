#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zml/statistics.hpp"

namespace zml::cli {

struct RunConfig {
    std::string cache_path;
    std::string out_dir;  // empty: JSON to stdout only
    unsigned threads = 0;

    double height_to = 1e4;

    FamilySpec family;
    WindowKind window = WindowKind::dyadic;
    std::vector<double> k_list{-1.0, 0.25, 0.5, 1.0};
    std::vector<double> T_grid;  // empty: derived from the cache height

    double ladder_k = 0.4;
    double ladder_eps = 0.1;
    double ladder_delta = 0.1;
    double ladder_T = 1e6;
    std::string coeff_model = "surrogate";

    std::int64_t x = 50;
    std::string coeffs = "ones";
    std::vector<std::string> y_list{"2", "3", "4", "5", "6", "5/2"};
    double formula_T = 1e4;

    std::int64_t kirila_count = 1000;
    double H = 50.0;
    double pointwise_eps = 0.1;

    std::int64_t mertens_x = 1000000;
    std::vector<double> X_grid{1e3, 1e4, 1e5, 1e6};
};

/// Values given on the command line; each one overrides the config file.
struct Flags {
    std::optional<std::string> config, cache, out, threads, to, k, T, family, c_gap, f_choice, window, eps, delta,
        model, x, coeffs, y, count, H, X;
};

std::vector<double> parse_list(const std::string& text);
std::vector<std::string> split_list(const std::string& text);
double parse_number(const std::string& text, const char* what);

/// Defaults, then the TOML file named by --config, then flags.
RunConfig resolve_config(const Flags& flags);

/// $ZML_CACHE_DIR/zeros.zmlc, or ./zeros.zmlc when the variable is unset.
std::string default_cache_path();

}  // namespace zml::cli
