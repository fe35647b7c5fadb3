#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "toml.hpp"
#include "zml/error.hpp"

namespace zml::cli {

namespace {

double toml_number(const toml::node_view<const toml::node>& n, const char* key) {
    if (auto v = n.value<double>()) return *v;
    throw ConfigError(std::string("config key '") + key + "' must be a number");
}

std::vector<double> toml_numbers(const toml::node_view<const toml::node>& n, const char* key) {
    std::vector<double> out;
    if (const auto* arr = n.as_array()) {
        for (const auto& e : *arr) {
            if (auto v = e.value<double>()) out.push_back(*v);
            else throw ConfigError(std::string("config key '") + key + "' must be an array of numbers");
        }
        return out;
    }
    out.push_back(toml_number(n, key));
    return out;
}

std::string toml_string(const toml::node_view<const toml::node>& n, const char* key) {
    if (auto v = n.value<std::string>()) return *v;
    throw ConfigError(std::string("config key '") + key + "' must be a string");
}

std::int64_t as_count(double v, const char* what) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 9e18) {
        throw ConfigError(std::string(what) + " must be a nonnegative integer");
    }
    return static_cast<std::int64_t>(v);
}

WindowKind parse_window(const std::string& s) {
    if (s == "dyadic" || s == "(T,2T]") return WindowKind::dyadic;
    if (s == "initial" || s == "(0,T]") return WindowKind::initial;
    throw ConfigError("unknown window '" + s + "' (expected dyadic or initial)");
}

void apply_file(RunConfig& c, const std::string& path) {
    toml::table t;
    try {
        t = toml::parse_file(path);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "cannot parse config '" << path << "': " << e.description();
        throw ConfigError(os.str());
    }
    const toml::node_view<const toml::node> root{t};
    if (root["cache"]) c.cache_path = toml_string(root["cache"], "cache");
    if (root["out"]) c.out_dir = toml_string(root["out"], "out");
    if (root["threads"]) c.threads = static_cast<unsigned>(as_count(toml_number(root["threads"], "threads"), "threads"));
    if (root["zeros"]["to"]) c.height_to = toml_number(root["zeros"]["to"], "zeros.to");

    const auto fam = root["family"];
    if (fam["kind"]) c.family.kind = parse_family_kind(toml_string(fam["kind"], "family.kind"));
    if (fam["c_gap"]) c.family.c_gap = toml_number(fam["c_gap"], "family.c_gap");
    if (fam["f_choice"]) c.family.f_choice = toml_string(fam["f_choice"], "family.f_choice");

    const auto mom = root["moments"];
    if (mom["k"]) c.k_list = toml_numbers(mom["k"], "moments.k");
    if (mom["T"]) c.T_grid = toml_numbers(mom["T"], "moments.T");
    if (mom["window"]) c.window = parse_window(toml_string(mom["window"], "moments.window"));

    const auto lad = root["ladder"];
    if (lad["k"]) c.ladder_k = toml_number(lad["k"], "ladder.k");
    if (lad["eps"]) c.ladder_eps = toml_number(lad["eps"], "ladder.eps");
    if (lad["delta"]) c.ladder_delta = toml_number(lad["delta"], "ladder.delta");
    if (lad["T"]) c.ladder_T = toml_number(lad["T"], "ladder.T");
    if (lad["model"]) c.coeff_model = toml_string(lad["model"], "ladder.model");

    const auto fm = root["formulas"];
    if (fm["x"]) c.x = as_count(toml_number(fm["x"], "formulas.x"), "formulas.x");
    if (fm["coeffs"]) c.coeffs = toml_string(fm["coeffs"], "formulas.coeffs");
    if (fm["T"]) c.formula_T = toml_number(fm["T"], "formulas.T");
    if (const auto* ys = fm["y"].as_array()) {
        c.y_list.clear();
        for (const auto& e : *ys) {
            if (auto s = e.value<std::string>()) c.y_list.push_back(*s);
            else if (auto i = e.value<std::int64_t>()) c.y_list.push_back(std::to_string(*i));
            else throw ConfigError("formulas.y entries must be integers or rational strings");
        }
    }

    const auto kir = root["kirila"];
    if (kir["count"]) c.kirila_count = as_count(toml_number(kir["count"], "kirila.count"), "kirila.count");
    if (kir["H"]) c.H = toml_number(kir["H"], "kirila.H");
    if (kir["eps"]) c.pointwise_eps = toml_number(kir["eps"], "kirila.eps");

    const auto mer = root["mertens"];
    if (mer["x"]) c.mertens_x = as_count(toml_number(mer["x"], "mertens.x"), "mertens.x");
    if (mer["X"]) c.X_grid = toml_numbers(mer["X"], "mertens.X");
}

}  // namespace

double parse_number(const std::string& text, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
        throw ConfigError(std::string("bad value for ") + what + ": '" + text + "'");
    }
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ',')) {
        const auto b = cur.find_first_not_of(' ');
        const auto e = cur.find_last_not_of(' ');
        if (b == std::string::npos) throw ConfigError("empty entry in list '" + text + "'");
        out.push_back(cur.substr(b, e - b + 1));
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split_list(text)) out.push_back(parse_number(s, "list entry"));
    return out;
}

std::string default_cache_path() {
    const char* dir = std::getenv("ZML_CACHE_DIR");
    if (dir != nullptr && *dir != '\0') return std::string(dir) + "/zeros.zmlc";
    return "zeros.zmlc";
}

RunConfig resolve_config(const Flags& f) {
    RunConfig c;
    c.cache_path = default_cache_path();
    if (f.config) apply_file(c, *f.config);

    if (f.cache) c.cache_path = *f.cache;
    if (f.out) c.out_dir = *f.out;
    if (f.threads) c.threads = static_cast<unsigned>(as_count(parse_number(*f.threads, "--threads"), "--threads"));
    if (f.to) c.height_to = parse_number(*f.to, "--to");
    if (f.family) c.family.kind = parse_family_kind(*f.family);
    if (f.c_gap) c.family.c_gap = parse_number(*f.c_gap, "--c-gap");
    if (f.f_choice) c.family.f_choice = *f.f_choice;
    if (f.window) c.window = parse_window(*f.window);
    if (f.k) {
        c.k_list = parse_list(*f.k);
        c.ladder_k = c.k_list.front();
    }
    if (f.T) {
        c.T_grid = parse_list(*f.T);
        c.ladder_T = c.T_grid.front();
        c.formula_T = c.T_grid.front();
    }
    if (f.eps) {
        c.ladder_eps = parse_number(*f.eps, "--eps");
        c.pointwise_eps = c.ladder_eps;
    }
    if (f.delta) c.ladder_delta = parse_number(*f.delta, "--delta");
    if (f.model) c.coeff_model = *f.model;
    if (f.x) {
        const auto xs = parse_list(*f.x);
        c.x = as_count(xs.front(), "--x");
        c.mertens_x = c.x;
    }
    if (f.y) c.y_list = split_list(*f.y);
    if (f.coeffs) c.coeffs = *f.coeffs;
    if (f.count) c.kirila_count = as_count(parse_number(*f.count, "--count"), "--count");
    if (f.H) c.H = parse_number(*f.H, "--H");
    if (f.X) c.X_grid = parse_list(*f.X);

    if (!(c.family.c_gap > 0.0)) throw ConfigError("c_gap must be positive");
    if (c.k_list.empty()) throw ConfigError("k list must not be empty");
    (void)family_f(c.family.f_choice, 1e3);  // validates the name
    return c;
}

}  // namespace zml::cli
