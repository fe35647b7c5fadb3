#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>

#include "CLI11.hpp"
#include "config.hpp"
#include "zml/cache_io.hpp"
#include "zml/error.hpp"
#include "zml/formulas.hpp"
#include "zml/harper.hpp"
#include "zml/kirila.hpp"
#include "zml/ladder.hpp"
#include "zml/parallel.hpp"
#include "zml/report.hpp"
#include "zml/statistics.hpp"

namespace zml::cli {

namespace {

namespace fs = std::filesystem;

// A failed assertion that is not a library error: the report is still
// produced, but the run exits 1 naming the invariant.
struct Outcome {
    json report;
    std::string violation;
    std::vector<std::pair<std::string, CsvWriter>> csv;
};

ZeroCache load_cache(const RunConfig& c) {
    if (!fs::exists(c.cache_path)) {
        throw CertificationError("no zero cache at '" + c.cache_path + "' (run `zml zeros --to H` first)");
    }
    return read_cache(c.cache_path);
}

double top_gamma(const ZeroCache& cache) {
    return cache.records.empty() ? 0.0 : cache.records.back().gamma.to_double();
}

// Decades 10^3, 10^4, ... whose window fits in the cache with padding.
std::vector<double> default_grid(const ZeroCache& cache, WindowKind w) {
    std::vector<double> g;
    for (double T = 1e3; T <= 1e7; T *= 10.0) {
        const double need = w == WindowKind::dyadic ? 2.0 * T : T;
        if (need < top_gamma(cache)) g.push_back(T);
    }
    return g;
}

std::vector<double> grid_or_default(const RunConfig& c, const ZeroCache& cache, WindowKind w) {
    return c.T_grid.empty() ? default_grid(cache, w) : c.T_grid;
}

Outcome cmd_zeros(const RunConfig& c) {
    ZeroCache cache;
    std::string action;
    if (fs::exists(c.cache_path)) {
        cache = read_cache(c.cache_path);
        if (cache.height_hi.to_double() < c.height_to) {
            cache = extend_zero_cache(cache, ExtReal(c.height_to));
            write_cache(c.cache_path, cache);
            action = "extended";
        } else {
            action = "reused";
        }
    } else {
        if (!c.cache_path.empty() && fs::path(c.cache_path).has_parent_path()) {
            fs::create_directories(fs::path(c.cache_path).parent_path());
        }
        cache = build_zero_cache(ExtReal(c.height_to));
        write_cache(c.cache_path, cache);
        action = "built";
    }
    ZeroCache check = cache;
    const TuringReport turing = turing_certify(check);
    json values = {{"action", action},
                   {"count", cache.records.size()},
                   {"height_lo", ext_json(cache.height_lo)},
                   {"height_hi", ext_json(cache.height_hi)},
                   {"certified", cache.certified},
                   {"turing", to_json(turing)}};
    if (!cache.records.empty()) {
        values["first_gamma"] = ext_json(cache.records.front().gamma);
        values["last_gamma"] = ext_json(cache.records.back().gamma);
        auto mn = std::min_element(cache.records.begin(), cache.records.end(),
                                   [](const ZeroRecord& a, const ZeroRecord& b) { return a.zprime_abs < b.zprime_abs; });
        values["min_zprime_abs"] = {{"index", mn->index}, {"value", ext_json(mn->zprime_abs)}};
    }
    Outcome o;
    o.report = envelope("zeros", {{"to", c.height_to}, {"cache", c.cache_path}}, values, cache_checksum(cache));
    if (!turing.certified) o.violation = "turing certification: " + turing.failure;
    if (!c.out_dir.empty()) export_csv((fs::path(c.out_dir) / "zeros.csv").string(), cache);
    return o;
}

Outcome cmd_moments(const RunConfig& c) {
    const ZeroCache cache = load_cache(c);
    const auto grid = grid_or_default(c, cache, c.window);
    if (grid.empty()) throw ConfigError("no T grid fits the cache; pass --T");
    json reports = json::array();
    json fits = json::array();
    CsvWriter csv({"k", "T", "J", "J_over_T_logT_pow", "zero_count_used", "zero_count_excluded"});
    for (double k : c.k_list) {
        for (double T : grid) {
            const auto rep = discrete_moment(cache, k, {c.window, ExtReal(T)}, c.family);
            reports.push_back(to_json(rep));
            const double model = T * std::pow(std::log(T), (k - 1.0) * (k - 1.0));
            csv.row({csv_number(k), csv_number(T), rep.J.to_string(20), csv_number(rep.J.to_double() / model),
                     std::to_string(rep.zero_count_used), std::to_string(rep.zero_count_excluded)});
        }
        if (grid.size() >= 3) {
            try {
                fits.push_back(to_json(conjecture_fit(cache, k, grid, c.family, c.window)));
            } catch (const ConditioningError& e) {
                fits.push_back({{"k", k}, {"error", e.what()}});
            }
        }
    }
    Outcome o;
    o.report = envelope("moments",
                        {{"k", c.k_list}, {"T", grid}, {"family", to_json(c.family)}, {"window", to_string(c.window)}},
                        {{"reports", reports}, {"fits", fits}}, cache_checksum(cache));
    o.csv.emplace_back("moments.csv", std::move(csv));
    return o;
}

Outcome cmd_families(const RunConfig& c) {
    const ZeroCache cache = load_cache(c);
    const auto grid = grid_or_default(c, cache, WindowKind::dyadic);
    if (grid.empty()) throw ConfigError("no T grid fits the cache; pass --T");
    std::vector<FamilyKind> kinds;
    if (c.family.kind == FamilyKind::full) kinds = {FamilyKind::F, FamilyKind::F_enl};
    else kinds = {c.family.kind};
    json rows = json::array();
    CsvWriter csv({"family", "T", "c_gap", "threshold", "included", "excluded", "excluded_fraction"});
    Outcome o;
    for (FamilyKind kind : kinds) {
        FamilySpec spec = c.family;
        spec.kind = kind;
        for (double T : grid) {
            const Window w{WindowKind::dyadic, ExtReal(T)};
            const auto res = family_filter(cache, spec, w);
            const std::int64_t window_count = count_N(w.hi(), cache) - count_N(w.lo(), cache);
            if (static_cast<std::int64_t>(res.included.size() + res.excluded.size()) != window_count &&
                o.violation.empty()) {
                o.violation = "family partition at T = " + csv_number(T);
            }
            json r = to_json(res);
            r["family"] = to_json(spec);
            r["T"] = T;
            rows.push_back(r);
            csv.row({to_string(kind), csv_number(T), csv_number(spec.c_gap), csv_number(res.threshold),
                     std::to_string(res.included.size()), std::to_string(res.excluded.size()),
                     csv_number(res.excluded_fraction)});
        }
    }
    o.report = envelope("families", {{"T", grid}, {"family", to_json(c.family)}}, {{"windows", rows}},
                        cache_checksum(cache));
    o.csv.emplace_back("families.csv", std::move(csv));
    return o;
}

Outcome cmd_verify_mvt(const RunConfig& c) {
    const ZeroCache cache = load_cache(c);
    const auto tables = sieve_tables(std::max<std::int64_t>(c.x, 2));
    const auto coeffs = DirichletCoefficients::preset(c.coeffs, c.x, &tables);
    const auto rep = mvt_check(coeffs, ExtReal(c.formula_T), cache, tables);
    Outcome o;
    o.report = envelope("verify-mvt", {{"x", c.x}, {"coeffs", c.coeffs}, {"T", c.formula_T}}, to_json(rep),
                        cache_checksum(cache));
    return o;
}

Outcome cmd_verify_landau_gonek(const RunConfig& c) {
    const ZeroCache cache = load_cache(c);
    json rows = json::array();
    CsvWriter csv({"y", "T", "lhs_re", "lhs_im", "main", "residual", "budget", "ratio"});
    for (const auto& ys : c.y_list) {
        Rational y;
        try {
            y = Rational::parse(ys);
        } catch (const Error& e) {
            throw ConfigError("bad y '" + ys + "': " + e.what());
        }
        const auto rep = landau_gonek_check(y, ExtReal(c.formula_T), cache);
        json r = to_json(rep);
        r["y"] = y.to_string();
        rows.push_back(r);
        csv.row({y.to_string(), csv_number(c.formula_T), csv_number(rep.lhs.re().to_double()),
                 csv_number(rep.lhs.im().to_double()), csv_number(rep.main_terms.front().value.re().to_double()),
                 csv_number(rep.residual.to_double()), csv_number(rep.error_budget.to_double()), csv_number(rep.ratio)});
    }
    Outcome o;
    o.report = envelope("verify-landau-gonek", {{"y", c.y_list}, {"T", c.formula_T}}, {{"reports", rows}},
                        cache_checksum(cache));
    o.csv.emplace_back("landau_gonek.csv", std::move(csv));
    return o;
}

Outcome cmd_kirila(const RunConfig& c) {
    const ZeroCache cache = load_cache(c);
    CsvWriter csv({"index", "gamma", "D", "M1", "M2", "pointwise_ratio"});
    double max_abs_d = 0.0;
    std::int64_t max_m1 = 0;
    double max_ratio = 0.0;
    std::uint64_t argmax_ratio = 0;
    std::int64_t done = 0;
    const std::uint64_t first = cache.records.empty() ? 1 : cache.records.front().index;
    for (std::int64_t i = 0; i < c.kirila_count && i < static_cast<std::int64_t>(cache.records.size()); ++i) {
        const auto& z = cache.records[static_cast<std::size_t>(i)];
        const auto rep = kirila_decomposition_check(first + static_cast<std::uint64_t>(i), cache, c.H);
        const auto pb = pointwise_bound_check(z.gamma, c.pointwise_eps, cache);
        max_abs_d = std::max(max_abs_d, std::fabs(rep.D));
        max_m1 = std::max(max_m1, rep.m1);
        if (pb.ratio > max_ratio) {
            max_ratio = pb.ratio;
            argmax_ratio = z.index;
        }
        csv.row({std::to_string(z.index), z.gamma.to_string(20), csv_number(rep.D), std::to_string(rep.m1),
                 csv_number(rep.m2_truncated), csv_number(pb.ratio)});
        ++done;
    }
    Outcome o;
    o.report = envelope("kirila", {{"count", c.kirila_count}, {"H", c.H}, {"eps", c.pointwise_eps}},
                        {{"zeros_checked", done},
                         {"max_abs_D", max_abs_d},
                         {"max_M1", max_m1},
                         {"max_pointwise_ratio", max_ratio},
                         {"argmax_pointwise_index", argmax_ratio}},
                        cache_checksum(cache));
    o.csv.emplace_back("kirila.csv", std::move(csv));
    return o;
}

Outcome cmd_ladder(const RunConfig& c) {
    const auto p = make_ladder(c.ladder_k, c.ladder_eps, c.ladder_delta, ExtReal(c.ladder_T));
    const auto v = validate_ladder(p);
    Outcome o;
    o.report = envelope("ladder", {{"k", c.ladder_k}, {"eps", c.ladder_eps}, {"delta", c.ladder_delta}, {"T", c.ladder_T}},
                        {{"params", to_json(p)}, {"validation", to_json(v)}}, "");
    o.report["provenance"]["cache_checksum"] = nullptr;
    if (!v.ok) o.violation = "ladder constraint: " + v.violations.front();
    return o;
}

Outcome cmd_mertens(const RunConfig& c) {
    double top = static_cast<double>(c.mertens_x);
    for (double X : c.X_grid) top = std::max(top, X);
    const auto tables = sieve_tables(static_cast<std::int64_t>(top));
    json wmc = json::array();
    CsvWriter csv({"X", "log_X", "I_X", "ratio"});
    for (double X : c.X_grid) {
        const auto r = wmc_integral(static_cast<std::int64_t>(X), tables);
        wmc.push_back(to_json(r));
        csv.row({std::to_string(r.X), csv_number(std::log(X)), r.integral.to_string(20), csv_number(r.ratio)});
    }
    Outcome o;
    o.report = envelope("mertens", {{"x", c.mertens_x}, {"X", c.X_grid}},
                        {{"M", mertens_M(c.mertens_x, tables)}, {"wmc", wmc}}, "");
    o.report["provenance"]["cache_checksum"] = nullptr;
    o.csv.emplace_back("wmc.csv", std::move(csv));
    return o;
}

Outcome cmd_report(const RunConfig& c) {
    const ZeroCache cache = load_cache(c);
    Outcome bundle;
    json sections = json::object();
    auto take = [&](const char* name, Outcome o) {
        sections[name] = o.report["values"];
        if (bundle.violation.empty() && !o.violation.empty()) bundle.violation = name + std::string(": ") + o.violation;
        for (auto& f : o.csv) bundle.csv.push_back(std::move(f));
    };
    take("moments", cmd_moments(c));
    take("families", cmd_families(c));

    {
        RunConfig m = c;
        json mvt = json::array();
        const std::pair<const char*, std::int64_t> runs[] = {{"indicator", 2}, {"ones", 50}, {"mobius", 100}};
        for (const auto& [name, x] : runs) {
            m.coeffs = name;
            m.x = x;
            if (m.formula_T > top_gamma(cache)) m.formula_T = std::floor(top_gamma(cache));
            json r = cmd_verify_mvt(m).report["values"];
            r["coeffs"] = name;
            r["x"] = x;
            mvt.push_back(r);
        }
        sections["verify-mvt"] = mvt;
        RunConfig lg = m;
        take("verify-landau-gonek", cmd_verify_landau_gonek(lg));
    }

    json envelope_rows = json::array();
    CsvWriter s_csv({"t_lo", "t_hi", "max_abs_S", "argmax", "ratio_conjectured", "ratio_littlewood"});
    for (double lo = 10.0; lo < top_gamma(cache); lo = lo < 100.0 ? 100.0 : lo * 10.0) {
        const double hi = std::min(lo < 100.0 ? 100.0 : lo * 10.0, cache.height_hi.to_double());
        const auto scan = s_max_scan(ExtReal(lo), ExtReal(hi), cache);
        envelope_rows.push_back(to_json(scan));
        s_csv.row({csv_number(lo), csv_number(hi), csv_number(scan.max_abs_s), scan.argmax.to_string(20),
                   csv_number(scan.ratio_conjectured), csv_number(scan.ratio_littlewood)});
    }
    sections["s_envelope"] = envelope_rows;
    bundle.csv.emplace_back("s_envelope.csv", std::move(s_csv));

    json gonek = json::array();
    for (double T : default_grid(cache, WindowKind::initial)) {
        gonek.push_back({{"T", T}, {"gonek_ratio", gonek_ratio(cache, ExtReal(T))},
                         {"positive_moment_ratio", positive_moment_ratio(cache, ExtReal(T))},
                         {"zero_sum_partial", ext_json(zero_sum_partial(cache, ExtReal(T)))}});
    }
    sections["calibration"] = gonek;

    take("kirila", cmd_kirila(c));
    try {
        take("ladder", cmd_ladder(c));
    } catch (const InfeasibleError& e) {
        sections["ladder"] = {{"infeasible", e.what()}};
        if (bundle.violation.empty()) bundle.violation = std::string("ladder: ") + e.what();
    }
    take("mertens", cmd_mertens(c));

    bundle.report = envelope("report", {{"cache", c.cache_path}}, sections, cache_checksum(cache));
    return bundle;
}

json failure_json(const std::string& op, const std::string& category, const std::string& message) {
    return {{"status", "failed"}, {"op", op}, {"error", category}, {"message", message}};
}

void add_flag(CLI::App* sub, const char* name, std::optional<std::string>& slot, const char* help) {
    sub->add_option_function<std::string>(name, [&slot](const std::string& v) { slot = v; }, help);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"zml: zeta zero moments toolkit"};
    app.require_subcommand(1);
    Flags flags;

    using Command = std::function<Outcome(const RunConfig&)>;
    std::map<std::string, Command> commands = {
        {"zeros", cmd_zeros},
        {"moments", cmd_moments},
        {"families", cmd_families},
        {"verify-mvt", cmd_verify_mvt},
        {"verify-landau-gonek", cmd_verify_landau_gonek},
        {"kirila", cmd_kirila},
        {"ladder", cmd_ladder},
        {"mertens", cmd_mertens},
        {"report", cmd_report},
    };
    const std::map<std::string, const char*> help = {
        {"zeros", "compute, certify and persist the zero cache"},
        {"moments", "discrete moments J_{-k} over a k list and T grid"},
        {"families", "gap-family inclusion and exclusion counts"},
        {"verify-mvt", "mean value theorem for a Dirichlet polynomial over zeros"},
        {"verify-landau-gonek", "Landau-Gonek explicit formula check"},
        {"kirila", "log|zeta'| decomposition and the pointwise bound"},
        {"ladder", "build and validate a parameter ladder"},
        {"mertens", "Mertens function and the weak Mertens integral"},
        {"report", "run every check and bundle JSON and CSV outputs"},
    };

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, fn] : commands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        subs[name] = sub;
        add_flag(sub, "--config", flags.config, "TOML config file (flags override it)");
        add_flag(sub, "--cache", flags.cache, "zero cache path (default $ZML_CACHE_DIR/zeros.zmlc)");
        add_flag(sub, "--out", flags.out, "directory for JSON and CSV artifacts");
        add_flag(sub, "--threads", flags.threads, "worker threads (0 = hardware)");
        add_flag(sub, "--to", flags.to, "target height for the zero cache");
        add_flag(sub, "--k", flags.k, "k value or comma list");
        add_flag(sub, "--T", flags.T, "height or comma list of heights");
        add_flag(sub, "--family", flags.family, "full, F or F_enl");
        add_flag(sub, "--c-gap", flags.c_gap, "explicit gap constant");
        add_flag(sub, "--f-choice", flags.f_choice, "logloglog, loglog or one");
        add_flag(sub, "--window", flags.window, "dyadic (T,2T] or initial (0,T]");
        add_flag(sub, "--eps", flags.eps, "epsilon");
        add_flag(sub, "--delta", flags.delta, "delta");
        add_flag(sub, "--model", flags.model, "coefficient model");
        add_flag(sub, "--x", flags.x, "polynomial length or Mertens argument");
        add_flag(sub, "--y", flags.y, "comma list of rationals for Landau-Gonek");
        add_flag(sub, "--coeffs", flags.coeffs, "ones, mobius, indicator or random[:seed]");
        add_flag(sub, "--count", flags.count, "number of zeros for kirila");
        add_flag(sub, "--H", flags.H, "neighbour window for kirila");
        add_flag(sub, "--X", flags.X, "comma list of X for the weak Mertens integral");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    std::string op;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) op = name;
    }

    RunConfig cfg;
    try {
        cfg = resolve_config(flags);
    } catch (const Error& e) {
        out << dump(failure_json(op, e.category(), e.what()));
        return 2;
    }

    try {
        set_thread_count(cfg.threads);
        if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);
        Outcome o = commands.at(op)(cfg);
        if (!cfg.out_dir.empty()) {
            write_json((fs::path(cfg.out_dir) / (op + ".json")).string(), o.report);
            for (const auto& [file, csv] : o.csv) csv.write((fs::path(cfg.out_dir) / file).string());
        }
        out << dump(o.report);
        if (!o.violation.empty()) {
            out << dump(failure_json(op, "invariant", o.violation));
            return 1;
        }
        return 0;
    } catch (const ConfigError& e) {
        out << dump(failure_json(op, e.category(), e.what()));
        return 2;
    } catch (const Error& e) {
        out << dump(failure_json(op, e.category(), e.what()));
        return 1;
    } catch (const std::exception& e) {
        out << dump(failure_json(op, "internal", e.what()));
        return 1;
    }
}

}  // namespace zml::cli
