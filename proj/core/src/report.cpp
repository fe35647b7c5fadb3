#include "zml/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "zml/error.hpp"

namespace zml {

json ext_json(const ExtReal& x) { return x.to_string(32); }

json ext_json(const ExtComplex& z) { return {{"re", ext_json(z.re())}, {"im", ext_json(z.im())}}; }

json envelope(const std::string& op, json params, json values, const std::string& cache_checksum) {
    json j;
    j["op"] = op;
    j["params"] = std::move(params);
    j["values"] = std::move(values);
    j["provenance"] = {{"cache_checksum", cache_checksum}};
    return j;
}

json to_json(const FamilySpec& spec) {
    return {{"kind", to_string(spec.kind)}, {"c_gap", spec.c_gap}, {"f_choice", spec.f_choice}};
}

json to_json(const MomentReport& rep) {
    json j = {{"k", rep.k},
              {"T", ext_json(rep.T)},
              {"family", to_json(rep.family)},
              {"window", to_string(rep.window)},
              {"J", ext_json(rep.J)},
              {"zero_count_used", rep.zero_count_used},
              {"zero_count_excluded", rep.zero_count_excluded}};
    if (rep.comparison) j["comparison"] = {{"model_value", rep.comparison->model_value}, {"ratio", rep.comparison->ratio}};
    return j;
}

json to_json(const FamilyResult& res, bool with_indices) {
    json j = {{"threshold", res.threshold},
              {"included_count", res.included.size()},
              {"excluded_count", res.excluded.size()},
              {"excluded_fraction", res.excluded_fraction}};
    if (with_indices) {
        j["included"] = res.included;
        j["excluded"] = res.excluded;
    } else {
        j["excluded"] = res.excluded;
    }
    return j;
}

json to_json(const FitResult& fit) {
    return {{"k", fit.k},
            {"exponent", fit.exponent},
            {"target", fit.target},
            {"intercept", fit.intercept},
            {"T", fit.T},
            {"log_J_over_T", fit.log_j_over_t},
            {"residuals", fit.residuals},
            {"model_log_ratio", fit.model_log_ratio}};
}

json to_json(const SMaxScan& scan) {
    return {{"max_abs_S", scan.max_abs_s},
            {"argmax", ext_json(scan.argmax)},
            {"one_sided_from_right", scan.one_sided_from_right},
            {"ratio_conjectured", scan.ratio_conjectured},
            {"ratio_littlewood", scan.ratio_littlewood},
            {"max_S", scan.max_s},
            {"min_S", scan.min_s}};
}

json to_json(const WmcResult& res) {
    return {{"X", res.X}, {"integral", ext_json(res.integral)}, {"ratio", res.ratio}};
}

json to_json(const FormulaReport& rep) {
    json j;
    j["op"] = rep.op;
    j["lhs"] = ext_json(rep.lhs);
    json terms = json::object();
    for (const auto& m : rep.main_terms) terms[m.name] = ext_json(m.value);
    j["main_terms"] = terms;
    for (const auto& m : rep.main_terms) j[m.name] = m.value.re().to_double();
    j["residual"] = ext_json(rep.residual);
    json budget = json::object();
    for (const auto& b : rep.budget_terms) budget[b.first] = ext_json(b.second);
    j["budget_terms"] = budget;
    j["budget"] = ext_json(rep.error_budget);
    j["ratio"] = rep.ratio;
    j["imag_residue"] = rep.imag_residue;
    j["zero_count"] = rep.zero_count;
    j["budget_constant"] = 1.0;
    return j;
}

json to_json(const LadderParams& p) {
    return {{"regime", to_string(p.regime)},
            {"k", p.k},
            {"eps", p.eps},
            {"delta", p.delta},
            {"a", p.a},
            {"r", p.r},
            {"d", p.d},
            {"c", p.c},
            {"K", p.K},
            {"beta", p.beta},
            {"s", p.s},
            {"ell", p.ell},
            {"Delta", p.Delta},
            {"T", ext_json(p.T)}};
}

json to_json(const LadderValidation& v) {
    json cons = json::array();
    for (const auto& c : v.constraints) {
        cons.push_back({{"name", c.name}, {"slack", c.slack}, {"informational", c.informational}});
    }
    return {{"ok", v.ok}, {"constraints", cons}, {"violations", v.violations}};
}

json to_json(const KirilaReport& r) {
    return {{"index", r.index},
            {"gamma", ext_json(r.gamma)},
            {"alpha", r.alpha},
            {"H", r.H},
            {"lhs", r.lhs},
            {"log_zeta_shift", r.log_zeta_shift},
            {"linear_term", r.linear_term},
            {"minus_log_alpha", r.log_alpha},
            {"M2_truncated", r.m2_truncated},
            {"M2_tail", r.m2_tail},
            {"M1", r.m1},
            {"neighbours", r.neighbours},
            {"D", r.D}};
}

json to_json(const PointwiseBound& pb) {
    return {{"gamma", ext_json(pb.gamma)}, {"eps", pb.eps}, {"T", pb.T},
            {"lhs", pb.lhs}, {"rhs", pb.rhs}, {"ratio", pb.ratio}};
}

json to_json(const TuringReport& r) {
    return {{"certified", r.certified},
            {"top_gram_index", r.top_gram_index},
            {"bottom_gram_index", r.bottom_gram_index},
            {"stored_count", r.stored_count},
            {"expected_count", r.expected_count},
            {"blocks_required", r.blocks_required},
            {"blocks_checked_above", r.blocks_checked_above},
            {"blocks_checked_below", r.blocks_checked_below},
            {"S_at_top", r.s_at_top},
            {"turing_integral_bound", r.turing_integral_bound},
            {"failure", r.failure}};
}

json to_json(const TruncExpScan& s) {
    return {{"ell", s.ell}, {"samples", s.samples}, {"worst_ratio", s.worst_ratio},
            {"witness", {s.witness.real(), s.witness.imag()}}};
}

json to_json(const IdentityCheck& c) {
    return {{"equal", c.equal}, {"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}, {"monomials", c.monomials}};
}

json to_json(const S1S2& s) {
    return {{"S1", s.S1}, {"S2", s.S2}, {"o_constant", s.o_constant}, {"o_exponent", s.o_exponent}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << dump(j);
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw FormatError("CSV row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << str();
}

}  // namespace zml
