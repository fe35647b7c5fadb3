#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zml/ext_real.hpp"
#include "zml/formulas.hpp"
#include "zml/harper.hpp"
#include "zml/kirila.hpp"
#include "zml/ladder.hpp"
#include "zml/statistics.hpp"
#include "zml/zeros.hpp"

namespace zml {

using json = nlohmann::ordered_json;

/// ExtReal as a 32-significant-digit string so no precision is lost.
json ext_json(const ExtReal& x);
json ext_json(const ExtComplex& z);

/// {op, params, values, provenance: {cache_checksum}}. No timestamps, so
/// identical inputs give byte-identical output.
json envelope(const std::string& op, json params, json values, const std::string& cache_checksum);

json to_json(const FamilySpec& spec);
json to_json(const MomentReport& rep);
json to_json(const FamilyResult& res, bool with_indices = false);
json to_json(const FitResult& fit);
json to_json(const SMaxScan& scan);
json to_json(const WmcResult& res);
json to_json(const FormulaReport& rep);
json to_json(const LadderParams& params);
json to_json(const LadderValidation& v);
json to_json(const KirilaReport& rep);
json to_json(const PointwiseBound& pb);
json to_json(const TuringReport& rep);
json to_json(const TruncExpScan& scan);
json to_json(const IdentityCheck& check);
json to_json(const S1S2& s);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const json& j);
void write_json(const std::string& path, const json& j);

/// %.17g, the shortest form that round-trips a double.
std::string csv_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(std::vector<std::string> cells);
    std::string str() const;
    void write(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace zml
