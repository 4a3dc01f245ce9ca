// JSON views of library results and their text/CSV renderings.
#pragma once

#include <string>

#include <json.hpp>

#include "lcfn/scenario.hpp"

namespace lcfn::cli {

using Json = nlohmann::ordered_json;

enum class Format { Json, Text, Csv };

/// {"schema":1,"verb":verb}
Json envelope(const std::string& verb);

Json literal_json(const LcfnD& b);
Json coords_json(const Eigen::Vector2d& v);

Json to_json(const FtcReport& r);
Json to_json(const IbpReport& r);
Json to_json(const ProductRuleReport& r);
Json to_json(const SquareIntegralReport& r);
Json to_json(const InterchangeReport& r);
Json to_json(const CriticalPoint& cp, const LocalOrderReport& local);
Json to_json(const LagrangeWitness& w);
Json to_json(const LagrangeScanReport& r);
Json to_json(const DbrForwardReport& r);
Json to_json(const ReconstructionResult& r);

/// Aligned `key  value` lines; arrays of records become tables.
std::string render_text(const Json& doc);

/// The "records" array as CSV. Throws ConfigError when there is none.
std::string render_csv(const Json& doc);

std::string render(const Json& doc, Format format);

}  // namespace lcfn::cli
