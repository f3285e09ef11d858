#ifndef RPT_JSON_IO_HPP
#define RPT_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "rpt/cumulants.hpp"
#include "rpt/diagram.hpp"
#include "rpt/power_counting.hpp"
#include "rpt/series.hpp"
#include "rpt/variational.hpp"

namespace rpt {

// All emitters produce canonical documents: object keys in nlohmann's
// sorted order, map entries in graded-lex order, rationals in canonical
// string form. Identical values serialize to identical bytes.

nlohmann::json series_to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

nlohmann::json moment_table_to_json(const MomentTable& t);
MomentTable moment_table_from_json(const nlohmann::json& j);

nlohmann::json cumulant_table_to_json(const CumulantTable& t);
CumulantTable cumulant_table_from_json(const nlohmann::json& j);

nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

nlohmann::json divergence_report_to_json(const DivergenceReport& r);

nlohmann::json variation_report_to_json(const VariationReport& r);

nlohmann::json mixed_cumulant_report_to_json(const MixedCumulantReport& r);

/// Undirected DOT rendering; external legs become dashed half-edges to
/// boxed terminals.
std::string diagram_to_dot(const Diagram& d);

}  // namespace rpt

#endif
