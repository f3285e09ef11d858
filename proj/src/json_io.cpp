#include "rpt/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace rpt {

using nlohmann::json;

namespace {

json index_to_json(const MultiIndex& index) {
  json out = json::array();
  for (int e : index) out.push_back(e);
  return out;
}

MultiIndex index_from_json(const json& j) {
  MultiIndex out;
  for (const auto& e : j) out.push_back(e.get<int>());
  return out;
}

json entries_to_json(const CoefficientMap& entries) {
  json out = json::array();
  for (const auto& [index, value] : entries) {
    out.push_back({{"index", index_to_json(index)}, {"value", rational_to_string(value)}});
  }
  return out;
}

std::vector<std::pair<MultiIndex, Rational>> entries_from_json(const json& j) {
  std::vector<std::pair<MultiIndex, Rational>> out;
  for (const auto& entry : j) {
    out.emplace_back(index_from_json(entry.at("index")),
                     rational_from_string(entry.at("value").get<std::string>()));
  }
  return out;
}

std::string variance_letter(Variance v) { return v == Variance::upper ? "u" : "l"; }

Variance variance_from_letter(const std::string& s) {
  if (s == "u") return Variance::upper;
  if (s == "l") return Variance::lower;
  throw std::invalid_argument("variance must be \"u\" or \"l\"");
}

std::string kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::bare:
      return "bare";
    case VertexKind::physical:
      return "physical";
    case VertexKind::generic:
      return "generic";
  }
  throw std::logic_error("unreachable vertex kind");
}

VertexKind kind_from_name(const std::string& s) {
  if (s == "bare") return VertexKind::bare;
  if (s == "physical") return VertexKind::physical;
  if (s == "generic") return VertexKind::generic;
  throw std::invalid_argument("vertex kind must be bare, physical or generic");
}

}  // namespace

json series_to_json(const Series& s) {
  return json{{"num_vars", s.num_vars()},
              {"truncation_order", s.truncation_order()},
              {"coeffs", entries_to_json(s.coefficients())}};
}

Series series_from_json(const json& j) {
  return Series::make(j.at("num_vars").get<int>(), j.at("truncation_order").get<int>(),
                      entries_from_json(j.at("coeffs")));
}

json moment_table_to_json(const MomentTable& t) {
  return json{{"num_types", t.num_types()},
              {"max_order", t.max_order()},
              {"values", entries_to_json(t.values())}};
}

MomentTable moment_table_from_json(const json& j) {
  return MomentTable::make(j.at("num_types").get<int>(), j.at("max_order").get<int>(),
                           entries_from_json(j.at("values")));
}

json cumulant_table_to_json(const CumulantTable& t) {
  return json{{"num_types", t.num_types()},
              {"max_order", t.max_order()},
              {"values", entries_to_json(t.values())}};
}

CumulantTable cumulant_table_from_json(const json& j) {
  return CumulantTable::make(j.at("num_types").get<int>(), j.at("max_order").get<int>(),
                             entries_from_json(j.at("values")));
}

json diagram_to_json(const Diagram& d) {
  json vertices = json::array();
  for (const Vertex& v : d.vertices()) {
    vertices.push_back({{"id", v.id}, {"kind", kind_name(v.kind)}});
  }
  json edges = json::array();
  for (const Edge& e : d.edges()) {
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"type", e.type},
                     {"variance", variance_letter(e.var_u) + variance_letter(e.var_v)}});
  }
  json legs = json::array();
  for (const ExternalLeg& leg : d.external_legs()) {
    legs.push_back({{"vertex", leg.vertex},
                    {"type", leg.type},
                    {"variance", variance_letter(leg.variance)}});
  }
  return json{{"model",
               {{"dim_gauge", d.model().dim_gauge},
                {"dim_matter", d.model().dim_matter},
                {"coupling", rational_to_string(d.model().coupling)}}},
              {"vertices", vertices},
              {"edges", edges},
              {"external_legs", legs}};
}

Diagram diagram_from_json(const json& j) {
  const json& jm = j.at("model");
  ModelSpec model;
  model.dim_gauge = jm.at("dim_gauge").get<int>();
  model.dim_matter = jm.at("dim_matter").get<int>();
  model.coupling = rational_from_string(jm.at("coupling").get<std::string>());
  std::vector<Vertex> vertices;
  for (const auto& jv : j.at("vertices")) {
    vertices.push_back({jv.at("id").get<int>(), kind_from_name(jv.at("kind").get<std::string>())});
  }
  std::vector<Edge> edges;
  for (const auto& je : j.at("edges")) {
    const std::string pair = je.at("variance").get<std::string>();
    if (pair.size() != 2) throw std::invalid_argument("edge variance must be two letters");
    edges.push_back({je.at("u").get<int>(), je.at("v").get<int>(), je.at("type").get<int>(),
                     variance_from_letter(pair.substr(0, 1)),
                     variance_from_letter(pair.substr(1, 1))});
  }
  std::vector<ExternalLeg> legs;
  for (const auto& jl : j.at("external_legs")) {
    legs.push_back({jl.at("vertex").get<int>(), jl.at("type").get<int>(),
                    variance_from_letter(jl.at("variance").get<std::string>())});
  }
  return Diagram::make(model, std::move(vertices), std::move(edges), std::move(legs));
}

json divergence_report_to_json(const DivergenceReport& r) {
  json out{{"el", r.el},
           {"paper_degree", r.paper_degree},
           {"per_line_exponent",
            r.per_line_exponent ? json(rational_to_string(*r.per_line_exponent)) : json(nullptr)},
           {"loop_degree", r.loop_degree},
           {"sobolev_index", rational_to_string(r.sobolev_index)},
           {"shifted_degree", rational_to_string(r.shifted_degree)},
           {"lattice_label", r.lattice_label ? json(*r.lattice_label) : json(nullptr)}};
  switch (r.classification) {
    case DivergenceClass::convergent:
      out["classification"] = "convergent";
      break;
    case DivergenceClass::logarithmic:
      out["classification"] = "logarithmic";
      break;
    case DivergenceClass::power_divergent:
      out["classification"] = "power-divergent";
      break;
  }
  return out;
}

json variation_report_to_json(const VariationReport& r) {
  json mismatch(nullptr);
  if (r.mismatch) {
    mismatch = json{{"order", index_to_json(r.mismatch->index)},
                    {"lhs", rational_to_string(r.mismatch->lhs)},
                    {"rhs", rational_to_string(r.mismatch->rhs)}};
  }
  return json{{"identity", r.identity},
              {"members", r.members},
              {"order_checked", r.checked_order},
              {"mismatch", mismatch}};
}

json mixed_cumulant_report_to_json(const MixedCumulantReport& r) {
  json entries = json::array();
  for (const auto& [index, value] : r.nonzero_mixed) {
    entries.push_back({{"index", index_to_json(index)}, {"value", rational_to_string(value)}});
  }
  return json{{"group_a_types", r.group_a_types},
              {"group_b_types", r.group_b_types},
              {"max_order", r.max_order},
              {"nonzero_mixed", entries}};
}

std::string diagram_to_dot(const Diagram& d) {
  std::ostringstream out;
  out << "graph diagram {\n";
  for (const Vertex& v : d.vertices()) {
    out << "  v" << v.id << " [label=\"" << v.id << ":" << kind_name(v.kind) << "\"];\n";
  }
  for (const Edge& e : d.edges()) {
    out << "  v" << e.u << " -- v" << e.v << " [label=\"t" << e.type << " "
        << variance_letter(e.var_u) << variance_letter(e.var_v) << "\"];\n";
  }
  for (size_t i = 0; i < d.external_legs().size(); ++i) {
    const ExternalLeg& leg = d.external_legs()[i];
    out << "  ext" << i << " [shape=box,label=\"leg " << i << "\"];\n";
    out << "  v" << leg.vertex << " -- ext" << i << " [style=dashed,label=\"t" << leg.type << " "
        << variance_letter(leg.variance) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rpt
