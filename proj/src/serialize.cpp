#include "qehrhart/serialize.hpp"

#include <sstream>

namespace qehrhart {

Json to_json(const MultiPoly& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.terms()) out.push_back({{"exp", e}, {"coeff", to_string(c)}});
  return out;
}

MultiPoly poly_from_json(const Json& j, std::size_t dim) {
  MultiPoly f(dim);
  for (const auto& term : j) f.add_term(term.at("exp").get<IntVector>(), parse_rational(term.at("coeff").get<std::string>()));
  return f;
}

Json to_json(const Polytope& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(to_string(x));
    verts.push_back(row);
  }
  Json facets = Json::array();
  for (const auto& f : p.facets()) facets.push_back({{"normal", f.normal}, {"offset", to_string(f.offset)}});
  return {{"dim", p.dim()}, {"vertices", verts}, {"facets", facets}};
}

Json to_json(const LatticePointSet& z) { return {{"dim", z.dim}, {"count", z.size()}, {"points", z.points}}; }

Json to_json(const BigradedTable& table) {
  Json rows = Json::array();
  Json entries = Json::array();
  for (std::size_t m = 0; m < table.rows.size(); ++m) {
    rows.push_back({{"m", m}, {"dims", table.rows[m]}});
    for (std::size_t d = 0; d < table.rows[m].size(); ++d)
      entries.push_back({{"m", m}, {"d", d}, {"dim", table.rows[m][d]}});
  }
  return {{"rows", rows}, {"entries", entries}};
}

BigradedTable bigraded_from_json(const Json& j) {
  BigradedTable table;
  for (const auto& row : j.at("rows")) {
    const auto m = row.at("m").get<std::size_t>();
    if (m != table.rows.size()) throw ParseError("bigraded table rows out of order");
    table.rows.push_back(row.at("dims").get<std::vector<std::size_t>>());
  }
  return table;
}

Json to_json(const FiltrationTable& table, bool include_bases) {
  Json out{{"m", table.m}, {"support", table.support.points}, {"dims", table.dims}};
  Json entries = Json::array();
  for (std::size_t d = 0; d < table.dims.size(); ++d) entries.push_back({{"m", table.m}, {"d", d}, {"dim", table.dims[d]}});
  out["entries"] = entries;
  if (include_bases && !table.bases.empty()) {
    Json bases = Json::array();
    for (std::size_t d = 0; d < table.bases.size(); ++d) {
      Json piece = Json::array();
      for (std::size_t r = 0; r < table.bases[d].rows(); ++r) piece.push_back(to_json(table.element(d, r)));
      bases.push_back({{"d", d}, {"basis", piece}});
    }
    out["bases"] = bases;
  }
  return out;
}

Json to_json(const HarmonicBasis& basis) {
  Json parts = Json::array();
  for (std::size_t d = 0; d < basis.graded_parts.size(); ++d) {
    Json polys = Json::array();
    for (const auto& f : basis.graded_parts[d]) polys.push_back(to_json(f));
    parts.push_back({{"d", d}, {"dim", basis.graded_parts[d].size()}, {"basis", polys}});
  }
  return {{"dims", basis.dims()}, {"graded_parts", parts}};
}

Json to_json(const GeneratorReport& report) {
  Json counts = Json::array();
  for (const auto& c : report.counts) counts.push_back({{"m", c.m}, {"d", c.d}, {"count", c.count}});
  Json gens = Json::array();
  for (const auto& g : report.generators) gens.push_back({{"m", g.m}, {"d", g.d}, {"poly", to_json(g.poly)}});
  return {{"counts", counts}, {"generators", gens}, {"closure_violations", report.closure_violations}};
}

Json to_json(const gk::GKReport& report) {
  Json vanishing = Json::array();
  for (const auto& v : report.vanishing)
    vanishing.push_back({{"m", v.m},
                         {"order", v.order},
                         {"witness", to_json(v.witness)},
                         {"witness_text", v.witness.to_string()},
                         {"verified_order", v.verified_order}});
  Json divisibility = Json::array();
  for (const auto& r : report.divisibility) divisibility.push_back({{"m", r.m}, {"d", r.d}, {"divisible", r.divisible}});
  Json property3 = Json::array();
  for (const auto& r : report.property3) {
    Json rec{{"m", r.m}, {"d", r.d}, {"k_max", r.k_max}};
    if (r.hit) {
      rec["outcome"] = "found";
      rec["k"] = r.hit->k;
      rec["witness"] = to_json(r.hit->witness);
    } else {
      rec["outcome"] = "inconclusive";
    }
    property3.push_back(rec);
  }
  Json growth = Json::array();
  for (const auto& g : report.growth)
    growth.push_back({{"m", g.m},
                      {"new_generators", g.new_generators},
                      {"alpha", g.alpha ? Json(to_string(*g.alpha)) : Json(nullptr)}});
  return {{"polytope", report.polytope_id}, {"vanishing", vanishing}, {"divisibility", divisibility},
          {"property3", property3},        {"generator_growth", growth}, {"complete", report.complete},
          {"aborted_stage", report.aborted_stage}};
}

std::string to_csv(const BigradedTable& table) {
  std::ostringstream os;
  os << "m,d,dim\n";
  for (std::size_t m = 0; m < table.rows.size(); ++m)
    for (std::size_t d = 0; d < table.rows[m].size(); ++d) os << m << ',' << d << ',' << table.rows[m][d] << '\n';
  return os.str();
}

std::string to_csv(const FiltrationTable& table) {
  std::ostringstream os;
  os << "m,d,dim\n";
  for (std::size_t d = 0; d < table.dims.size(); ++d) os << table.m << ',' << d << ',' << table.dims[d] << '\n';
  return os.str();
}

}  // namespace qehrhart
