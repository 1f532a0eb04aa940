#pragma once

#include <string>

#include "json.hpp"
#include "qehrhart/generators.hpp"
#include "qehrhart/gk.hpp"
#include "qehrhart/harmonic.hpp"
#include "qehrhart/polytope.hpp"

namespace qehrhart {

using Json = nlohmann::json;

/// [{"exp": [...], "coeff": "p/q"}, ...] in ascending graded lex order.
Json to_json(const MultiPoly& f);
MultiPoly poly_from_json(const Json& j, std::size_t dim);

Json to_json(const Polytope& p);
Json to_json(const LatticePointSet& z);
/// {"rows": [{"m": m, "dims": [...]}, ...], "entries": [{"m", "d", "dim"}, ...]}
Json to_json(const BigradedTable& table);
BigradedTable bigraded_from_json(const Json& j);
Json to_json(const FiltrationTable& table, bool include_bases);
Json to_json(const HarmonicBasis& basis);
Json to_json(const GeneratorReport& report);
Json to_json(const gk::GKReport& report);

/// Header "m,d,dim" followed by one line per entry.
std::string to_csv(const BigradedTable& table);
std::string to_csv(const FiltrationTable& table);

}  // namespace qehrhart
