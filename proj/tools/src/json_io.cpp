#include "obtool/json_io.hpp"

#include <algorithm>
#include <climits>

namespace obtool {

namespace {

Json rational_json(const ob::Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return Json(r.get_num().get_si());
  return Json(ob::rational_string(r));
}

}  // namespace

Json scalar_json(const ob::Scalar& s) {
  if (s.is_constant()) return rational_json(s.constant_value());
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    Json vars = Json::object();
    for (const auto& [code, exp] : t.mono.factors()) vars[ob::Symbol::from_code(code).name()] = exp;
    terms.push_back({{"coeff", rational_json(t.coef)}, {"vars", vars}});
  }
  return terms;
}

Json diagram_json(const ob::NormalDiagram& d, const ob::Scalar& coeff) {
  const ob::Matching& m = d.matching();
  Json match = Json::array();
  for (std::uint32_t in : m.inputs()) match.push_back({in, m.partner(in)});
  Json dots = Json::object();
  for (std::uint32_t out : m.outputs())
    if (d.dots(out) > 0) dots[std::to_string(out)] = d.dots(out);
  return {{"match", match}, {"dots", dots}, {"coeff", scalar_json(coeff)}};
}

Json morphism_json(const ob::Morphism& m) {
  Json terms = Json::array();
  for (const auto& [d, c] : m.terms()) terms.push_back(diagram_json(d, c));
  return {{"source", m.source().to_string()}, {"target", m.target().to_string()}, {"terms", terms}};
}

Json basis_json(const std::vector<ob::BasisElement>& basis) {
  Json out = Json::array();
  for (const auto& b : basis) out.push_back(diagram_json(b.diagram, ob::Scalar::monomial(b.bubbles)));
  return out;
}

Json structure_json(const ob::StructureTable& table) {
  Json products = Json::array();
  for (std::size_t i = 0; i < table.products.size(); ++i) {
    for (std::size_t j = 0; j < table.products[i].size(); ++j) {
      Json terms = Json::array();
      for (const auto& [d, c] : table.products[i][j].terms()) {
        if (table.kind != ob::AlgebraKind::Affine) {
          Json t = diagram_json(d, c);
          const auto k = table.index_of(d, ob::Monomial{});
          t["basis"] = k ? Json(*k) : Json(nullptr);
          terms.push_back(std::move(t));
          continue;
        }
        // One entry per bubble monomial, so each refers to a single basis element.
        for (const auto& [mono, rest] : c.collect(ob::SymbolKind::Delta)) {
          Json t = diagram_json(d, rest);
          t["bubbles"] = scalar_json(ob::Scalar::monomial(mono));
          const auto k = table.index_of(d, mono);
          t["basis"] = k ? Json(*k) : Json(nullptr);
          terms.push_back(std::move(t));
        }
      }
      products.push_back({{"left", i}, {"right", j}, {"terms", terms}});
    }
  }
  return {{"word", table.word.to_string()}, {"basis", basis_json(table.basis)}, {"products", products}};
}

Json report_json(const ob::CheckReport& r, bool with_timing) {
  Json j = {{"name", r.name}, {"status", r.passed ? "pass" : "fail"}, {"detail", r.detail}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

Json document(const std::string& command) { return {{"schema", kSchemaVersion}, {"command", command}}; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace obtool
