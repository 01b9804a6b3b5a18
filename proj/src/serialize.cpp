#include "fsub/serialize.hpp"

#include <stdexcept>

#include "fsub/parser.hpp"

namespace fsubtype {

Json to_json(const Derivation& d) {
  const VarSet names = dom_set(d.env());
  Json j;
  j["rule"] = std::string(rule_name(d.rule()));
  j["env"] = print_env(d.env());
  j["lhs"] = print_type(d.lhs(), names);
  j["rhs"] = print_type(d.rhs(), names);
  j["witness"] = d.witness() ? Json(d.witness()->str()) : Json(nullptr);
  Json premises = Json::array();
  for (const auto& p : d.premises()) premises.push_back(to_json(p));
  j["premises"] = std::move(premises);
  return j;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("derivation document lacks \"") + key + "\"");
  }
  return j.at(key);
}

std::string text_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw std::invalid_argument(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace

Derivation derivation_from_json(const Json& j) {
  const std::string name = text_field(j, "rule");
  auto rule = rule_from_name(name);
  if (!rule) throw std::invalid_argument("unknown rule \"" + name + "\"");
  Judgment concl{parse_env(text_field(j, "env")), parse_type(text_field(j, "lhs")),
                 parse_type(text_field(j, "rhs"))};
  std::optional<VarName> witness;
  const Json& w = field(j, "witness");
  if (w.is_string()) {
    witness = VarName(w.get<std::string>());
  } else if (!w.is_null()) {
    throw std::invalid_argument("\"witness\" must be a string or null");
  }
  const Json& ps = field(j, "premises");
  if (!ps.is_array()) throw std::invalid_argument("\"premises\" must be an array");
  std::vector<Derivation> premises;
  for (const auto& p : ps) premises.push_back(derivation_from_json(p));
  return Derivation(*rule, std::move(concl), std::move(premises), std::move(witness));
}

std::string serialize(const Derivation& d) { return to_json(d).dump(); }

Derivation parse_derivation(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed derivation document: ") + e.what());
  }
  return derivation_from_json(j);
}

}  // namespace fsubtype
