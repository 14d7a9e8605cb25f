#pragma once

// JSON forms of the configuration types:
//   DomainSpec  {"kind": "I|II|III|IV|product", "params": [...]}
//               (a product lists its factor specs in "params")
//   HartogsSpec {"base": <DomainSpec>, "mu": number}
//   Truncation  {"k_max": int, "a_max": int}

#include <json.hpp>
#include <string>
#include <vector>

#include "hartogs/domain_spec.hpp"
#include "hartogs/errors.hpp"
#include "hartogs/hartogs.hpp"
#include "hartogs/l2embed.hpp"
#include "hartogs/numerics/complex.hpp"

namespace hartogs {

using json = nlohmann::json;

inline json to_json_value(const DomainSpec& spec) {
  json j;
  switch (spec.kind()) {
    case DomainKind::TypeI: j["kind"] = "I"; break;
    case DomainKind::TypeII: j["kind"] = "II"; break;
    case DomainKind::TypeIII: j["kind"] = "III"; break;
    case DomainKind::TypeIV: j["kind"] = "IV"; break;
    case DomainKind::Product: j["kind"] = "product"; break;
  }
  if (spec.kind() == DomainKind::Product) {
    j["params"] = json::array();
    for (const auto& f : spec.factors()) j["params"].push_back(to_json_value(f));
  } else {
    j["params"] = spec.params();
  }
  return j;
}

inline DomainSpec domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("params") || !j["kind"].is_string() || !j["params"].is_array())
    throw InvalidArgument("domain spec must be an object with string \"kind\" and array \"params\"");
  const std::string kind = j["kind"].get<std::string>();
  const json& p = j["params"];
  auto ints = [&](std::size_t count) {
    if (p.size() != count) throw InvalidArgument("domain kind " + kind + " takes " + std::to_string(count) + " parameter(s)");
    std::vector<int> v;
    for (const auto& x : p) {
      if (!x.is_number_integer()) throw InvalidArgument("domain parameters must be integers");
      v.push_back(x.get<int>());
    }
    return v;
  };
  if (kind == "I") {
    const auto v = ints(2);
    return DomainSpec::type_i(v[0], v[1]);
  }
  if (kind == "II") return DomainSpec::type_ii(ints(1)[0]);
  if (kind == "III") return DomainSpec::type_iii(ints(1)[0]);
  if (kind == "IV") return DomainSpec::type_iv(ints(1)[0]);
  if (kind == "product") {
    std::vector<DomainSpec> factors;
    for (const auto& f : p) factors.push_back(domain_from_json(f));
    return DomainSpec::product(std::move(factors));
  }
  throw InvalidArgument("unknown domain kind \"" + kind + "\"");
}

inline json to_json_value(const HartogsSpec& spec) { return json{{"base", to_json_value(spec.base())}, {"mu", spec.mu()}}; }

inline HartogsSpec hartogs_from_json(const json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("mu") || !j["mu"].is_number())
    throw InvalidArgument("Hartogs spec must be an object with \"base\" and numeric \"mu\"");
  return HartogsSpec(domain_from_json(j["base"]), j["mu"].get<double>());
}

inline json to_json_value(const Truncation& t) { return json{{"k_max", t.k_max}, {"a_max", t.a_max}}; }

inline Truncation truncation_from_json(const json& j) {
  Truncation t;
  if (!j.is_object()) throw InvalidArgument("truncation must be an object");
  if (j.contains("k_max")) t.k_max = j["k_max"].get<int>();
  if (j.contains("a_max")) t.a_max = j["a_max"].get<int>();
  t.validate();
  return t;
}

/// Complex numbers as [re, im] pairs; plain numbers are read as real.
inline json to_json_value(const complex& c) { return json::array({c.real(), c.imag()}); }

inline complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidArgument("complex value must be a number or a [re, im] pair");
}

inline json to_json_value(const CVector& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json_value(c));
  return a;
}

inline CVector cvector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("complex vector must be an array");
  CVector v;
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

}  // namespace hartogs
