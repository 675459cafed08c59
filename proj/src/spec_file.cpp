#include "blockalg/spec_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "blockalg/error.hpp"

namespace blockalg {

namespace {

using nlohmann::json;

Rat rat_field(const json& v) {
  if (v.is_string()) {
    try {
      return parse_rat(v.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::SpecInvalid, std::string("bad rational in spec: ") + e.what());
    }
  }
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw Error(ErrorCode::SpecInvalid, "rational must be a string like \"1/2\" or an integer, got " + v.dump());
}

JType j_field(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "N") return JType::Nat;
    if (s == "0") return JType::Zero;
  } else if (v.is_number_integer() && v.get<long>() == 0) {
    return JType::Zero;
  }
  throw Error(ErrorCode::SpecInvalid, "J entries are \"0\" or \"N\", got " + v.dump());
}

}  // namespace

SpecPtr parse_spec_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SpecInvalid, std::string("spec file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SpecInvalid, "spec file must be a JSON object");
  if (!doc.contains("gamma") || !doc["gamma"].is_object() || !doc["gamma"].contains("generators") ||
      !doc["gamma"]["generators"].is_array())
    throw Error(ErrorCode::SpecInvalid, "missing gamma.generators array");
  std::vector<Vec2> gens;
  for (const auto& g : doc["gamma"]["generators"]) {
    if (!g.is_array() || g.size() != 2) throw Error(ErrorCode::SpecInvalid, "generator must be a pair, got " + g.dump());
    gens.push_back({rat_field(g[0]), rat_field(g[1])});
  }
  if (!doc.contains("J") || !doc["J"].is_array() || doc["J"].size() != 2)
    throw Error(ErrorCode::SpecInvalid, "J must be a pair such as [\"N\",\"0\"]");
  JSpec j{j_field(doc["J"][0]), j_field(doc["J"][1])};
  if (doc.contains("mode") && doc["mode"] != "auto")
    throw Error(ErrorCode::SpecInvalid, "only mode \"auto\" is supported, got " + doc["mode"].dump());
  return spec_validate(Lattice(std::move(gens)), j);
}

SpecPtr load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SpecInvalid, "cannot read spec file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

std::string spec_to_text(const AlgebraSpec& spec) {
  nlohmann::ordered_json doc;
  doc["gamma"]["generators"] = nlohmann::ordered_json::array();
  for (const auto& g : spec.gamma.generators())
    doc["gamma"]["generators"].push_back({to_string(g.c1), to_string(g.c2)});
  doc["J"] = {spec.j.nat(1) ? "N" : "0", spec.j.nat(2) ? "N" : "0"};
  doc["mode"] = "auto";
  return doc.dump();
}

}  // namespace blockalg
