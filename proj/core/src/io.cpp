#include "magnus/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "magnus/errors.hpp"

namespace magnus {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
}

template <typename F>
auto with_schema(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

const json& require(const json& j, const char* field) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  auto it = j.find(field);
  if (it == j.end()) throw ValidationError(std::string("missing field '") + field + "'");
  return *it;
}

Word word_field(const json& j, const Alphabet& alphabet) {
  if (!j.is_string()) throw ValidationError("words must be JSON strings");
  return parse_word(j.get<std::string>(), alphabet);
}

GroupSpec group_from_json(const json& j, const std::filesystem::path& base_dir) {
  GroupSpec spec;
  spec.kind = parse_group_kind(require(j, "kind").get<std::string>());
  if (auto it = j.find("rank"); it != j.end()) spec.rank = it->get<int>();
  if (auto it = j.find("degree"); it != j.end()) {
    if (spec.kind != GroupKind::free_solvable) throw ValidationError("degree applies to free-solvable only");
    spec.degree = it->get<int>();
  }
  if (auto it = j.find("table"); it != j.end()) {
    if (it->is_object()) {
      spec.table = parse_mul_table(it->dump());
    } else {
      const auto name = it->get<std::string>();
      if (name == "s3") {
        spec.table = symmetric_group_s3();
      } else {
        std::filesystem::path p(name);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        spec.table = parse_mul_table(read_text_file(p));
      }
    }
  }
  spec.validate();
  return spec;
}

json group_to_json(const GroupSpec& g) {
  json j;
  j["kind"] = to_string(g.kind);
  if (g.table) {
    j["table"] = json::parse(mul_table_to_json(*g.table));
  } else {
    j["rank"] = g.rank;
    if (g.kind == GroupKind::free_solvable) j["degree"] = g.degree;
  }
  return j;
}

json flow_records(const GroupOracle& oracle, const FlowMap& f) {
  json records = json::array();
  for (const auto& [edge, value] : f.entries())
    records.push_back({{"tail", format_word(oracle.representative(edge.tail))},
                       {"tail_key", oracle.describe(edge.tail)},
                       {"generator", edge.generator},
                       {"value", value}});
  return records;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupSpec parse_group_spec(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json j = parse_json(json_text);
  return with_schema("group", [&] { return group_from_json(j, base_dir); });
}

SspInstance parse_ssp(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json j = parse_json(json_text);
  return with_schema("SSP instance", [&] {
    SspInstance inst;
    inst.group = group_from_json(require(j, "group"), base_dir);
    const Alphabet alphabet(inst.group.effective_rank());
    const json& gens = require(j, "generators");
    if (!gens.is_array()) throw ValidationError("generators must be an array");
    for (const auto& g : gens) inst.generators.push_back(word_field(g, alphabet));
    inst.target = word_field(require(j, "target"), alphabet);
    return inst;
  });
}

std::string ssp_to_json(const SspInstance& inst, int indent) {
  json j;
  j["group"] = group_to_json(inst.group);
  j["generators"] = json::array();
  for (const auto& g : inst.generators) j["generators"].push_back(format_word(g));
  j["target"] = format_word(inst.target);
  return j.dump(indent);
}

ZoeInstance parse_zoe(const std::string& json_text) {
  const json j = parse_json(json_text);
  return with_schema("ZOE instance", [&] {
    ZoeInstance z;
    z.matrix = require(j, "matrix").get<std::vector<std::vector<int>>>();
    z.validate();
    return z;
  });
}

std::string zoe_to_json(const ZoeInstance& z) { return json{{"matrix", z.matrix}}.dump(); }

AgpInstance parse_agp(const std::string& json_text, const std::filesystem::path& base_dir) {
  const json j = parse_json(json_text);
  return with_schema("AGP instance", [&] {
    AgpInstance inst;
    if (auto it = j.find("group"); it != j.end()) inst.group = group_from_json(*it, base_dir);
    const Alphabet alphabet(inst.group ? inst.group->effective_rank() : std::numeric_limits<int>::max());
    inst.vertices = require(j, "vertices").get<std::size_t>();
    const json& edges = require(j, "edges");
    if (!edges.is_array()) throw ValidationError("edges must be an array");
    for (const auto& e : edges)
      inst.edges.push_back({require(e, "from").get<std::size_t>(), require(e, "to").get<std::size_t>(),
                            word_field(require(e, "label"), alphabet)});
    inst.source = require(j, "source").get<std::size_t>();
    inst.sink = require(j, "sink").get<std::size_t>();
    inst.target = word_field(require(j, "target"), alphabet);
    inst.validate();
    return inst;
  });
}

std::string agp_to_json(const AgpInstance& inst) {
  json j;
  if (inst.group) j["group"] = group_to_json(*inst.group);
  j["vertices"] = inst.vertices;
  j["edges"] = json::array();
  for (const auto& e : inst.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", format_word(e.label)}});
  j["source"] = inst.source;
  j["sink"] = inst.sink;
  j["target"] = format_word(inst.target);
  return j.dump(2);
}

std::string flow_to_json(const GroupOracle& oracle, const FlowMap& f) { return flow_records(oracle, f).dump(); }

std::string magnus_to_json(const GroupOracle& base, const MagnusElement& m) {
  json j;
  j["image"] = {{"key", base.describe(m.image)}, {"word", format_word(base.representative(m.image))}};
  j["flow"] = flow_records(base, m.flow);
  return j.dump();
}

}  // namespace magnus
