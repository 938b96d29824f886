#pragma once

#include <filesystem>
#include <string>

#include "magnus/embedding.hpp"

#include "magnus/flows.hpp"
#include "magnus/group_spec.hpp"
#include "magnus/knapsack.hpp"

namespace magnus {

std::string read_text_file(const std::filesystem::path& path);

// Group objects: {"kind": ..., "rank": n, "degree": d} or, for the finite
// kinds, {"kind": ..., "table": <table object> | "s3" | "<path>"}. Relative
// table paths resolve against `base_dir`.
GroupSpec parse_group_spec(const std::string& json_text, const std::filesystem::path& base_dir = {});

SspInstance parse_ssp(const std::string& json_text, const std::filesystem::path& base_dir = {});
std::string ssp_to_json(const SspInstance& inst, int indent = 2);

ZoeInstance parse_zoe(const std::string& json_text);
std::string zoe_to_json(const ZoeInstance& z);

AgpInstance parse_agp(const std::string& json_text, const std::filesystem::path& base_dir = {});
std::string agp_to_json(const AgpInstance& inst);

// Records {tail: representative word, generator, value} in key order.
std::string flow_to_json(const GroupOracle& oracle, const FlowMap& f);
// {"image": {"key", "word"}, "flow": [records]}
std::string magnus_to_json(const GroupOracle& base, const MagnusElement& m);

}  // namespace magnus
