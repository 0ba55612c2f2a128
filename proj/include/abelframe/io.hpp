#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "abelframe/modrep.hpp"
#include "abelframe/potential_opt.hpp"

namespace abelframe::io {

using json = nlohmann::json;

// Wire formats. Complex numbers are [re, im] pairs; every array indexed by a
// group follows the canonical element (or label) order.
//   group     {"moduli": [2, 4]}
//   subgroup  {"generators": [[0, 2], [1, 0]]}
//   signal    [[re, im], ...]
//   bank      {"group": ..., "subgroup": ..., "filters": [signal, ...]}
//   problem   {"group": ..., "subgroup": ..., "norms": [...], "seed": ...,
//              "max_iters": ..., "grad_tol": ..., "tight_eps": ..., "tol": ...}

json to_json(const GroupSpec& g);
GroupSpec group_from_json(const json& j);

json to_json(const GroupElement& x);
GroupElement element_from_json(const GroupSpec& g, const json& j);

json to_json(const Subgroup& h);
Subgroup subgroup_from_json(const GroupSpec& g, const json& j);

json complex_array(std::span<const Complex> values);
std::vector<Complex> complex_array_from_json(const json& j);

json to_json(const FilterBank& fb);
FilterBank bank_from_json(const json& j);

json character_to_json(const GroupElement& label);
json character_to_json(const SubgroupCharacter& chi);

json to_json(const SpectralBlocks& blocks, const GroupSpec& g);

DesignProblem problem_from_json(const json& j);
json to_json(const PartitionReport& r);
json to_json(const UnderdeterminedReport& r);
json to_json(const DesignReport& r);

/// Serializes with 17 significant digits for every floating point value and a
/// fixed two-space layout, so equal documents produce identical bytes.
std::string dump(const json& j);

json parse_file(const std::string& path);
/// Inline JSON when the text starts with '{' or '[', otherwise a file path.
json parse_inline_or_file(const std::string& text);

/// Writes to path + ".tmp" and renames on success.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace abelframe::io
