#ifndef COCYCLELAB_IO_HPP
#define COCYCLELAB_IO_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "cocyclelab/cohomology.hpp"
#include "cocyclelab/limits.hpp"
#include "cocyclelab/ses.hpp"

namespace cocyclelab::io {

/// All documents are UTF-8 JSON with a fixed field order on output; integers
/// and rationals are serialized as decimal strings ("n" or "n/d") so the
/// interchange stays exact.
using json = nlohmann::ordered_json;

json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);
json big_to_json(const BigInt& b);
BigInt big_from_json(const json& j);

// group: {order, mul, label?}
json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const json& j);

// hom: {source, target, map}
json hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const json& j);

// module: {group?, coefficients: {kind, rank|factors|dimension|base},
//          action: {type} | {type, matrices}, isometric}
// The group may be embedded or supplied separately.
json module_to_json(const GModule& m, bool with_group = true);
ModulePtr module_from_json(const json& j, GroupPtr group = nullptr);

// cochain: {module (with group), degree, values flat row-major}
json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const json& j, ModulePtr module = nullptr);

// tower: {groups, steps}
json tower_to_json(const Tower& t);
Tower tower_from_json(const json& j);

// ses: {family, module, multiplier} for the built-in families,
//      {family: "explicit", a, b, c, i, j} for explicit maps
ModuleSES ses_from_json(const json& j);

// direct system: {group, stages: [coefficient modules], inclusions: [matrices],
//                 ambient?, into_ambient?}
DirectSystem dirsys_from_json(const json& j);

json load_file(const std::string& path);
void save_file(const std::string& path, const json& doc);
/// Canonical serialization used for files and digests (2-space indent,
/// trailing newline).
std::string dumps(const json& doc);

/// FNV-1a 64-bit content digest, as 16 hex digits.
std::string digest(const std::string& bytes);

/// Report header with the tool configuration and input digests.
json report_header(const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& input_files);

/// Flat "key: value" rendering of a report for --format table.
std::string to_table(const json& doc);

json cohomology_to_json(const CohomologyGroup& h, bool with_generators = false);

} // namespace cocyclelab::io

#endif
