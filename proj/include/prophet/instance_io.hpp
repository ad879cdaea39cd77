#pragma once

#include <string>

#include <json.hpp>

#include "prophet/core.hpp"
#include "prophet/distributions.hpp"

namespace prophet {

// Instance file schema:
//   { "kind": "general" | "bipartite",
//     "vertices": n,
//     "buyers": [ids], "items": [ids],          (bipartite only)
//     "edges": [ { "u": int, "v": int,
//                  "dist": { "family": str, "params": [num, ...] } } ] }
// Violations raise InputError naming the offending field, e.g.
// "edges[2].dist.params".

nlohmann::json instance_to_json(const InstanceSpec& spec);
InstanceSpec instance_from_json(const nlohmann::json& j);

/// Parses text; JSON syntax errors report line and column.
InstanceSpec parse_instance(const std::string& text);
InstanceSpec load_instance(const std::string& path);
void save_instance(const InstanceSpec& spec, const std::string& path);

/// Realizations serialize values as JSON numbers (shortest round-trip form)
/// and keys as unsigned 64-bit integers, so reloading is bit-exact.
nlohmann::json realization_to_json(const Realization& real);
Realization realization_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace prophet
