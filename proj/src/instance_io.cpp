#include "prophet/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace prophet {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw InputError("instance schema: " + field + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where.empty() ? "<root>" : where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) schema_error(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<Vertex> as_id_list(const json& v, const std::string& field) {
  if (!v.is_array()) schema_error(field, "expected an array of vertex ids");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(static_cast<Vertex>(as_int(v[i], field + "[" + std::to_string(i) + "]")));
  }
  return out;
}

}  // namespace

json instance_to_json(const InstanceSpec& spec) {
  const Graph& g = spec.graph;
  json j;
  j["kind"] = g.is_bipartite() ? "bipartite" : "general";
  j["vertices"] = g.vertex_count();
  if (g.is_bipartite()) {
    j["buyers"] = std::vector<Vertex>(g.buyers().begin(), g.buyers().end());
    j["items"] = std::vector<Vertex>(g.items().begin(), g.items().end());
  }
  json edges = json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const DistSpec& d = spec.dists[static_cast<std::size_t>(e)];
    edges.push_back({{"u", g.edge(e).u},
                     {"v", g.edge(e).v},
                     {"dist", {{"family", to_string(d.family)}, {"params", d.params}}}});
  }
  j["edges"] = std::move(edges);
  return j;
}

InstanceSpec instance_from_json(const json& j) {
  if (!j.is_object()) schema_error("<root>", "expected an object");
  const json& kind_v = require(j, "kind", "");
  if (!kind_v.is_string()) schema_error("kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  if (kind != "general" && kind != "bipartite") {
    schema_error("kind", "expected \"general\" or \"bipartite\", got \"" + kind + "\"");
  }
  const std::int64_t n = as_int(require(j, "vertices", ""), "vertices");
  if (n < 0) schema_error("vertices", "must be non-negative");

  const json& edges_v = require(j, "edges", "");
  if (!edges_v.is_array()) schema_error("edges", "expected an array");
  std::vector<Edge> edges;
  InstanceSpec spec;
  for (std::size_t i = 0; i < edges_v.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    const json& ev = edges_v[i];
    const auto u = as_int(require(ev, "u", where), where + ".u");
    const auto v = as_int(require(ev, "v", where), where + ".v");
    if (u < 0 || u >= n) schema_error(where + ".u", "vertex id out of range");
    if (v < 0 || v >= n) schema_error(where + ".v", "vertex id out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});

    const json& dv = require(ev, "dist", where);
    const json& fam = require(dv, "family", where + ".dist");
    if (!fam.is_string()) schema_error(where + ".dist.family", "expected a string");
    DistSpec d;
    try {
      d.family = parse_family(fam.get<std::string>());
    } catch (const InputError& err) {
      schema_error(where + ".dist.family", err.what());
    }
    const json& params = require(dv, "params", where + ".dist");
    if (!params.is_array()) schema_error(where + ".dist.params", "expected an array of numbers");
    d.params.clear();
    for (const json& p : params) {
      if (!p.is_number()) schema_error(where + ".dist.params", "expected numbers");
      d.params.push_back(p.get<double>());
    }
    try {
      d.validate();
    } catch (const InputError& err) {
      schema_error(where + ".dist", err.what());
    }
    spec.dists.push_back(std::move(d));
  }

  const auto vn = static_cast<Vertex>(n);
  try {
    if (kind == "bipartite") {
      spec.graph = Graph::bipartite(vn, as_id_list(require(j, "buyers", ""), "buyers"),
                                    as_id_list(require(j, "items", ""), "items"), std::move(edges));
    } else {
      if (j.contains("buyers") || j.contains("items")) {
        schema_error("kind", "buyers/items are only allowed for bipartite instances");
      }
      spec.graph = Graph::general(vn, std::move(edges));
    }
  } catch (const InputError& err) {
    const std::string msg = err.what();
    if (msg.rfind("instance schema:", 0) == 0) throw;
    // Graph validation messages already name the edge index.
    throw InputError("instance schema: " + msg);
  }
  return spec;
}

InstanceSpec parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < err.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("instance JSON: line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + err.what());
  }
  return instance_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InputError("write to '" + path + "' failed");
}

InstanceSpec load_instance(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const InputError& err) {
    throw InputError(path + ": " + err.what());
  }
}

void save_instance(const InstanceSpec& spec, const std::string& path) {
  write_file(path, instance_to_json(spec).dump(2) + "\n");
}

json realization_to_json(const Realization& real) {
  json draws = json::array();
  for (const EdgeDraws& d : real.draws()) {
    draws.push_back({{"sample", {{"value", d.sample.value}, {"key", d.sample.key}}},
                     {"real", {{"value", d.real.value}, {"key", d.real.key}}}});
  }
  return {{"draws", std::move(draws)}};
}

Realization realization_from_json(const json& j) {
  const json& draws = require(j, "draws", "");
  if (!draws.is_array()) schema_error("draws", "expected an array");
  std::vector<EdgeDraws> out;
  auto one = [](const json& v, const std::string& where) {
    const json& value = require(v, "value", where);
    const json& key = require(v, "key", where);
    if (!value.is_number()) schema_error(where + ".value", "expected a number");
    if (!key.is_number_unsigned()) schema_error(where + ".key", "expected an unsigned integer");
    return DrawnValue{value.get<double>(), key.get<std::uint64_t>()};
  };
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const std::string where = "draws[" + std::to_string(i) + "]";
    out.push_back({one(require(draws[i], "sample", where), where + ".sample"),
                   one(require(draws[i], "real", where), where + ".real")});
  }
  return Realization(std::move(out));
}

}  // namespace prophet
