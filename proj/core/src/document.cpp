#include "voltlift/document.hpp"

#include <nlohmann/json.hpp>

namespace voltlift {

namespace {

using Json = nlohmann::ordered_json;

Json requireField(const Json& j, const char* name, const char* where) {
  if (!j.contains(name))
    throw ParseError(std::string("missing field '") + name + "' in " + where);
  return j.at(name);
}

long long requireInt(const Json& j, const char* what) {
  if (!j.is_number_integer())
    throw ParseError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::string requireString(const Json& j, const char* what) {
  if (!j.is_string())
    throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Json coordsToJson(const IntVector& coords) {
  Json arr = Json::array();
  for (const Int& c : coords) {
    if (!c.fits_slong_p())
      throw ValidationError("voltage coordinate too large to serialize");
    arr.push_back(static_cast<long long>(c.get_si()));
  }
  return arr;
}

}  // namespace

VoltageGraphDocument parseDocument(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");

  Json jgroup = requireField(j, "group", "document");
  long long rank = requireInt(requireField(jgroup, "rank", "group"), "rank");
  if (rank < 0) throw ValidationError("group rank must be nonnegative");
  Json jmoduli = requireField(jgroup, "moduli", "group");
  if (!jmoduli.is_array()) throw ParseError("moduli must be an array");
  std::vector<Int> moduli;
  for (const Json& m : jmoduli) {
    long long d = requireInt(m, "modulus");
    if (d < 2) throw ValidationError("torsion moduli must be >= 2");
    moduli.emplace_back(static_cast<long>(d));
  }
  GroupSpec spec(static_cast<int>(rank), std::move(moduli));

  Json jgraph = requireField(j, "graph", "document");
  Json jverts = requireField(jgraph, "vertices", "graph");
  if (!jverts.is_array()) throw ParseError("vertices must be an array");
  Multigraph g;
  for (const Json& v : jverts) g.addVertex(requireString(v, "vertex id"));

  Json jedges = requireField(jgraph, "edges", "graph");
  if (!jedges.is_array()) throw ParseError("edges must be an array");
  std::map<EdgeId, GroupElement> voltages;
  for (const Json& je : jedges) {
    if (!je.is_object()) throw ParseError("edge entries must be objects");
    EdgeId id = requireString(requireField(je, "id", "edge"), "edge id");
    VertexId from = requireString(requireField(je, "from", "edge"), "edge endpoint");
    VertexId to = requireString(requireField(je, "to", "edge"), "edge endpoint");
    Json jv = requireField(je, "voltage", "edge");
    if (!jv.is_array()) throw ParseError("voltage must be an array");
    if (jv.size() != spec.dimension())
      throw ValidationError("voltage of edge " + id +
                            " must have length rank + |moduli|");
    IntVector coords;
    for (const Json& c : jv) coords.emplace_back(static_cast<long>(requireInt(c, "voltage entry")));
    g.addEdge(id, from, to);
    voltages.emplace(id, GroupElement(spec, std::move(coords)));
  }

  VoltageGraphDocument doc{spec, std::move(g), std::move(voltages),
                           std::nullopt, std::nullopt};

  if (j.contains("base")) {
    VertexId b = requireString(j.at("base"), "base");
    if (!doc.graph.hasVertex(b))
      throw ValidationError("base names an unknown vertex: " + b);
    doc.base = b;
  }
  if (j.contains("tree")) {
    Json jtree = j.at("tree");
    if (!jtree.is_array()) throw ParseError("tree must be an array");
    std::vector<EdgeId> tree;
    for (const Json& e : jtree) tree.push_back(requireString(e, "tree edge"));
    VertexId root = doc.base ? *doc.base
                             : (doc.graph.order() ? doc.graph.vertices().front()
                                                  : VertexId{});
    if (doc.graph.order() > 0) treeFromEdges(doc.graph, root, tree);
    doc.tree = std::move(tree);
  }
  return doc;
}

std::string serializeDocument(const VoltageGraphDocument& doc) {
  Json j;
  Json jmoduli = Json::array();
  for (const Int& d : doc.group.moduli()) {
    if (!d.fits_slong_p())
      throw ValidationError("modulus too large to serialize");
    jmoduli.push_back(static_cast<long long>(d.get_si()));
  }
  j["group"] = Json{{"rank", doc.group.rank()}, {"moduli", jmoduli}};

  Json jverts = Json::array();
  for (const VertexId& v : doc.graph.vertices()) jverts.push_back(v);
  Json jedges = Json::array();
  for (const EdgeId& e : doc.graph.edges()) {
    jedges.push_back(Json{{"id", e},
                          {"from", doc.graph.src(e)},
                          {"to", doc.graph.dst(e)},
                          {"voltage", coordsToJson(doc.voltages.at(e).coords())}});
  }
  j["graph"] = Json{{"vertices", jverts}, {"edges", jedges}};

  if (doc.tree) {
    Json jtree = Json::array();
    for (const EdgeId& e : *doc.tree) jtree.push_back(e);
    j["tree"] = jtree;
  }
  if (doc.base) j["base"] = *doc.base;
  return j.dump(2) + "\n";
}

VoltageGraph toVoltageGraph(const VoltageGraphDocument& doc) {
  return VoltageGraph(doc.graph, doc.group, doc.voltages);
}

VoltageGraphDocument makeDocument(const VoltageGraph& vg,
                                  const std::optional<std::vector<EdgeId>>& tree,
                                  const std::optional<VertexId>& base) {
  return VoltageGraphDocument{vg.spec(), vg.graph(), vg.voltages(), tree, base};
}

namespace {

std::string dotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string exportDot(const Multigraph& g,
                      const std::map<EdgeId, std::string>* labels) {
  std::string out = "digraph G {\n";
  for (const VertexId& v : g.vertices())
    out += "  \"" + dotEscape(v) + "\";\n";
  for (const EdgeId& e : g.edges()) {
    out += "  \"" + dotEscape(g.src(e)) + "\" -> \"" + dotEscape(g.dst(e)) +
           "\"";
    if (labels != nullptr) {
      auto it = labels->find(e);
      if (it != labels->end())
        out += " [label=\"" + dotEscape(it->second) + "\"]";
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace voltlift
