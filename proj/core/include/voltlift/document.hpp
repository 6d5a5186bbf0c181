#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voltlift/voltage_graph.hpp"

namespace voltlift {

/// On-disk description of a voltage graph: the group, the graph with one
/// voltage vector per edge, and optionally a spanning tree set and a base
/// vertex. Parsing normalizes torsion coordinates, so parse/serialize
/// round-trips are byte-identical after the first normalization.
struct VoltageGraphDocument {
  GroupSpec group{0, {}};
  Multigraph graph;
  std::map<EdgeId, GroupElement> voltages;
  std::optional<std::vector<EdgeId>> tree;
  std::optional<VertexId> base;
};

/// Parses the JSON document format. Malformed text raises ParseError with
/// context; semantic violations (bad voltage length, unknown endpoints,
/// moduli < 2, a tree that is not a spanning tree set) raise
/// ValidationError.
VoltageGraphDocument parseDocument(const std::string& text);

std::string serializeDocument(const VoltageGraphDocument& doc);

VoltageGraph toVoltageGraph(const VoltageGraphDocument& doc);

VoltageGraphDocument makeDocument(
    const VoltageGraph& vg,
    const std::optional<std::vector<EdgeId>>& tree = std::nullopt,
    const std::optional<VertexId>& base = std::nullopt);

/// Deterministic DOT rendering; edge labels are attached when provided.
std::string exportDot(
    const Multigraph& g,
    const std::map<EdgeId, std::string>* labels = nullptr);

}  // namespace voltlift
