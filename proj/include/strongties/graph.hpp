#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "strongties/netgen.hpp"

namespace strongties {

enum class EdgeKind : std::uint8_t { sibling, marital };

struct NetworkNode {
  std::int64_t id = 0;
  Sex sex = Sex::male;
  std::int64_t family_id = 0;
};

// Undirected edge with u < v.
struct NetworkEdge {
  std::int64_t u = 0;
  std::int64_t v = 0;
  EdgeKind kind = EdgeKind::sibling;
};

// Strong-ties network of one generation: sibling edges form one clique per
// family with >= 2 children, marital edges form a matching. Nodes are kept
// in ascending id order; immutable after build.
struct StrongTiesNetwork {
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> edges;

  std::size_t node_count() const { return nodes.size(); }
};

StrongTiesNetwork build_network(const Population& pop);

// Component label per node (parallel to net.nodes): the smallest member id
// of the node's component. Canonical, so the labeling does not depend on
// node or edge order.
std::vector<std::int64_t> connected_components(const StrongTiesNetwork& net);

struct Metrics {
  std::uint64_t node_count = 0;
  std::uint64_t sibling_edge_count = 0;
  std::uint64_t marital_edge_count = 0;
  std::uint64_t component_count = 0;
  std::uint64_t largest_component_size = 0;
  double largest_component_fraction = 0.0;  // 0 for an empty network
  std::uint64_t singleton_count = 0;
  std::map<std::uint64_t, std::uint64_t> component_size_histogram;
};

Metrics compute_metrics(const StrongTiesNetwork& net);

enum class GraphFormat { dot, graphml, edge_csv };

// Accepts "dot", "graphml", "edge-csv" (also "csv"); throws UnknownFormatError.
GraphFormat parse_graph_format(std::string_view name);
std::string_view graph_format_extension(GraphFormat format);

// Byte-stable text export. dot and graphml carry a `kind` attribute and a
// color per edge (sibling -> blue, marital -> red); edge-csv is `u,v,kind`
// rows under a header, UTF-8 with LF line endings.
std::string export_network(const StrongTiesNetwork& net, GraphFormat format);

// Rebuilds a network from edge-csv text. The format carries no node
// attributes and no isolated nodes, so sex defaults to male and family_id
// to -1; edges and connectivity round-trip exactly.
StrongTiesNetwork import_edge_csv(const std::string& text);

}  // namespace strongties
