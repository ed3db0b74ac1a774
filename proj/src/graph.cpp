#include "strongties/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <string>

namespace strongties {

namespace {

const char* kind_name(EdgeKind kind) { return kind == EdgeKind::sibling ? "sibling" : "marital"; }
const char* kind_color(EdgeKind kind) { return kind == EdgeKind::sibling ? "blue" : "red"; }
const char* sex_name(Sex sex) { return sex == Sex::male ? "male" : "female"; }

// Index of a node id within the ascending nodes vector.
std::size_t node_index(const StrongTiesNetwork& net, std::int64_t id) {
  auto it = std::lower_bound(net.nodes.begin(), net.nodes.end(), id,
                             [](const NetworkNode& n, std::int64_t v) { return n.id < v; });
  if (it == net.nodes.end() || it->id != id) throw Error("edge endpoint is not a node");
  return static_cast<std::size_t>(it - net.nodes.begin());
}

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    // Keep the smaller index as root; node ids ascend with index, so the
    // root is always the smallest member id of its set.
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

std::string format_dot(const StrongTiesNetwork& net) {
  std::ostringstream os;
  os << "graph strong_ties {\n";
  for (const NetworkNode& n : net.nodes) {
    os << "  " << n.id << " [sex=" << sex_name(n.sex) << ", family=" << n.family_id << "];\n";
  }
  for (const NetworkEdge& e : net.edges) {
    os << "  " << e.u << " -- " << e.v << " [kind=" << kind_name(e.kind)
       << ", color=" << kind_color(e.kind) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string format_graphml(const StrongTiesNetwork& net) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"d0\" for=\"node\" attr.name=\"sex\" attr.type=\"string\"/>\n"
     << "  <key id=\"d1\" for=\"node\" attr.name=\"family\" attr.type=\"long\"/>\n"
     << "  <key id=\"d2\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
     << "  <key id=\"d3\" for=\"edge\" attr.name=\"color\" attr.type=\"string\"/>\n"
     << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (const NetworkNode& n : net.nodes) {
    os << "    <node id=\"n" << n.id << "\"><data key=\"d0\">" << sex_name(n.sex)
       << "</data><data key=\"d1\">" << n.family_id << "</data></node>\n";
  }
  for (const NetworkEdge& e : net.edges) {
    os << "    <edge source=\"n" << e.u << "\" target=\"n" << e.v << "\"><data key=\"d2\">"
       << kind_name(e.kind) << "</data><data key=\"d3\">" << kind_color(e.kind)
       << "</data></edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string format_edge_csv(const StrongTiesNetwork& net) {
  std::ostringstream os;
  os << "u,v,kind\n";
  for (const NetworkEdge& e : net.edges) {
    os << e.u << "," << e.v << "," << kind_name(e.kind) << "\n";
  }
  return os.str();
}

std::int64_t parse_id(std::string_view field) {
  std::int64_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("bad node id in edge-csv: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

StrongTiesNetwork build_network(const Population& pop) {
  StrongTiesNetwork net;
  net.nodes.reserve(pop.persons.size());
  for (const Person& p : pop.persons) {
    net.nodes.push_back(NetworkNode{p.id, p.sex, p.family_id});
  }
  std::sort(net.nodes.begin(), net.nodes.end(),
            [](const NetworkNode& a, const NetworkNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < net.nodes.size(); ++i) {
    if (net.nodes[i].id == net.nodes[i - 1].id) throw Error("duplicate person id");
  }

  // One clique per family.
  std::map<std::int64_t, std::vector<std::int64_t>> families;
  for (const NetworkNode& n : net.nodes) families[n.family_id].push_back(n.id);
  for (const auto& [family_id, members] : families) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        net.edges.push_back(NetworkEdge{members[i], members[j], EdgeKind::sibling});
      }
    }
  }
  for (const auto& [a, b] : married_couples(pop)) {
    net.edges.push_back(NetworkEdge{a, b, EdgeKind::marital});
  }
  return net;
}

std::vector<std::int64_t> connected_components(const StrongTiesNetwork& net) {
  DisjointSets sets(net.nodes.size());
  for (const NetworkEdge& e : net.edges) {
    sets.unite(node_index(net, e.u), node_index(net, e.v));
  }
  std::vector<std::int64_t> label(net.nodes.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    label[i] = net.nodes[sets.find(i)].id;
  }
  return label;
}

Metrics compute_metrics(const StrongTiesNetwork& net) {
  Metrics m;
  m.node_count = net.nodes.size();
  for (const NetworkEdge& e : net.edges) {
    (e.kind == EdgeKind::sibling ? m.sibling_edge_count : m.marital_edge_count) += 1;
  }
  const std::vector<std::int64_t> label = connected_components(net);
  std::map<std::int64_t, std::uint64_t> sizes;
  for (std::int64_t l : label) ++sizes[l];
  m.component_count = sizes.size();
  for (const auto& [root, size] : sizes) {
    m.largest_component_size = std::max(m.largest_component_size, size);
    if (size == 1) ++m.singleton_count;
    ++m.component_size_histogram[size];
  }
  m.largest_component_fraction =
      m.node_count == 0 ? 0.0
                        : static_cast<double>(m.largest_component_size) /
                              static_cast<double>(m.node_count);
  return m;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::dot;
  if (name == "graphml") return GraphFormat::graphml;
  if (name == "edge-csv" || name == "csv") return GraphFormat::edge_csv;
  throw UnknownFormatError("unknown graph format '" + std::string(name) +
                           "' (known: dot, graphml, edge-csv)");
}

std::string_view graph_format_extension(GraphFormat format) {
  switch (format) {
    case GraphFormat::dot: return "dot";
    case GraphFormat::graphml: return "graphml";
    case GraphFormat::edge_csv: return "csv";
  }
  return "dat";
}

std::string export_network(const StrongTiesNetwork& net, GraphFormat format) {
  switch (format) {
    case GraphFormat::dot: return format_dot(net);
    case GraphFormat::graphml: return format_graphml(net);
    case GraphFormat::edge_csv: return format_edge_csv(net);
  }
  throw UnknownFormatError("unknown graph format");
}

StrongTiesNetwork import_edge_csv(const std::string& text) {
  StrongTiesNetwork net;
  std::vector<std::int64_t> ids;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      if (line != "u,v,kind") throw ConfigError("edge-csv must start with header 'u,v,kind'");
      first = false;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ConfigError("bad edge-csv row: '" + line + "'");
    }
    const std::int64_t u = parse_id(std::string_view(line).substr(0, c1));
    const std::int64_t v = parse_id(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const std::string_view kind = std::string_view(line).substr(c2 + 1);
    if (u == v) throw ConfigError("self-loop in edge-csv");
    EdgeKind k;
    if (kind == "sibling") k = EdgeKind::sibling;
    else if (kind == "marital") k = EdgeKind::marital;
    else throw ConfigError("bad edge kind '" + std::string(kind) + "'");
    net.edges.push_back(NetworkEdge{std::min(u, v), std::max(u, v), k});
    ids.push_back(u);
    ids.push_back(v);
  }
  if (first && !text.empty()) throw ConfigError("edge-csv must start with header 'u,v,kind'");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  net.nodes.reserve(ids.size());
  for (std::int64_t id : ids) net.nodes.push_back(NetworkNode{id, Sex::male, -1});
  return net;
}

}  // namespace strongties
