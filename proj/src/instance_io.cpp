#include "kcdecomp/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

namespace kcdecomp {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::int64_t to_int(std::string_view token, int line) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  return value;
}

int to_count(std::string_view token, int line, const char* what) {
  const std::int64_t value = to_int(token, line);
  if (value < 0 || value > (1 << 26))
    throw ParseError(line, std::string(what) + " out of range: " + std::string(token));
  return static_cast<int>(value);
}

std::int64_t keyed(std::string_view token, std::string_view key, int line) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=')
    throw ParseError(line, "expected " + std::string(key) + "=<int>, got '" + std::string(token) + "'");
  return to_int(token.substr(key.size() + 1), line);
}

struct Header {
  InstanceKind kind;
  int line;
  int n = 0;
  int m = 0;
};

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : ModelError("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string_view kind_name(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::tree: return "tree";
    case InstanceKind::graph: return "graph";
    case InstanceKind::hypergraph: return "hypergraph";
    case InstanceKind::binpack: return "binpack";
  }
  return "?";
}

Instance parse_instance(std::string_view text) {
  std::optional<Header> header;
  std::vector<Edge> edges;
  Hypergraph3 hyper;
  BinPackingInstance bins;
  int line_no = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tok = split(line);
    if (tok.empty() || tok[0] == "c") continue;

    if (tok[0] == "p") {
      if (header) throw ParseError(line_no, "duplicate header");
      if (tok.size() < 2) throw ParseError(line_no, "header needs a problem kind");
      if (tok[1] == "binpack") {
        if (tok.size() != 4) throw ParseError(line_no, "expected 'p binpack k=K c=C'");
        const std::int64_t k = keyed(tok[2], "k", line_no);
        const std::int64_t c = keyed(tok[3], "c", line_no);
        if (k < 1 || c < 1) throw ParseError(line_no, "k and c must be positive");
        if (k > kMaxBins || c > kMaxCapacity) throw ParseError(line_no, "k or c too large");
        bins.k = k;
        bins.c = c;
        header = Header{InstanceKind::binpack, line_no};
        continue;
      }
      InstanceKind kind;
      if (tok[1] == "tree") kind = InstanceKind::tree;
      else if (tok[1] == "graph") kind = InstanceKind::graph;
      else if (tok[1] == "hypergraph") kind = InstanceKind::hypergraph;
      else throw ParseError(line_no, "unknown problem kind '" + std::string(tok[1]) + "'");
      if (tok.size() != 4) throw ParseError(line_no, "expected 'p " + std::string(tok[1]) + " N M'");
      header = Header{kind, line_no, to_count(tok[2], line_no, "vertex count"),
                      to_count(tok[3], line_no, "edge count")};
      continue;
    }

    if (tok[0] == "e") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'e U V'");
      const std::int64_t u = to_int(tok[1], line_no);
      const std::int64_t v = to_int(tok[2], line_no);
      if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(u));
      if (!header || header->kind == InstanceKind::hypergraph || header->kind == InstanceKind::binpack)
        throw ParseError(line_no, "edge line outside a tree or graph instance");
      if (u < 0 || v < 0 || u >= header->n || v >= header->n)
        throw ParseError(line_no, "endpoint out of range");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      continue;
    }
    if (tok[0] == "h") {
      if (!header || header->kind != InstanceKind::hypergraph)
        throw ParseError(line_no, "hyperedge line outside a hypergraph instance");
      if (tok.size() != 4) throw ParseError(line_no, "expected 'h A B C'");
      std::array<Vertex, 3> he{};
      for (int i = 0; i < 3; ++i) {
        const std::int64_t x = to_int(tok[static_cast<std::size_t>(i + 1)], line_no);
        if (x < 0 || x >= header->n) throw ParseError(line_no, "vertex out of range");
        he[static_cast<std::size_t>(i)] = static_cast<Vertex>(x);
      }
      if (he[0] == he[1] || he[1] == he[2] || he[0] == he[2])
        throw ParseError(line_no, "hyperedge vertices must be distinct");
      hyper.hyperedges.push_back(he);
      continue;
    }
    if (tok[0] == "w") {
      if (!header || header->kind != InstanceKind::binpack)
        throw ParseError(line_no, "weight line outside a binpack instance");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const std::int64_t w = to_int(tok[i], line_no);
        if (w < 1) throw ParseError(line_no, "weights must be positive");
        bins.weights.push_back(w);
      }
      continue;
    }
    throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
  }

  if (!header) throw ParseError(std::max(line_no, 1), "missing 'p' header");
  Instance out;
  out.kind = header->kind;
  try {
    switch (header->kind) {
      case InstanceKind::binpack:
        bins.validate();
        out.payload = std::move(bins);
        return out;
      case InstanceKind::hypergraph:
        if (static_cast<int>(hyper.hyperedges.size()) != header->m)
          throw ParseError(header->line, "header promises " + std::to_string(header->m) +
                                             " hyperedges, found " + std::to_string(hyper.hyperedges.size()));
        hyper.vertex_count = header->n;
        hyper.validate();
        out.payload = std::move(hyper);
        return out;
      case InstanceKind::tree:
      case InstanceKind::graph: {
        if (static_cast<int>(edges.size()) != header->m)
          throw ParseError(header->line, "header promises " + std::to_string(header->m) +
                                             " edges, found " + std::to_string(edges.size()));
        Graph g(header->n, std::move(edges));
        if (header->kind == InstanceKind::tree && !g.is_tree())
          throw ParseError(header->line, "edges do not form a tree");
        out.payload = std::move(g);
        return out;
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const ModelError& e) {
    throw ParseError(header->line, e.what());
  }
  return out;
}

std::string serialize(const Graph& g, InstanceKind kind) {
  std::ostringstream out;
  out << "p " << (kind == InstanceKind::tree ? "tree" : "graph") << ' ' << g.vertex_count() << ' '
      << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
  return out.str();
}

std::string serialize(const Hypergraph3& h) {
  std::ostringstream out;
  out << "p hypergraph " << h.vertex_count << ' ' << h.hyperedges.size() << '\n';
  for (const auto& he : h.hyperedges) out << "h " << he[0] << ' ' << he[1] << ' ' << he[2] << '\n';
  return out.str();
}

std::string serialize(const BinPackingInstance& inst) {
  std::ostringstream out;
  out << "p binpack k=" << inst.k << " c=" << inst.c << '\n';
  if (!inst.weights.empty()) {
    out << 'w';
    for (Weight w : inst.weights) out << ' ' << w;
    out << '\n';
  }
  return out.str();
}

std::string serialize(const Instance& instance) {
  switch (instance.kind) {
    case InstanceKind::tree:
    case InstanceKind::graph: return serialize(instance.graph(), instance.kind);
    case InstanceKind::hypergraph: return serialize(instance.hypergraph());
    case InstanceKind::binpack: return serialize(instance.binpack());
  }
  return {};
}

}  // namespace kcdecomp
