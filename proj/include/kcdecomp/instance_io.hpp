#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "kcdecomp/binpack.hpp"
#include "kcdecomp/gadgets.hpp"
#include "kcdecomp/model.hpp"

namespace kcdecomp {

// Text formats, one record per line; 'c' lines and blank lines are comments.
//   p tree N M        then M lines  e U V
//   p graph N M       then M lines  e U V
//   p hypergraph N M  then M lines  h A B C
//   p binpack k=K c=C then any number of  w W1 W2 ...

enum class InstanceKind { tree, graph, hypergraph, binpack };

struct Instance {
  InstanceKind kind = InstanceKind::graph;
  std::variant<Graph, Hypergraph3, BinPackingInstance> payload;

  const Graph& graph() const { return std::get<Graph>(payload); }
  const Hypergraph3& hypergraph() const { return std::get<Hypergraph3>(payload); }
  const BinPackingInstance& binpack() const { return std::get<BinPackingInstance>(payload); }
};

class ParseError : public ModelError {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

std::string_view kind_name(InstanceKind kind);

/// Parses and validates. Syntax problems raise ParseError with a 1-based line;
/// model violations (not a tree, bad weights) surface as ParseError too.
Instance parse_instance(std::string_view text);

std::string serialize(const Graph& g, InstanceKind kind = InstanceKind::graph);
std::string serialize(const Hypergraph3& h);
std::string serialize(const BinPackingInstance& inst);
std::string serialize(const Instance& instance);

}  // namespace kcdecomp
