#include "kcdecomp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "kcdecomp/binpack.hpp"
#include "kcdecomp/dualapprox.hpp"
#include "kcdecomp/gadgets.hpp"
#include "kcdecomp/instance_io.hpp"
#include "kcdecomp/oracle.hpp"
#include "kcdecomp/treeapprox.hpp"
#include "kcdecomp/treedecomp.hpp"

namespace kcdecomp::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

Instance load(const std::string& path, std::istream& in) {
  return parse_instance(read_source(path, in));
}

const Graph& expect_graph(const Instance& inst) {
  if (inst.kind != InstanceKind::graph && inst.kind != InstanceKind::tree)
    throw UsageError("expected a tree or graph instance, got " + std::string(kind_name(inst.kind)));
  return inst.graph();
}

const Graph& expect_tree(const Instance& inst) {
  const Graph& g = expect_graph(inst);
  if (!g.is_tree()) throw UsageError("the input graph is not a tree");
  return g;
}

const BinPackingInstance& expect_binpack(const Instance& inst) {
  if (inst.kind != InstanceKind::binpack)
    throw UsageError("expected a binpack instance, got " + std::string(kind_name(inst.kind)));
  return inst.binpack();
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// floor((1 + eps) * c)
Weight enlarged(Weight c, const Rational& eps) {
  return c + static_cast<Weight>(static_cast<__int128>(c) * eps.numerator() / eps.denominator());
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return {{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
}

Json coloring_json(const EdgeColoring& coloring, Weight bound) {
  return {{"kind", "coloring"},
          {"k", coloring.k},
          {"component_bound", bound},
          {"colors", coloring.colors}};
}

Json packing_json(const PackingCertificate& cert, Weight capacity) {
  return {{"kind", "packing"}, {"capacity", capacity}, {"bins", cert.bins}};
}

Json report_json(const PartitionReport& r) {
  Json sizes = Json::array();
  for (const auto& s : r.per_color_component_sizes) sizes.push_back(s);
  return {{"max_component_size", r.max_component_size},
          {"component_sizes", std::move(sizes)},
          {"forests", r.all_forests()},
          {"star_forests", r.all_star_forests()}};
}

Json binpack_json(const BinPackingInstance& inst) {
  return {{"k", inst.k}, {"c", inst.c}, {"items", inst.weights.size()}};
}

Json decision(const std::string& command, bool yes) {
  return {{"command", command}, {"decision", yes ? "yes" : "no"}};
}

Restriction parse_restriction(const std::string& name) {
  if (name == "any") return Restriction::any_subgraph;
  if (name == "forest") return Restriction::forest;
  if (name == "star") return Restriction::star_forest;
  throw UsageError("unknown restriction '" + name + "'");
}

struct Options {
  std::string input;
  std::string result;
  bool quiet = false;
  bool emit = false;
  int k = 2;
  int c = 2;
  int i = 0;
  std::string eps = "1";
  std::string restriction = "any";
};

struct Outcome {
  Json doc;
  int code = kYes;
  std::string text;  // raw output for --emit
};

Outcome yes_no(Json doc, bool yes) { return {std::move(doc), yes ? kYes : kNo, {}}; }

Outcome binpack_solve(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const BinPackingInstance& inst = expect_binpack(instance);
  const FptResult result = solve_fpt(inst);
  Json doc = decision("binpack solve", result.feasible());
  doc["instance"] = binpack_json(inst);
  if (result.feasible()) {
    doc["certificate"] = packing_json(*result.certificate, inst.c);
    doc["loads"] = bin_loads(inst, *result.certificate);
    doc["support"] = result.solution->support.size();
  }
  return yes_no(std::move(doc), result.feasible());
}

Outcome binpack_dual(const Options& o, std::istream& in) {
  const Rational eps = parse_rational(o.eps);
  check_epsilon(eps);
  const Instance instance = load(o.input, in);
  const BinPackingInstance& inst = expect_binpack(instance);
  const DualResult result = dual_decide(inst, eps);
  Json doc = decision("binpack dual", result.yes());
  doc["instance"] = binpack_json(inst);
  doc["eps"] = to_string(eps);
  if (result.yes()) {
    doc["certificate"] = packing_json(*result.certificate, enlarged(inst.c, eps));
    doc["loads"] = bin_loads(inst, *result.certificate);
  }
  return yes_no(std::move(doc), result.yes());
}

Outcome tree_decide(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const Graph& t = expect_tree(instance);
  const auto coloring = decide_kc(t, o.k, o.c);
  Json doc = decision("tree decide", coloring.has_value());
  doc["k"] = o.k;
  doc["c"] = o.c;
  if (coloring) {
    doc["certificate"] = coloring_json(*coloring, o.c);
    doc["report"] = report_json(evaluate_partition(t, *coloring));
  } else if (o.k >= 2) {
    const LabelResult labels = compute_labels(*root_at_leaf(t), o.k, o.c);
    doc["aborted_at_edge"] = *labels.aborted_at;
  }
  return yes_no(std::move(doc), coloring.has_value());
}

Outcome tree_mcd(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const Graph& t = expect_tree(instance);
  const EdgeColoring coloring = mcd_greedy(t, o.c);
  const int delta = t.max_degree();
  Json doc = decision("tree mcd", true);
  doc["c"] = o.c;
  doc["colors_used"] = coloring.used_colors();
  doc["color_bound"] = mcd_greedy_color_bound(delta, o.c);
  doc["lower_bound"] = delta == 0 ? 0 : ceil_div(delta, o.c);
  doc["certificate"] = coloring_json(coloring, o.c);
  doc["report"] = report_json(evaluate_partition(t, coloring));
  return {std::move(doc), kYes, {}};
}

Outcome tree_msd2(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const Graph& t = expect_tree(instance);
  const EdgeColoring coloring = msd_greedy2(t, o.k);
  const int bound = t.edge_count() == 0 ? 0 : std::max(1, ceil_div(t.max_degree() - 1, o.k - 1));
  Json doc = decision("tree msd2", true);
  doc["k"] = o.k;
  doc["lower_bound"] = ceil_div(t.max_degree(), o.k);
  doc["certificate"] = coloring_json(coloring, bound);
  doc["report"] = report_json(evaluate_partition(t, coloring));
  return {std::move(doc), kYes, {}};
}

Outcome tree_msd_ptas(const Options& o, std::istream& in) {
  const Rational eps = parse_rational(o.eps);
  check_epsilon(eps);
  const Instance instance = load(o.input, in);
  const Graph& t = expect_tree(instance);
  const PtasSearch search = msd_ptas_search(t, o.k, eps);
  Json doc = decision("tree msd-ptas", true);
  doc["k"] = o.k;
  doc["eps"] = to_string(eps);
  doc["bracket"] = {{"lo", search.bracket.lo}, {"hi", search.bracket.hi}};
  doc["certificate"] = coloring_json(search.coloring, enlarged(search.bracket.hi, eps));
  doc["report"] = report_json(evaluate_partition(t, search.coloring));
  return {std::move(doc), kYes, {}};
}

Outcome emit_or(Json doc, const Graph& g, InstanceKind kind, bool emit) {
  if (emit) return {{}, kYes, serialize(g, kind)};
  doc["graph"] = graph_json(g);
  return {std::move(doc), kYes, {}};
}

Outcome gadget_h(const Options& o, std::istream&) {
  const GadgetGraph h = build_H(o.i, o.k, o.c);
  Json doc = decision("gadget h", true);
  doc["i"] = o.i;
  doc["k"] = o.k;
  doc["c"] = o.c;
  doc["edges"] = h.graph.edge_count();
  doc["outlets"] = h.outlets;
  doc["certificate"] = coloring_json(color_H(o.i, o.k, o.c), o.c);
  return emit_or(std::move(doc), h.graph, InstanceKind::graph, o.emit);
}

Outcome gadget_g2(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  if (instance.kind != InstanceKind::hypergraph) throw UsageError("expected a hypergraph instance");
  const ReductionGraph r = build_G2(instance.hypergraph(), o.c);
  Json doc = decision("gadget g2", true);
  doc["c"] = o.c;
  doc["level"] = r.level;
  doc["edges"] = r.graph.edge_count();
  return emit_or(std::move(doc), r.graph, InstanceKind::graph, o.emit);
}

Outcome gadget_gk(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const ReductionGraph r = build_Gk(expect_graph(instance), o.k, o.c);
  Json doc = decision("gadget gk", true);
  doc["k"] = o.k;
  doc["c"] = o.c;
  doc["level"] = r.level;
  doc["edges"] = r.graph.edge_count();
  return emit_or(std::move(doc), r.graph, InstanceKind::graph, o.emit);
}

Outcome gadget_bptree(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const BinPackingInstance& inst = expect_binpack(instance);
  const Graph t = build_tree_from_binpack(inst);
  Json doc = decision("gadget bptree", true);
  doc["k"] = inst.k;
  doc["c"] = inst.c;
  doc["edges"] = t.edge_count();
  return emit_or(std::move(doc), t, InstanceKind::tree, o.emit);
}

OracleBudget oracle_budget() {
  OracleBudget budget;
  budget.search = DecomposeSearch::propagate;
  return budget;
}

Outcome oracle_decompose(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const Graph& g = expect_graph(instance);
  const Restriction r = parse_restriction(o.restriction);
  const auto coloring = brute_decompose(g, o.k, o.c, r, oracle_budget());
  Json doc = decision("oracle decompose", coloring.has_value());
  doc["k"] = o.k;
  doc["c"] = o.c;
  doc["restriction"] = o.restriction;
  if (coloring) {
    doc["certificate"] = coloring_json(*coloring, o.c);
    doc["report"] = report_json(evaluate_partition(g, *coloring));
  }
  return yes_no(std::move(doc), coloring.has_value());
}

Outcome oracle_binpack(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  const BinPackingInstance& inst = expect_binpack(instance);
  const auto cert = brute_binpack(inst);
  Json doc = decision("oracle binpack", cert.has_value());
  doc["instance"] = binpack_json(inst);
  if (cert) doc["certificate"] = packing_json(*cert, inst.c);
  return yes_no(std::move(doc), cert.has_value());
}

Outcome oracle_color(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  bool yes = false;
  Json doc;
  if (instance.kind == InstanceKind::hypergraph) {
    yes = brute_hypergraph_2color(instance.hypergraph());
    doc = decision("oracle color", yes);
    doc["k"] = 2;
  } else {
    yes = brute_kcolor(expect_graph(instance), o.k);
    doc = decision("oracle color", yes);
    doc["k"] = o.k;
  }
  return yes_no(std::move(doc), yes);
}

Outcome oracle_mcd(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  Json doc = decision("oracle mcd", true);
  doc["c"] = o.c;
  doc["optimum"] = brute_mcd_opt(expect_tree(instance), o.c);
  return {std::move(doc), kYes, {}};
}

Outcome oracle_msd(const Options& o, std::istream& in) {
  const Instance instance = load(o.input, in);
  Json doc = decision("oracle msd", true);
  doc["k"] = o.k;
  doc["optimum"] = brute_msd_opt(expect_tree(instance), o.k);
  return {std::move(doc), kYes, {}};
}

Outcome verify(const Options& o, std::istream& in) {
  if (o.input == "-" && o.result == "-") throw UsageError("only one input may come from stdin");
  const Instance instance = load(o.input, in);
  Json result;
  try {
    result = Json::parse(read_source(o.result, in));
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("result document: ") + e.what());
  }
  if (!result.contains("certificate")) throw UsageError("result document has no certificate");
  const Json& cert = result["certificate"];
  Json doc;
  bool valid = false;
  try {
    const std::string kind = cert.at("kind");
    if (kind == "coloring") {
      const Graph& g = expect_graph(instance);
      const EdgeColoring coloring{cert.at("k").get<int>(), cert.at("colors").get<std::vector<Color>>()};
      const Weight bound = cert.at("component_bound").get<Weight>();
      const PartitionReport report = evaluate_partition(g, coloring);
      valid = report.max_component_size <= bound;
      doc = decision("verify", valid);
      doc["report"] = report_json(report);
    } else if (kind == "packing") {
      const BinPackingInstance& inst = expect_binpack(instance);
      const PackingCertificate packing{cert.at("bins").get<std::vector<std::vector<int>>>()};
      const Weight capacity = cert.at("capacity").get<Weight>();
      valid = certificate_valid(inst, packing, capacity);
      doc = decision("verify", valid);
      if (valid) doc["loads"] = bin_loads(inst, packing);
    } else {
      throw UsageError("unknown certificate kind '" + kind + "'");
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed certificate: ") + e.what());
  } catch (const MalformedColoring& e) {
    doc = decision("verify", false);
    doc["error"] = e.what();
    valid = false;
  }
  doc["valid"] = valid;
  return yes_no(std::move(doc), valid);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Edge partitions into k subgraphs of bounded component size"};
  app.name("kcdecomp");
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<CLI::App*, std::function<Outcome(const Options&, std::istream&)>>> leaves;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& about,
                  auto handler) {
    CLI::App* sub = parent->add_subcommand(name, about);
    sub->add_flag("-q,--quiet", o.quiet, "print only the decision");
    leaves.emplace_back(sub, handler);
    return sub;
  };
  auto with_input = [&](CLI::App* sub) {
    sub->add_option("instance", o.input, "instance file, '-' for stdin")->required();
    return sub;
  };
  auto k_opt = [&](CLI::App* sub, int min_k) {
    sub->add_option("--k", o.k, "number of colors or bins")->required()->check(CLI::Range(min_k, 1 << 20));
  };
  auto c_opt = [&](CLI::App* sub, int min_c) {
    sub->add_option("--c", o.c, "component size bound")->required()->check(CLI::Range(min_c, 1 << 20));
  };
  auto eps_opt = [&](CLI::App* sub) {
    sub->add_option("--eps", o.eps, "accuracy P/Q in (0, 1]")->capture_default_str();
  };
  auto emit_opt = [&](CLI::App* sub) {
    sub->add_flag("--emit", o.emit, "print the graph in edge-list format instead");
  };

  CLI::App* binpack = app.add_subcommand("binpack", "bin packing solvers");
  binpack->require_subcommand(1);
  with_input(leaf(binpack, "solve", "exact fixed-parameter solver", binpack_solve));
  eps_opt(with_input(leaf(binpack, "dual", "dual approximation with enlarged bins", binpack_dual)));

  CLI::App* tree = app.add_subcommand("tree", "tree decomposition algorithms");
  tree->require_subcommand(1);
  CLI::App* decide = with_input(leaf(tree, "decide", "exact (k,c)-decomposition", tree_decide));
  k_opt(decide, 1);
  c_opt(decide, 1);
  c_opt(with_input(leaf(tree, "mcd", "greedy minimum-color decomposition", tree_mcd)), 1);
  k_opt(with_input(leaf(tree, "msd2", "2-approximate minimum-size decomposition", tree_msd2)), 2);
  CLI::App* ptas = with_input(leaf(tree, "msd-ptas", "(1+eps)-approximate minimum-size decomposition", tree_msd_ptas));
  k_opt(ptas, 2);
  eps_opt(ptas);

  CLI::App* gadget = app.add_subcommand("gadget", "hardness gadget generators");
  gadget->require_subcommand(1);
  CLI::App* h = leaf(gadget, "h", "recursive gadget H_i", gadget_h);
  h->add_option("--i", o.i, "recursion level")->required()->check(CLI::Range(0, 64));
  k_opt(h, 2);
  c_opt(h, 2);
  emit_opt(h);
  CLI::App* g2 = with_input(leaf(gadget, "g2", "reduction from hypergraph 2-coloring", gadget_g2));
  c_opt(g2, 2);
  emit_opt(g2);
  CLI::App* gk = with_input(leaf(gadget, "gk", "reduction from graph k-coloring", gadget_gk));
  k_opt(gk, 3);
  c_opt(gk, 2);
  emit_opt(gk);
  emit_opt(with_input(leaf(gadget, "bptree", "tree from a bin packing instance", gadget_bptree)));

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force reference answers");
  oracle->require_subcommand(1);
  CLI::App* od = with_input(leaf(oracle, "decompose", "exhaustive decomposition search", oracle_decompose));
  k_opt(od, 1);
  c_opt(od, 1);
  od->add_option("--restriction", o.restriction, "any, forest or star")
      ->check(CLI::IsMember({"any", "forest", "star"}))
      ->capture_default_str();
  with_input(leaf(oracle, "binpack", "exhaustive bin packing", oracle_binpack));
  CLI::App* oc = with_input(leaf(oracle, "color", "vertex coloring (2-coloring for hypergraphs)", oracle_color));
  oc->add_option("--k", o.k, "number of colors")->check(CLI::Range(1, 64))->capture_default_str();
  c_opt(with_input(leaf(oracle, "mcd", "optimum colors at component size c", oracle_mcd)), 1);
  k_opt(with_input(leaf(oracle, "msd", "optimum component size with k colors", oracle_msd)), 1);

  CLI::App* check = leaf(&app, "verify", "re-validate a result document against its instance", verify);
  check->add_option("instance", o.input, "instance file")->required();
  check->add_option("result", o.result, "result document")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kError;
  }

  const auto selected = std::find_if(leaves.begin(), leaves.end(),
                                     [](const auto& entry) { return entry.first->parsed(); });
  if (selected == leaves.end()) {
    err << app.help();
    return kError;
  }
  try {
    Outcome outcome = selected->second(o, in);
    if (o.quiet) {
      out << outcome.doc.value("decision", "yes") << '\n';
    } else if (!outcome.text.empty() || outcome.doc.is_null()) {
      out << outcome.text;
    } else {
      out << outcome.doc.dump(2) << '\n';
    }
    return outcome.code;
  } catch (const BudgetExceeded& e) {
    err << "error: oracle budget exceeded: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SupportSearchExhausted& e) {
    err << "error: " << e.what() << '\n';
  }
  return kError;
}

}  // namespace kcdecomp::cli
