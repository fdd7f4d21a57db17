#include <gtest/gtest.h>

#include "cli_support.hpp"
#include "json.hpp"
#include "kcdecomp/instance_io.hpp"

using namespace kcdecomp;
using kcdecomp::test_support::run_cli;
using Json = nlohmann::json;

namespace {

const std::filesystem::path kData = KCDECOMP_TEST_DATA;

std::string data(const char* name) { return (kData / name).string(); }

}  // namespace

TEST(ParseInstance, TreeEdgeList) {
  const Instance inst = parse_instance("p tree 3 2\ne 0 1\ne 1 2");
  EXPECT_EQ(inst.kind, InstanceKind::tree);
  EXPECT_EQ(inst.graph(), make_path(2));
}

TEST(ParseInstance, Binpack) {
  const Instance inst = parse_instance("p binpack k=2 c=3\nw 2 2 1\n");
  EXPECT_EQ(inst.binpack().weights, (std::vector<Weight>{2, 2, 1}));
  EXPECT_EQ(inst.binpack().k, 2);
  EXPECT_EQ(inst.binpack().c, 3);
}

TEST(ParseInstance, CommentsBlankLinesAndSplitWeights) {
  const Instance inst = parse_instance("c hello\n\np binpack k=1 c=4\nw 1\nc mid\nw 2 1\n");
  EXPECT_EQ(inst.binpack().weights, (std::vector<Weight>{1, 2, 1}));
}

TEST(ParseInstance, SelfLoopIsASyntaxError) {
  try {
    parse_instance("e 0 0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(ParseInstance, ErrorsCarryLineNumbers) {
  const std::vector<std::pair<std::string, int>> cases{
      {"p tree 3 2\ne 0 1\ne 1 x\n", 3},
      {"p tree 3 2\ne 0 1\ne 1 3\n", 3},
      {"p tree 3 2\ne 0 1\n", 1},
      {"p tree 3 2\ne 0 1\ne 0 1\n", 1},
      {"p tree 4 3\ne 0 1\ne 1 2\ne 2 0\n", 1},
      {"p graph 2 0\np graph 2 0\n", 2},
      {"p widget 1 1\n", 1},
      {"p binpack k=0 c=3\n", 1},
      {"p binpack c=3 k=2\n", 1},
      {"p binpack k=2 c=3\nw 2 -1\n", 2},
      {"p hypergraph 3 1\nh 0 1 1\n", 2},
      {"p hypergraph 3 1\ne 0 1\n", 2},
      {"p graph 2 1\nx 0 1\n", 2},
      {"\n\nc only comments\n", 3},
  };
  for (const auto& [text, line] : cases) {
    try {
      parse_instance(text);
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text << " -> " << e.what();
    }
  }
}

TEST(Serialize, RoundTripsEveryKind) {
  for (const char* text : {"p tree 3 2\ne 0 1\ne 1 2\n", "p graph 4 2\ne 0 1\ne 3 2\n",
                           "p hypergraph 4 2\nh 0 1 2\nh 1 2 3\n", "p binpack k=3 c=5\nw 5 1 2\n",
                           "p binpack k=1 c=1\n", "p graph 0 0\n"}) {
    const Instance inst = parse_instance(text);
    EXPECT_EQ(serialize(inst), text);
    EXPECT_EQ(serialize(parse_instance(serialize(inst))), serialize(inst));
  }
}

TEST(Cli, TreeDecideOnStarEmitsColoring) {
  const auto r = run_cli({"tree", "decide", data("star4.tree"), "--k", "2", "--c", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["decision"], "yes");
  EXPECT_EQ(doc["certificate"]["colors"].size(), 4u);
  EXPECT_EQ(doc["report"]["max_component_size"], 2);
}

TEST(Cli, BinpackSolveNo) {
  const auto r = run_cli({"binpack", "solve", data("stuck.bp")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(Json::parse(r.out)["decision"], "no");
}

TEST(Cli, GadgetHListsOutlets) {
  const auto r = run_cli({"gadget", "h", "--i", "1", "--k", "2", "--c", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["edges"], 9);
  EXPECT_EQ(doc["outlets"].size(), 3u);
  EXPECT_EQ(doc["graph"]["edges"].size(), 9u);
}

TEST(Cli, QuietPrintsOnlyTheDecision) {
  EXPECT_EQ(run_cli({"tree", "decide", data("star5.tree"), "--k", "2", "--c", "2", "--quiet"}).out, "no\n");
  EXPECT_EQ(run_cli({"binpack", "solve", data("fits.bp"), "-q"}).out, "yes\n");
}

TEST(Cli, ReadsStdin) {
  const auto r = run_cli({"binpack", "solve", "-", "-q"}, "p binpack k=2 c=3\nw 2 2 1\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "yes\n");
}

TEST(Cli, EmitProducesParseableInstances) {
  const auto h = run_cli({"gadget", "h", "--i", "2", "--k", "2", "--c", "2", "--emit"});
  ASSERT_EQ(h.code, 0);
  const Instance parsed = parse_instance(h.out);
  EXPECT_EQ(parsed.graph().edge_count(), 10);

  const auto t = run_cli({"gadget", "bptree", data("small.bp"), "--emit"});
  ASSERT_EQ(t.code, 0);
  const Instance tree = parse_instance(t.out);
  EXPECT_EQ(tree.kind, InstanceKind::tree);
  EXPECT_EQ(tree.graph().edge_count(), 7);
}

TEST(Cli, DeterministicBytes) {
  const std::vector<std::string> args{"tree", "msd-ptas", data("caterpillar.tree"), "--k", "2", "--eps", "1/2"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, VerifyAcceptsEmittedAndRejectsTamperedCertificates) {
  const auto r = run_cli({"tree", "decide", data("star4.tree"), "--k", "2", "--c", "2"});
  const std::string good = kcdecomp::test_support::write_temp("good.json", r.out);
  EXPECT_EQ(run_cli({"verify", data("star4.tree"), good}).code, 0);

  Json doc = Json::parse(r.out);
  doc["certificate"]["colors"] = {0, 0, 0, 1};
  const std::string bad = kcdecomp::test_support::write_temp("bad.json", doc.dump());
  const auto v = run_cli({"verify", data("star4.tree"), bad});
  EXPECT_EQ(v.code, 1);
  EXPECT_EQ(Json::parse(v.out)["valid"], false);

  doc["certificate"]["colors"] = {0, 0, 0};
  const std::string short_map = kcdecomp::test_support::write_temp("short.json", doc.dump());
  EXPECT_EQ(run_cli({"verify", data("star4.tree"), short_map}).code, 1);

  const std::string garbage = kcdecomp::test_support::write_temp("garbage.json", "{not json");
  EXPECT_EQ(run_cli({"verify", data("star4.tree"), garbage}).code, 2);
}

TEST(Cli, VerifyPackings) {
  const auto r = run_cli({"binpack", "dual", data("fits.bp"), "--eps", "1/2"});
  ASSERT_EQ(r.code, 0);
  const std::string path = kcdecomp::test_support::write_temp("dual.json", r.out);
  EXPECT_EQ(run_cli({"verify", data("fits.bp"), path}).code, 0);

  Json doc = Json::parse(r.out);
  doc["certificate"]["capacity"] = 1;
  const std::string tight = kcdecomp::test_support::write_temp("tight.json", doc.dump());
  EXPECT_EQ(run_cli({"verify", data("fits.bp"), tight}).code, 1);
}

TEST(Cli, GoldenCorpusExitCodes) {
  for (const auto& g : kcdecomp::test_support::load_golden(kData)) {
    const auto r = run_cli(g.args);
    EXPECT_EQ(r.code, g.expected) << g.line << "\n" << r.err;
    if (r.code == 2) EXPECT_FALSE(r.err.empty()) << g.line;
  }
}

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tree"), std::string::npos);
}
