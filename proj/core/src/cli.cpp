#include "voltlift/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "voltlift/decide.hpp"
#include "voltlift/document.hpp"
#include "voltlift/oracle.hpp"

namespace voltlift {

namespace {

using Json = nlohmann::ordered_json;

VoltageGraphDocument loadDocument(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseDocument(ss.str());
}

VoltageGraph loadVoltageGraph(const std::string& path) {
  return toVoltageGraph(loadDocument(path));
}

// For commands whose contract assumes condensed inputs: a supplied tree
// must carry zero voltages, and without one the zero-voltage edges must
// span.
VoltageGraph loadCondensedVoltageGraph(const std::string& path) {
  VoltageGraphDocument doc = loadDocument(path);
  VoltageGraph vg = toVoltageGraph(doc);
  if (doc.tree) {
    VertexId root = doc.base ? *doc.base : vg.graph().vertices().front();
    TreeSet tree = treeFromEdges(vg.graph(), root, *doc.tree);
    if (!isCondensed(vg, tree))
      throw NotCondensedError("a supplied tree edge has nonzero voltage in " +
                              path);
  }
  return vg;
}

long long defaultBudget() {
  if (const char* env = std::getenv("VOLTLIFT_BUDGET")) {
    char* endp = nullptr;
    long long v = std::strtoll(env, &endp, 10);
    if (endp != nullptr && *endp == '\0' && v > 0) return v;
    throw ValidationError("VOLTLIFT_BUDGET must be a positive integer");
  }
  return kDefaultSearchBudget;
}

std::map<EdgeId, std::string> voltageLabels(const VoltageGraph& vg) {
  std::map<EdgeId, std::string> labels;
  for (const EdgeId& e : vg.graph().edges())
    labels[e] = vg.voltage(e).key();
  return labels;
}

Json groupToJson(const GroupSpec& spec) {
  Json moduli = Json::array();
  for (const Int& d : spec.moduli())
    moduli.push_back(static_cast<long long>(d.get_si()));
  return Json{{"rank", spec.rank()}, {"moduli", moduli}};
}

Json coordsJson(const GroupElement& g) {
  Json arr = Json::array();
  for (const Int& c : g.coords())
    arr.push_back(static_cast<long long>(c.get_si()));
  return arr;
}

Json witnessToJson(const Witness& w) {
  Json j;
  Json verts = Json::array();
  for (const VertexId& v : w.commonCover.vertices()) verts.push_back(v);
  Json edges = Json::array();
  for (const EdgeId& e : w.commonCover.edges())
    edges.push_back(Json{{"id", e},
                         {"from", w.commonCover.src(e)},
                         {"to", w.commonCover.dst(e)}});
  j["cover"] = Json{{"vertices", verts}, {"edges", edges}};

  auto homJson = [](const GraphHom& h) {
    Json vm = Json::object(), em = Json::object();
    for (const auto& kv : h.vertexMap()) vm[kv.first] = kv.second;
    for (const auto& kv : h.edgeMap()) em[kv.first] = kv.second;
    return Json{{"vertices", vm}, {"edges", em}};
  };
  j["mu1"] = homJson(w.mu1.hom());
  j["mu2"] = homJson(w.mu2.hom());

  Json tree = Json::array();
  for (const EdgeId& e : w.treeTop.edgeList()) tree.push_back(e);
  j["tree"] = tree;
  j["base"] = w.treeTop.base();

  Json alpha = Json::object();
  for (const auto& kv : w.alpha.edgeMap()) alpha[kv.first] = kv.second;
  j["alpha"] = alpha;

  j["group1"] = groupToJson(w.lifted1.spec());
  j["group2"] = groupToJson(w.lifted2.spec());
  Json l1 = Json::object(), l2 = Json::object();
  for (const EdgeId& e : w.commonCover.edges()) {
    l1[e] = coordsJson(w.lifted1.voltage(e));
    l2[e] = coordsJson(w.lifted2.voltage(e));
  }
  j["lifted1"] = l1;
  j["lifted2"] = l2;

  Json pairs = Json::array();
  for (const auto& [a, b] : w.generatorPairs)
    pairs.push_back(Json::array({coordsJson(a), coordsJson(b)}));
  j["generatorPairs"] = pairs;
  return j;
}

int runChecked(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"voltage graphs over abelian groups: derived graphs, covers, "
               "and derived-graph isomorphism"};
  app.name("voltlift");
  app.require_subcommand(1);

  std::string fileA, fileB, baseOverride;
  int radius = -1;
  bool full = false;
  bool onlyGood = false;
  bool withWitness = false;
  bool alphaSetwise = false;
  long long budget = 0;

  CLI::App* check = app.add_subcommand("check", "parse and validate a document");
  check->add_option("file", fileA)->required();

  CLI::App* derive = app.add_subcommand(
      "derive", "build the derived graph (or a finite ball of it) as DOT");
  derive->add_option("file", fileA)->required();
  CLI::Option* optRadius =
      derive->add_option("--radius", radius, "ball radius around (v0, 0)");
  CLI::Option* optFull = derive->add_flag(
      "--full", full, "derived graph over the full (finite) group");
  optRadius->excludes(optFull);

  CLI::App* cond = app.add_subcommand(
      "condense", "condense the assignment over a deterministic spanning tree");
  cond->add_option("file", fileA)->required();
  cond->add_option("--base", baseOverride, "base vertex (default: first)");

  CLI::App* prod = app.add_subcommand("product",
                                      "directed product of two graphs as DOT");
  prod->add_option("a", fileA)->required();
  prod->add_option("b", fileB)->required();

  CLI::App* covers = app.add_subcommand(
      "covers", "enumerate common covers of two voltage graphs");
  covers->add_option("a", fileA)->required();
  covers->add_option("b", fileB)->required();
  covers->add_flag("--good", onlyGood, "keep only good common covers");
  covers->add_option("--budget", budget, "search node budget");

  CLI::App* decide = app.add_subcommand(
      "decide", "decide whether the two derived graphs are isomorphic");
  decide->add_option("a", fileA)->required();
  decide->add_option("b", fileB)->required();
  decide->add_flag("--witness", withWitness, "print the witness document");
  decide->add_option("--budget", budget, "search node budget");
  decide->add_flag("--alpha-setwise", alphaSetwise,
                   "widen the automorphism search to tree-setwise maps");

  CLI::App* dot = app.add_subcommand("export-dot",
                                     "DOT rendering with voltage labels");
  dot->add_option("file", fileA)->required();

  std::vector<const char*> argv;
  argv.push_back("voltlift");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::stringstream captured;
    int code = app.exit(e, out, captured);
    err << captured.str();
    return code == 0 ? 0 : 1;
  }

  if (budget == 0) budget = defaultBudget();

  if (check->parsed()) {
    VoltageGraphDocument doc = loadDocument(fileA);
    VoltageGraph vg = toVoltageGraph(doc);
    out << "OK " << fileA << ": vertices=" << vg.graph().order()
        << " edges=" << vg.graph().size() << " rank=" << vg.spec().rank()
        << " moduli=[";
    for (std::size_t i = 0; i < vg.spec().moduli().size(); ++i) {
      if (i) out << ",";
      out << vg.spec().moduli()[i].get_str();
    }
    out << "] condensed=" << (hasCondensedAssignment(vg) ? "yes" : "no")
        << "\n";
    return 0;
  }

  if (derive->parsed()) {
    VoltageGraph vg = loadVoltageGraph(fileA);
    if (full) {
      if (!vg.spec().isFinite())
        throw ValidationError(
            "the group is infinite; use --radius to build a finite ball");
      DerivedGraph d = derivedGraph(vg);
      out << exportDot(d.graph);
    } else if (radius >= 0) {
      out << exportDot(derivedBall(vg, radius));
    } else {
      throw ValidationError("derive needs --full or --radius K");
    }
    return 0;
  }

  if (cond->parsed()) {
    VoltageGraphDocument doc = loadDocument(fileA);
    VoltageGraph vg = toVoltageGraph(doc);
    VertexId base = !baseOverride.empty() ? VertexId(baseOverride)
                    : doc.base            ? *doc.base
                                          : vg.graph().vertices().front();
    // Condense over the document's tree when one is given, otherwise over
    // the deterministic breadth-first tree from the base.
    TreeSet tree = doc.tree ? treeFromEdges(vg.graph(), base, *doc.tree)
                            : spanningTree(vg.graph(), base);
    VoltageGraph condensed = condense(vg, tree);
    out << serializeDocument(makeDocument(condensed, tree.edgeList(), base));
    return 0;
  }

  if (prod->parsed()) {
    VoltageGraph a = loadVoltageGraph(fileA);
    VoltageGraph b = loadVoltageGraph(fileB);
    Product theta = directedProduct(a.graph(), b.graph());
    out << exportDot(theta.graph);
    return 0;
  }

  if (covers->parsed()) {
    VoltageGraph a = loadCondensedVoltageGraph(fileA);
    VoltageGraph b = loadCondensedVoltageGraph(fileB);
    std::vector<CommonCover> found =
        findCommonCovers(a.graph(), b.graph(), budget);
    std::vector<std::pair<const CommonCover*, bool>> rows;
    for (const CommonCover& c : found) {
      bool good = true;
      if (onlyGood) {
        const VoltageGraph* vgs[2] = {&a, &b};
        const CoverMap* mus[2] = {&c.mu1, &c.mu2};
        for (int i = 0; i < 2 && good; ++i) {
          TreeSet t = spanningTree(vgs[i]->graph(),
                                   vgs[i]->graph().vertices().front());
          good = isGoodCover(monodromy(*mus[i], t), *vgs[i], t);
        }
        if (!good) continue;
      }
      rows.emplace_back(&c, good);
    }
    out << (onlyGood ? "good common covers: " : "common covers: ")
        << rows.size() << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << "cover " << (i + 1) << ": order=" << rows[i].first->top.order()
          << " size=" << rows[i].first->top.size() << "\n";
    return 0;
  }

  if (decide->parsed()) {
    VoltageGraph a = loadCondensedVoltageGraph(fileA);
    VoltageGraph b = loadCondensedVoltageGraph(fileB);
    DecideOptions opts;
    opts.searchBudget = budget;
    opts.alphaSetwise = alphaSetwise;
    Verdict v = decideIsomorphism(a, b, opts);
    out << outcomeName(v.outcome) << " " << reasonName(v.reason) << "\n";
    if (withWitness && v.witness)
      out << witnessToJson(*v.witness).dump(2) << "\n";
    return v.outcome == Outcome::BudgetExceeded ? 2 : 0;
  }

  if (dot->parsed()) {
    VoltageGraph vg = loadVoltageGraph(fileA);
    std::map<EdgeId, std::string> labels = voltageLabels(vg);
    out << exportDot(vg.graph(), &labels);
    return 0;
  }

  return 1;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  try {
    return runChecked(args, out, err);
  } catch (const SearchBudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace voltlift
