#include "voltlift/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace voltlift {

void Multigraph::addVertex(const VertexId& v) {
  if (hasVertex(v)) throw ValidationError("duplicate vertex id: " + v);
  vindex_[v] = vertices_.size();
  vertices_.push_back(v);
  out_.emplace_back();
  in_.emplace_back();
}

void Multigraph::addEdge(const EdgeId& e, const VertexId& from,
                         const VertexId& to) {
  if (hasEdge(e)) throw ValidationError("duplicate edge id: " + e);
  if (!hasVertex(from))
    throw ValidationError("edge " + e + " has unknown endpoint: " + from);
  if (!hasVertex(to))
    throw ValidationError("edge " + e + " has unknown endpoint: " + to);
  eindex_[e] = edges_.size();
  edges_.push_back(e);
  srcIdx_.push_back(vindex_.at(from));
  dstIdx_.push_back(vindex_.at(to));
  out_[vindex_.at(from)].push_back(e);
  in_[vindex_.at(to)].push_back(e);
}

const VertexId& Multigraph::src(const EdgeId& e) const {
  return vertices_[srcIdx_[edgeIndex(e)]];
}

const VertexId& Multigraph::dst(const EdgeId& e) const {
  return vertices_[dstIdx_[edgeIndex(e)]];
}

const std::vector<EdgeId>& Multigraph::outEdges(const VertexId& v) const {
  return out_[vertexIndex(v)];
}

const std::vector<EdgeId>& Multigraph::inEdges(const VertexId& v) const {
  return in_[vertexIndex(v)];
}

std::size_t Multigraph::vertexIndex(const VertexId& v) const {
  auto it = vindex_.find(v);
  if (it == vindex_.end()) throw UnknownVertexError("unknown vertex: " + v);
  return it->second;
}

std::size_t Multigraph::edgeIndex(const EdgeId& e) const {
  auto it = eindex_.find(e);
  if (it == eindex_.end()) throw ValidationError("unknown edge: " + e);
  return it->second;
}

bool Multigraph::operator==(const Multigraph& other) const {
  return vertices_ == other.vertices_ && edges_ == other.edges_ &&
         srcIdx_ == other.srcIdx_ && dstIdx_ == other.dstIdx_;
}

VertexId Walk::end(const Multigraph& g) const {
  VertexId at = start_;
  if (!g.hasVertex(at)) throw InvalidWalkError("walk starts at unknown vertex: " + at);
  for (const WalkStep& s : steps_) {
    if (!g.hasEdge(s.edge))
      throw InvalidWalkError("walk uses unknown edge: " + s.edge);
    if (s.dir != 1 && s.dir != -1)
      throw InvalidWalkError("walk step direction must be +1 or -1");
    const VertexId& tail = s.dir == 1 ? g.src(s.edge) : g.dst(s.edge);
    const VertexId& head = s.dir == 1 ? g.dst(s.edge) : g.src(s.edge);
    if (tail != at)
      throw InvalidWalkError("walk step " + s.edge +
                             " does not continue from vertex " + at);
    at = head;
  }
  return at;
}

bool Walk::isCyclic(const Multigraph& g) const { return end(g) == start_; }

Walk Walk::then(const Walk& tail) const {
  std::vector<WalkStep> steps = steps_;
  steps.insert(steps.end(), tail.steps().begin(), tail.steps().end());
  return Walk(start_, std::move(steps));
}

TreeSet::TreeSet(VertexId base, std::vector<EdgeId> edgeOrder,
                 std::map<VertexId, ParentLink> parents,
                 std::map<VertexId, int> depths)
    : base_(std::move(base)),
      edgeOrder_(std::move(edgeOrder)),
      parents_(std::move(parents)),
      depths_(std::move(depths)) {
  for (const EdgeId& e : edgeOrder_) inTree_[e] = true;
}

const WalkStep& TreeSet::parentStep(const VertexId& v) const {
  auto it = parents_.find(v);
  if (it == parents_.end())
    throw UnknownVertexError("vertex has no parent step in tree: " + v);
  return it->second.step;
}

int TreeSet::depth(const VertexId& v) const {
  auto it = depths_.find(v);
  if (it == depths_.end())
    throw UnknownVertexError("vertex not covered by tree: " + v);
  return it->second;
}

Walk TreeSet::pathToBase(const VertexId& v) const {
  std::vector<WalkStep> steps;
  VertexId at = v;
  int guard = static_cast<int>(depths_.size()) + 1;
  while (at != base_) {
    if (--guard < 0)
      throw ValidationError("tree parent chain does not reach the base");
    auto it = parents_.find(at);
    if (it == parents_.end())
      throw UnknownVertexError("vertex not covered by tree: " + at);
    steps.push_back(it->second.step);
    at = it->second.parent;
  }
  return Walk(v, std::move(steps));
}

Walk TreeSet::pathFromBase(const VertexId& v) const {
  Walk up = pathToBase(v);
  std::vector<WalkStep> steps;
  const auto& upSteps = up.steps();
  steps.reserve(upSteps.size());
  for (auto it = upSteps.rbegin(); it != upSteps.rend(); ++it)
    steps.push_back({it->edge, -it->dir});
  return Walk(base_, std::move(steps));
}

GraphHom::GraphHom(Multigraph domain, Multigraph codomain,
                   std::map<VertexId, VertexId> vmap,
                   std::map<EdgeId, EdgeId> emap)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      vmap_(std::move(vmap)),
      emap_(std::move(emap)) {
  for (const VertexId& v : domain_.vertices()) {
    auto it = vmap_.find(v);
    if (it == vmap_.end())
      throw ValidationError("homomorphism misses vertex: " + v);
    if (!codomain_.hasVertex(it->second))
      throw ValidationError("homomorphism maps to unknown vertex: " +
                            it->second);
  }
  for (const EdgeId& e : domain_.edges()) {
    auto it = emap_.find(e);
    if (it == emap_.end()) throw ValidationError("homomorphism misses edge: " + e);
    if (!codomain_.hasEdge(it->second))
      throw ValidationError("homomorphism maps to unknown edge: " + it->second);
    if (codomain_.src(it->second) != vmap_.at(domain_.src(e)) ||
        codomain_.dst(it->second) != vmap_.at(domain_.dst(e)))
      throw ValidationError("homomorphism does not respect endpoints of edge " +
                            e);
  }
}

GraphHom GraphHom::identity(const Multigraph& g) {
  std::map<VertexId, VertexId> vmap;
  std::map<EdgeId, EdgeId> emap;
  for (const VertexId& v : g.vertices()) vmap[v] = v;
  for (const EdgeId& e : g.edges()) emap[e] = e;
  return GraphHom(g, g, std::move(vmap), std::move(emap));
}

const VertexId& GraphHom::mapVertex(const VertexId& v) const {
  auto it = vmap_.find(v);
  if (it == vmap_.end()) throw UnknownVertexError("unmapped vertex: " + v);
  return it->second;
}

const EdgeId& GraphHom::mapEdge(const EdgeId& e) const {
  auto it = emap_.find(e);
  if (it == emap_.end()) throw ValidationError("unmapped edge: " + e);
  return it->second;
}

bool isConnected(const Multigraph& g) {
  if (g.order() == 0) return true;
  std::set<VertexId> seen;
  std::deque<VertexId> todo{g.vertices().front()};
  seen.insert(g.vertices().front());
  while (!todo.empty()) {
    VertexId v = todo.front();
    todo.pop_front();
    for (const EdgeId& e : g.outEdges(v)) {
      if (seen.insert(g.dst(e)).second) todo.push_back(g.dst(e));
    }
    for (const EdgeId& e : g.inEdges(v)) {
      if (seen.insert(g.src(e)).second) todo.push_back(g.src(e));
    }
  }
  return seen.size() == g.order();
}

TreeSet spanningTree(const Multigraph& g, const VertexId& base) {
  if (!g.hasVertex(base)) throw UnknownVertexError("unknown vertex: " + base);
  if (!isConnected(g))
    throw DisconnectedGraphError("spanning tree requires a connected graph");

  std::vector<EdgeId> order;
  std::map<VertexId, TreeSet::ParentLink> parent;
  std::map<VertexId, int> depth;
  depth[base] = 0;
  std::deque<VertexId> frontier{base};
  while (!frontier.empty()) {
    VertexId u = frontier.front();
    frontier.pop_front();
    // Full edge scan in insertion order keeps the tie-break deterministic.
    for (const EdgeId& e : g.edges()) {
      if (g.src(e) == u && !depth.count(g.dst(e))) {
        order.push_back(e);
        parent[g.dst(e)] = {{e, -1}, u};  // step dst -> src toward the base
        depth[g.dst(e)] = depth[u] + 1;
        frontier.push_back(g.dst(e));
      } else if (g.dst(e) == u && !depth.count(g.src(e))) {
        order.push_back(e);
        parent[g.src(e)] = {{e, 1}, u};
        depth[g.src(e)] = depth[u] + 1;
        frontier.push_back(g.src(e));
      }
    }
  }
  return TreeSet(base, std::move(order), std::move(parent), std::move(depth));
}

TreeSet treeFromEdges(const Multigraph& g, const VertexId& base,
                      const std::vector<EdgeId>& treeEdges) {
  if (!g.hasVertex(base)) throw UnknownVertexError("unknown vertex: " + base);
  std::set<EdgeId> chosen;
  for (const EdgeId& e : treeEdges) {
    if (!g.hasEdge(e)) throw ValidationError("tree names unknown edge: " + e);
    if (!chosen.insert(e).second)
      throw ValidationError("tree repeats edge: " + e);
  }
  if (chosen.size() + 1 != g.order())
    throw ValidationError("tree edge count must be |V| - 1");

  std::vector<EdgeId> order;
  std::map<VertexId, TreeSet::ParentLink> parent;
  std::map<VertexId, int> depth;
  depth[base] = 0;
  std::deque<VertexId> frontier{base};
  while (!frontier.empty()) {
    VertexId u = frontier.front();
    frontier.pop_front();
    for (const EdgeId& e : g.edges()) {
      if (!chosen.count(e)) continue;
      if (g.src(e) == u && !depth.count(g.dst(e))) {
        order.push_back(e);
        parent[g.dst(e)] = {{e, -1}, u};
        depth[g.dst(e)] = depth[u] + 1;
        frontier.push_back(g.dst(e));
      } else if (g.dst(e) == u && !depth.count(g.src(e))) {
        order.push_back(e);
        parent[g.src(e)] = {{e, 1}, u};
        depth[g.src(e)] = depth[u] + 1;
        frontier.push_back(g.src(e));
      }
    }
  }
  if (depth.size() != g.order())
    throw ValidationError("tree edges do not span the graph");
  if (order.size() != chosen.size())
    throw ValidationError("tree edges contain a cycle");
  return TreeSet(base, std::move(order), std::move(parent), std::move(depth));
}

void requireTreeMatches(const Multigraph& g, const TreeSet& tree) {
  if (tree.vertexCount() != g.order())
    throw ValidationError("tree does not cover the graph's vertex set");
  if (!g.hasVertex(tree.base()))
    throw ValidationError("tree base is not a vertex of the graph");
  for (const EdgeId& e : tree.edgeList())
    if (!g.hasEdge(e))
      throw ValidationError("tree edge is not an edge of the graph: " + e);
}

Walk returnWalk(const Multigraph& g, const TreeSet& tree, const EdgeId& e) {
  requireTreeMatches(g, tree);
  if (!g.hasEdge(e)) throw ValidationError("unknown edge: " + e);
  if (tree.contains(e))
    throw EdgeInTreeError("return walk requires a non-tree edge: " + e);
  Walk walk = tree.pathFromBase(g.src(e));
  walk = walk.then(Walk(g.src(e), {{e, 1}}));
  walk = walk.then(tree.pathToBase(g.dst(e)));
  return walk;
}

std::string makePairId(const std::string& a, const std::string& b) {
  return "(" + a + "|" + b + ")";
}

Product directedProduct(const Multigraph& d1, const Multigraph& d2) {
  Multigraph theta;
  std::map<VertexId, VertexId> v1map, v2map;
  std::map<EdgeId, EdgeId> e1map, e2map;
  for (const VertexId& a : d1.vertices()) {
    for (const VertexId& b : d2.vertices()) {
      VertexId id = makePairId(a, b);
      theta.addVertex(id);
      v1map[id] = a;
      v2map[id] = b;
    }
  }
  for (const EdgeId& e1 : d1.edges()) {
    for (const EdgeId& e2 : d2.edges()) {
      EdgeId id = makePairId(e1, e2);
      theta.addEdge(id, makePairId(d1.src(e1), d2.src(e2)),
                    makePairId(d1.dst(e1), d2.dst(e2)));
      e1map[id] = e1;
      e2map[id] = e2;
    }
  }
  GraphHom p1(theta, d1, v1map, e1map);
  GraphHom p2(theta, d2, v2map, e2map);
  return Product{std::move(theta), std::move(p1), std::move(p2)};
}

bool isCovering(const GraphHom& h) {
  const Multigraph& dom = h.domain();
  const Multigraph& cod = h.codomain();
  std::set<VertexId> vhit;
  std::set<EdgeId> ehit;
  for (const VertexId& v : dom.vertices()) vhit.insert(h.mapVertex(v));
  for (const EdgeId& e : dom.edges()) ehit.insert(h.mapEdge(e));
  if (vhit.size() != cod.order() || ehit.size() != cod.size()) return false;

  for (const VertexId& v : dom.vertices()) {
    const VertexId& w = h.mapVertex(v);
    const auto& outV = dom.outEdges(v);
    if (outV.size() != cod.outEdges(w).size()) return false;
    std::set<EdgeId> seen;
    for (const EdgeId& e : outV)
      if (!seen.insert(h.mapEdge(e)).second) return false;
    const auto& inV = dom.inEdges(v);
    if (inV.size() != cod.inEdges(w).size()) return false;
    seen.clear();
    for (const EdgeId& e : inV)
      if (!seen.insert(h.mapEdge(e)).second) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> degreeProfile(
    const Multigraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> profile;
  profile.reserve(g.order());
  for (const VertexId& v : g.vertices())
    profile.emplace_back(g.inEdges(v).size(), g.outEdges(v).size());
  std::sort(profile.begin(), profile.end());
  return profile;
}

std::vector<GraphHom> automorphismsFixingTree(const Multigraph& g,
                                              const TreeSet& tree) {
  requireTreeMatches(g, tree);

  // Parallel classes among non-tree edges, keyed by (src, dst).
  std::vector<std::vector<EdgeId>> classes;
  std::map<std::pair<VertexId, VertexId>, std::size_t> classOf;
  for (const EdgeId& e : g.edges()) {
    if (tree.contains(e)) continue;
    auto key = std::make_pair(g.src(e), g.dst(e));
    auto it = classOf.find(key);
    if (it == classOf.end()) {
      classOf[key] = classes.size();
      classes.push_back({e});
    } else {
      classes[it->second].push_back(e);
    }
  }

  std::vector<GraphHom> result;
  std::map<VertexId, VertexId> vmap;
  for (const VertexId& v : g.vertices()) vmap[v] = v;

  // Direct product of the permutations of each class.
  std::vector<std::vector<std::size_t>> perms(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    perms[i].resize(classes[i].size());
    std::iota(perms[i].begin(), perms[i].end(), 0);
  }
  while (true) {
    std::map<EdgeId, EdgeId> emap;
    for (const EdgeId& e : tree.edgeList()) emap[e] = e;
    for (std::size_t i = 0; i < classes.size(); ++i)
      for (std::size_t j = 0; j < classes[i].size(); ++j)
        emap[classes[i][j]] = classes[i][perms[i][j]];
    result.emplace_back(g, g, vmap, std::move(emap));

    std::size_t k = 0;
    while (k < perms.size() &&
           !std::next_permutation(perms[k].begin(), perms[k].end()))
      ++k;
    if (k == perms.size()) break;
  }
  return result;
}

}  // namespace voltlift
