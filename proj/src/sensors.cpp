#include "cdt/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace cdt {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

void validate_network(const SensorNetwork& net) {
  if (net.dim < 1) throw DomainError("network dim must be positive");
  if (net.sensors < 1) throw DomainError("network needs at least one sensor");
  std::set<int> anchor_ids;
  for (const auto& a : net.anchors) {
    if (a.index < 0 || a.index >= net.sensors) throw DomainError("anchor index out of range");
    if (static_cast<int>(a.pos.size()) != net.dim) throw DomainError("anchor position has wrong dimension");
    if (!anchor_ids.insert(a.index).second) throw DomainError("duplicate anchor index");
  }
  if (net.distances.empty()) throw DomainError("network needs at least one distance");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : net.distances) {
    if (e.i < 0 || e.j < 0 || e.i >= net.sensors || e.j >= net.sensors)
      throw DomainError("distance index out of range");
    if (e.i >= e.j) throw DomainError("distance pairs must have i < j");
    if (!(e.d > 0.0)) throw DomainError("distances must be positive");
    if (!seen.insert({e.i, e.j}).second) throw DomainError("duplicate distance pair");
    if (anchor_ids.count(e.i) && anchor_ids.count(e.j))
      throw DomainError("distance between two anchors is a constant term; drop it");
  }
}

}  // namespace

SensorReduction build_sensor_instance(const SensorNetwork& net) {
  validate_network(net);
  const int d = net.dim;

  std::map<int, Vec> anchor_pos;
  for (const auto& a : net.anchors) anchor_pos[a.index] = a.pos;

  std::vector<int> unknown;
  std::map<int, int> slot;  // sensor index -> unknown slot
  for (int s = 0; s < net.sensors; ++s)
    if (!anchor_pos.count(s)) {
      slot[s] = static_cast<int>(unknown.size());
      unknown.push_back(s);
    }
  const int q = static_cast<int>(unknown.size());
  if (q == 0) throw DomainError("all sensors are anchored; nothing to solve");

  UnionFind uf(q);
  for (const auto& e : net.distances)
    if (slot.count(e.i) && slot.count(e.j)) uf.unite(slot[e.i], slot[e.j]);

  // One distinct anchor position allowed per component; it becomes the
  // component's origin.
  std::map<int, Vec> comp_anchor;
  for (const auto& e : net.distances) {
    const bool ai = anchor_pos.count(e.i) > 0;
    const bool aj = anchor_pos.count(e.j) > 0;
    if (ai == aj) continue;
    const int us = slot[ai ? e.j : e.i];
    const Vec& pos = anchor_pos[ai ? e.i : e.j];
    const int root = uf.find(us);
    auto it = comp_anchor.find(root);
    if (it == comp_anchor.end()) {
      comp_anchor[root] = pos;
    } else if (it->second != pos) {
      throw DomainError(
          "component references two distinct anchor positions; exact reduction to the "
          "quartic class is not possible for this network");
    }
  }

  SensorReduction out;
  out.unknown_indices = unknown;
  out.offsets.resize(q, Vec(d, 0.0));
  for (int u = 0; u < q; ++u) {
    auto it = comp_anchor.find(uf.find(u));
    if (it != comp_anchor.end()) out.offsets[u] = it->second;
  }

  ProblemInstance inst;
  inst.n = d * q;
  inst.a = Matrix(inst.n, inst.n);
  inst.f.assign(inst.n, 0.0);

  for (const auto& e : net.distances) {
    QuarticTerm term;
    term.c = Matrix(inst.n, inst.n);
    term.beta = 4.0;
    term.theta = 0.5 * e.d * e.d;
    const bool ai = anchor_pos.count(e.i) > 0;
    const bool aj = anchor_pos.count(e.j) > 0;
    if (!ai && !aj) {
      const int si = slot[e.i] * d, sj = slot[e.j] * d;
      for (int k = 0; k < d; ++k) {
        term.c(si + k, si + k) = 1.0;
        term.c(sj + k, sj + k) = 1.0;
        term.c(si + k, sj + k) = -1.0;
        term.c(sj + k, si + k) = -1.0;
      }
    } else {
      // One anchored endpoint; in shifted coordinates the anchor is at the
      // origin of the unknown's component, so the term is centered.
      const int su = slot[ai ? e.j : e.i] * d;
      for (int k = 0; k < d; ++k) term.c(su + k, su + k) = 1.0;
    }
    inst.quartic_terms.push_back(std::move(term));
  }
  out.instance = std::move(inst);
  return out;
}

double direct_least_squares(const SensorNetwork& net, const std::vector<Vec>& unknown_positions) {
  std::map<int, Vec> pos;
  for (const auto& a : net.anchors) pos[a.index] = a.pos;
  int slot = 0;
  for (int s = 0; s < net.sensors; ++s)
    if (!pos.count(s)) {
      if (slot >= static_cast<int>(unknown_positions.size()))
        throw DimensionError("not enough unknown positions supplied");
      pos[s] = unknown_positions[slot++];
    }
  double total = 0.0;
  for (const auto& e : net.distances) {
    const Vec& ui = pos.at(e.i);
    const Vec& uj = pos.at(e.j);
    double dist2 = 0.0;
    for (int k = 0; k < net.dim; ++k) dist2 += (ui[k] - uj[k]) * (ui[k] - uj[k]);
    const double r = dist2 - e.d * e.d;
    total += 0.5 * r * r;
  }
  return total;
}

}  // namespace cdt
