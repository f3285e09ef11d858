#include "rpt/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rpt/combinatorics.hpp"

namespace rpt {

namespace {

Edge normalized(Edge e) {
  if (e.u > e.v) {
    std::swap(e.u, e.v);
    std::swap(e.var_u, e.var_v);
  } else if (e.u == e.v && e.var_v < e.var_u) {
    std::swap(e.var_u, e.var_v);
  }
  return e;
}

}  // namespace

Diagram Diagram::make(ModelSpec model, std::vector<Vertex> vertices, std::vector<Edge> edges,
                      std::vector<ExternalLeg> external_legs) {
  validate_model(model);
  std::sort(vertices.begin(), vertices.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i].id == vertices[i - 1].id) {
      throw std::invalid_argument("duplicate vertex id " + std::to_string(vertices[i].id));
    }
  }
  Diagram d;
  d.model_ = model;
  d.vertices_ = std::move(vertices);
  const auto check_type = [&](int type) {
    if (type < 0 || type >= model.num_types()) {
      throw std::invalid_argument("particle type " + std::to_string(type) +
                                  " outside the model's type range");
    }
  };
  for (Edge e : edges) {
    if (!d.has_vertex(e.u) || !d.has_vertex(e.v)) {
      throw std::invalid_argument("edge references a missing vertex");
    }
    check_type(e.type);
    d.edges_.push_back(normalized(e));
  }
  std::sort(d.edges_.begin(), d.edges_.end());
  for (const ExternalLeg& leg : external_legs) {
    if (!d.has_vertex(leg.vertex)) {
      throw std::invalid_argument("external leg references a missing vertex");
    }
    check_type(leg.type);
  }
  d.external_legs_ = std::move(external_legs);
  return d;
}

bool Diagram::has_vertex(int id) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), Vertex{id, VertexKind::generic},
                            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
}

LegSignature Diagram::external_signature() const {
  LegSignature sig;
  sig.reserve(external_legs_.size());
  for (const ExternalLeg& leg : external_legs_) sig.push_back({leg.type, leg.variance});
  return sig;
}

bool Diagram::operator==(const Diagram& other) const {
  return model_.dim_gauge == other.model_.dim_gauge &&
         model_.dim_matter == other.model_.dim_matter &&
         model_.coupling == other.model_.coupling && vertices_ == other.vertices_ &&
         edges_ == other.edges_ && external_legs_ == other.external_legs_;
}

namespace {

std::map<int, int> vertex_positions(const Diagram& d) {
  std::map<int, int> pos;
  for (size_t i = 0; i < d.vertices().size(); ++i) pos[d.vertices()[i].id] = static_cast<int>(i);
  return pos;
}

struct UnionFind {
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
  std::vector<int> parent;
};

}  // namespace

bool is_connected(const Diagram& d) {
  const int n = static_cast<int>(d.vertices().size());
  if (n == 0) return true;
  const auto pos = vertex_positions(d);
  UnionFind uf(n);
  for (const Edge& e : d.edges()) uf.unite(pos.at(e.u), pos.at(e.v));
  const int root = uf.find(0);
  for (int i = 1; i < n; ++i) {
    if (uf.find(i) != root) return false;
  }
  return true;
}

bool is_one_particle_irreducible(const Diagram& d) {
  if (!is_connected(d)) {
    throw std::domain_error("one-particle irreducibility is defined for connected diagrams");
  }
  const int n = static_cast<int>(d.vertices().size());
  if (n == 0) return true;
  const auto pos = vertex_positions(d);
  // Adjacency without self-loops; a self-loop is never a bridge.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(n));
  for (size_t e = 0; e < d.edges().size(); ++e) {
    const int u = pos.at(d.edges()[e].u);
    const int v = pos.at(d.edges()[e].v);
    if (u == v) continue;
    adj[static_cast<size_t>(u)].push_back({v, static_cast<int>(e)});
    adj[static_cast<size_t>(v)].push_back({u, static_cast<int>(e)});
  }
  // Iterative low-link DFS; an edge (u, child) is a bridge iff
  // low[child] > disc[u]. Parallel edges carry distinct ids, so the
  // second one acts as a back edge and protects the pair.
  std::vector<int> disc(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  struct Frame {
    int vertex;
    int entry_edge;
    size_t next_neighbor;
  };
  int clock = 0;
  std::vector<Frame> stack;
  stack.push_back({0, -1, 0});
  disc[0] = low[0] = clock++;
  while (!stack.empty()) {
    Frame& frame = stack.back();
    const auto& neighbors = adj[static_cast<size_t>(frame.vertex)];
    if (frame.next_neighbor < neighbors.size()) {
      const auto [next, edge_id] = neighbors[frame.next_neighbor++];
      if (edge_id == frame.entry_edge) continue;
      if (disc[static_cast<size_t>(next)] >= 0) {
        low[static_cast<size_t>(frame.vertex)] =
            std::min(low[static_cast<size_t>(frame.vertex)], disc[static_cast<size_t>(next)]);
        continue;
      }
      disc[static_cast<size_t>(next)] = low[static_cast<size_t>(next)] = clock++;
      stack.push_back({next, edge_id, 0});
      continue;
    }
    const int finished = frame.vertex;
    stack.pop_back();
    if (!stack.empty()) {
      Frame& parent = stack.back();
      low[static_cast<size_t>(parent.vertex)] =
          std::min(low[static_cast<size_t>(parent.vertex)], low[static_cast<size_t>(finished)]);
      if (low[static_cast<size_t>(finished)] > disc[static_cast<size_t>(parent.vertex)]) {
        return false;  // bridge found
      }
    }
  }
  return true;
}

bool gauge_invariant_vertex_check(const LegSignature& signature) {
  std::map<int, std::pair<int, int>> counts;  // type -> (upper, lower)
  for (const Leg& leg : signature) {
    auto& [upper, lower] = counts[leg.type];
    (leg.variance == Variance::upper ? upper : lower) += 1;
  }
  for (const auto& [type, count] : counts) {
    const auto& [upper, lower] = count;
    if ((upper + lower) % 2 != 0 || upper != lower) return false;
  }
  return true;
}

LegSignature vertex_signature(const Diagram& d, int vertex_id) {
  if (!d.has_vertex(vertex_id)) throw std::invalid_argument("unknown vertex id");
  LegSignature sig;
  for (const Edge& e : d.edges()) {
    if (e.u == vertex_id) sig.push_back({e.type, e.var_u});
    if (e.v == vertex_id) sig.push_back({e.type, e.var_v});
  }
  for (const ExternalLeg& leg : d.external_legs()) {
    if (leg.vertex == vertex_id) sig.push_back({leg.type, leg.variance});
  }
  return sig;
}

namespace {

struct CutEdge {
  int outside;
  int inside;
  int type;
  Variance var_inside;
  Variance var_outside;
};

}  // namespace

Diagram insert_vertex(const Diagram& host, const std::vector<int>& subdiagram_vertices,
                      const Diagram& replacement) {
  if (subdiagram_vertices.empty()) {
    throw std::invalid_argument("subdiagram vertex set must be nonempty");
  }
  if (host.model().num_types() != replacement.model().num_types()) {
    throw std::invalid_argument("replacement model has a different type count");
  }
  std::set<int> inside(subdiagram_vertices.begin(), subdiagram_vertices.end());
  for (int id : inside) {
    if (!host.has_vertex(id)) {
      throw std::invalid_argument("subdiagram vertex " + std::to_string(id) +
                                  " is not part of the host");
    }
  }
  for (const ExternalLeg& leg : host.external_legs()) {
    if (inside.count(leg.vertex) > 0) {
      throw std::invalid_argument(
          "host external legs attach inside the replaced subdiagram; the boundary signature "
          "covers cut edges only");
    }
  }

  std::vector<CutEdge> cut;
  std::vector<Edge> kept_edges;
  for (const Edge& e : host.edges()) {
    const bool u_in = inside.count(e.u) > 0;
    const bool v_in = inside.count(e.v) > 0;
    if (u_in && v_in) continue;
    if (!u_in && !v_in) {
      kept_edges.push_back(e);
      continue;
    }
    if (u_in) {
      cut.push_back({e.v, e.u, e.type, e.var_u, e.var_v});
    } else {
      cut.push_back({e.u, e.v, e.type, e.var_v, e.var_u});
    }
  }
  std::stable_sort(cut.begin(), cut.end(), [](const CutEdge& a, const CutEdge& b) {
    return std::tie(a.outside, a.type, a.var_inside) < std::tie(b.outside, b.type, b.var_inside);
  });

  const LegSignature offered = replacement.external_signature();
  if (offered.size() != cut.size()) {
    throw std::invalid_argument("insertion signature mismatch: leg count differs from cut edges");
  }
  for (size_t k = 0; k < cut.size(); ++k) {
    if (offered[k].type != cut[k].type || offered[k].variance != cut[k].var_inside) {
      throw std::invalid_argument("insertion signature mismatch at boundary position " +
                                  std::to_string(k));
    }
  }

  // Reuse removed ids (sorted) for the replacement's vertices in id order;
  // any surplus gets fresh ids above everything else.
  std::vector<int> removed(inside.begin(), inside.end());
  int max_id = -1;
  for (const Vertex& v : host.vertices()) max_id = std::max(max_id, v.id);
  for (int id : removed) max_id = std::max(max_id, id);
  std::map<int, int> remap;
  size_t next_reuse = 0;
  for (const Vertex& v : replacement.vertices()) {
    remap[v.id] = next_reuse < removed.size() ? removed[next_reuse++] : ++max_id;
  }

  std::vector<Vertex> vertices;
  for (const Vertex& v : host.vertices()) {
    if (inside.count(v.id) == 0) vertices.push_back(v);
  }
  for (const Vertex& v : replacement.vertices()) vertices.push_back({remap.at(v.id), v.kind});

  for (const Edge& e : replacement.edges()) {
    kept_edges.push_back({remap.at(e.u), remap.at(e.v), e.type, e.var_u, e.var_v});
  }
  for (size_t k = 0; k < cut.size(); ++k) {
    const int attach = remap.at(replacement.external_legs()[k].vertex);
    kept_edges.push_back(
        {cut[k].outside, attach, cut[k].type, cut[k].var_outside, cut[k].var_inside});
  }

  return Diagram::make(host.model(), std::move(vertices), std::move(kept_edges),
                       host.external_legs());
}

BreakLineTerms break_line(const Diagram& d, int edge_id, int influence_type) {
  if (edge_id < 0 || edge_id >= static_cast<int>(d.edges().size())) {
    throw std::out_of_range("edge id out of range: only internal lines can be broken");
  }
  if (influence_type < 0 || influence_type >= d.model().num_types()) {
    throw std::invalid_argument("influence type outside the model's type range");
  }
  const Edge broken = d.edges()[static_cast<size_t>(edge_id)];
  int new_id = 0;
  for (const Vertex& v : d.vertices()) new_id = std::max(new_id, v.id + 1);

  std::vector<Vertex> vertices = d.vertices();
  vertices.push_back({new_id, VertexKind::bare});
  std::vector<Edge> edges;
  for (int e = 0; e < static_cast<int>(d.edges().size()); ++e) {
    if (e != edge_id) edges.push_back(d.edges()[static_cast<size_t>(e)]);
  }
  // The insertion presents one upper and one lower line of the broken type
  // plus a balanced influence loop, so the new vertex is gauge invariant.
  edges.push_back({broken.u, new_id, broken.type, broken.var_u, Variance::lower});
  edges.push_back({new_id, broken.v, broken.type, Variance::upper, broken.var_v});
  edges.push_back({new_id, new_id, influence_type, Variance::upper, Variance::lower});

  Diagram with_loop = Diagram::make(d.model(), std::move(vertices), std::move(edges),
                                    d.external_legs());
  BreakLineTerms out{with_loop, {with_loop, true}};
  return out;
}

namespace {

std::vector<int> component_labels(const Diagram& d) {
  const int n = static_cast<int>(d.vertices().size());
  const auto pos = vertex_positions(d);
  UnionFind uf(n);
  for (const Edge& e : d.edges()) uf.unite(pos.at(e.u), pos.at(e.v));
  std::map<int, int> roots;
  std::vector<int> label(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int root = uf.find(i);
    auto [it, inserted] = roots.emplace(root, static_cast<int>(roots.size()));
    label[static_cast<size_t>(i)] = it->second;
  }
  return label;
}

}  // namespace

bool factorizes(const Diagram& d) {
  const int n = static_cast<int>(d.vertices().size());
  if (n == 0) return false;
  const auto pos = vertex_positions(d);
  const std::vector<int> label = component_labels(d);
  const int components = 1 + *std::max_element(label.begin(), label.end());
  if (components < 2) return false;
  if (components > 20) {
    throw std::domain_error("factorization search is guarded to <= 20 components");
  }
  std::vector<LegSignature> legs_per_component(static_cast<size_t>(components));
  for (const ExternalLeg& leg : d.external_legs()) {
    legs_per_component[static_cast<size_t>(label[static_cast<size_t>(pos.at(leg.vertex))])]
        .push_back({leg.type, leg.variance});
  }
  // A vertex partition with no connecting edge groups whole components;
  // component 0 stays on side B so each bipartition is visited once.
  const unsigned groupings = 1u << (components - 1);
  for (unsigned mask = 1; mask < groupings; ++mask) {
    LegSignature side_a;
    LegSignature side_b = legs_per_component[0];
    for (int c = 1; c < components; ++c) {
      auto& side = (mask >> (c - 1)) & 1u ? side_a : side_b;
      side.insert(side.end(), legs_per_component[static_cast<size_t>(c)].begin(),
                  legs_per_component[static_cast<size_t>(c)].end());
    }
    if (gauge_invariant_vertex_check(side_a) && gauge_invariant_vertex_check(side_b)) {
      return true;
    }
  }
  return false;
}

bool is_prime(const Diagram& d) {
  if (!is_connected(d)) return false;
  for (size_t i = 1; i < d.external_legs().size(); ++i) {
    if (d.external_legs()[i].type != d.external_legs()[0].type) return false;
  }
  return !factorizes(d);
}

namespace {

using EdgePair = std::pair<int, int>;

bool edge_list_connected(const std::vector<EdgePair>& edges, int num_vertices) {
  UnionFind uf(num_vertices);
  for (const auto& [u, v] : edges) uf.unite(u, v);
  const int root = uf.find(0);
  for (int i = 1; i < num_vertices; ++i) {
    if (uf.find(i) != root) return false;
  }
  return true;
}

bool is_minimal_labeling(const std::vector<EdgePair>& edges, int num_vertices) {
  std::vector<int> perm(static_cast<size_t>(num_vertices));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<EdgePair> mapped;
  mapped.reserve(edges.size());
  while (std::next_permutation(perm.begin(), perm.end())) {
    mapped.clear();
    for (const auto& [u, v] : edges) {
      const int pu = perm[static_cast<size_t>(u)];
      const int pv = perm[static_cast<size_t>(v)];
      mapped.push_back({std::min(pu, pv), std::max(pu, pv)});
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped < edges) return false;
  }
  return true;
}

Diagram diagram_from_edge_list(const std::vector<EdgePair>& edges, int num_vertices) {
  std::vector<Vertex> vertices;
  vertices.reserve(static_cast<size_t>(num_vertices));
  for (int i = 0; i < num_vertices; ++i) vertices.push_back({i, VertexKind::generic});
  std::vector<Edge> typed;
  typed.reserve(edges.size());
  for (const auto& [u, v] : edges) typed.push_back({u, v, 0, Variance::upper, Variance::lower});
  return Diagram::make(ModelSpec{1, 0, Rational(0)}, std::move(vertices), std::move(typed), {});
}

}  // namespace

void for_each_connected_multigraph(int max_edges, int max_vertices, bool include_all_labelings,
                                   const std::function<void(const Diagram&)>& visit) {
  if (max_edges < 1 || max_edges > 7 || max_vertices < 1 || max_vertices > 6) {
    throw std::out_of_range("multigraph enumeration bounds exceed the desk-scale guard (7, 6)");
  }
  for (int num_vertices = 1; num_vertices <= max_vertices; ++num_vertices) {
    std::vector<EdgePair> universe;
    for (int u = 0; u < num_vertices; ++u) {
      for (int v = u; v < num_vertices; ++v) universe.push_back({u, v});
    }
    // Generate edge multisets grouped by size so the stream is ordered by
    // (vertex count, edge count, lexicographic edge list).
    for (int num_edges = 1; num_edges <= max_edges; ++num_edges) {
      std::vector<EdgePair> edges;
      const std::function<void(size_t, int)> build = [&](size_t min_slot, int remaining) {
        if (remaining == 0) {
          if (edge_list_connected(edges, num_vertices) &&
              (include_all_labelings || is_minimal_labeling(edges, num_vertices))) {
            visit(diagram_from_edge_list(edges, num_vertices));
          }
          return;
        }
        for (size_t slot = min_slot; slot < universe.size(); ++slot) {
          edges.push_back(universe[slot]);
          build(slot, remaining - 1);
          edges.pop_back();
        }
      };
      build(0, num_edges);
    }
  }
}

std::vector<Diagram> enumerate_connected_multigraphs(int max_edges, int max_vertices,
                                                     bool include_all_labelings) {
  std::vector<Diagram> out;
  for_each_connected_multigraph(max_edges, max_vertices, include_all_labelings,
                                [&](const Diagram& d) { out.push_back(d); });
  return out;
}

std::string canonical_key(const Diagram& d) {
  const int n = static_cast<int>(d.vertices().size());
  if (n > 8) throw std::domain_error("canonical keys are guarded to diagrams with <= 8 vertices");
  const auto pos = vertex_positions(d);
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::tuple<int, int, int, int, int>> edges;
    for (const Edge& e : d.edges()) {
      int u = perm[static_cast<size_t>(pos.at(e.u))];
      int v = perm[static_cast<size_t>(pos.at(e.v))];
      int vu = static_cast<int>(e.var_u);
      int vv = static_cast<int>(e.var_v);
      if (u > v || (u == v && vv < vu)) {
        std::swap(u, v);
        std::swap(vu, vv);
      }
      edges.push_back({u, v, e.type, vu, vv});
    }
    std::sort(edges.begin(), edges.end());
    std::vector<int> kinds(static_cast<size_t>(n));
    for (size_t i = 0; i < d.vertices().size(); ++i) {
      kinds[static_cast<size_t>(perm[i])] = static_cast<int>(d.vertices()[i].kind);
    }
    std::ostringstream key;
    key << n << '|';
    for (int k : kinds) key << k << ',';
    key << '|';
    for (const auto& [u, v, t, vu, vv] : edges) {
      key << u << '-' << v << ':' << t << ':' << vu << vv << ';';
    }
    key << '|';
    for (const ExternalLeg& leg : d.external_legs()) {
      key << perm[static_cast<size_t>(pos.at(leg.vertex))] << ':' << leg.type << ':'
          << static_cast<int>(leg.variance) << ';';
    }
    std::string candidate = key.str();
    if (best.empty() || candidate < best) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

BigInt count_pairings(int n) {
  if (n < 0) throw std::invalid_argument("negative item count");
  if (n % 2 != 0) return 0;
  return double_factorial(n - 1);
}

}  // namespace rpt
