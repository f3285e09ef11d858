#ifndef RPT_DIAGRAM_HPP
#define RPT_DIAGRAM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rpt/cumulants.hpp"
#include "rpt/rational.hpp"

namespace rpt {

enum class Variance { upper, lower };

struct Leg {
  int type;
  Variance variance;

  friend auto operator<=>(const Leg&, const Leg&) = default;
};

/// Ordered boundary signature; insertion matching is positional.
using LegSignature = std::vector<Leg>;

enum class VertexKind { bare, physical, generic };

struct Vertex {
  int id;
  VertexKind kind = VertexKind::generic;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Internal propagator line. var_u / var_v are the index variances seen at
/// the two endpoints. Construction normalizes u <= v (swapping the pair
/// along) and self-loop pairs to upper-before-lower, then sorts the edge
/// list, so equal diagrams are structurally equal.
struct Edge {
  int u;
  int v;
  int type;
  Variance var_u;
  Variance var_v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ExternalLeg {
  int vertex;
  int type;
  Variance variance;

  friend bool operator==(const ExternalLeg&, const ExternalLeg&) = default;
};

/// Typed multigraph with ordered external legs. Values are immutable;
/// every operation returns a new diagram. Edge ids are positions in the
/// canonically sorted edge list.
class Diagram {
 public:
  static Diagram make(ModelSpec model, std::vector<Vertex> vertices, std::vector<Edge> edges,
                      std::vector<ExternalLeg> external_legs);

  const ModelSpec& model() const { return model_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<ExternalLeg>& external_legs() const { return external_legs_; }

  int el() const { return static_cast<int>(external_legs_.size()); }
  LegSignature external_signature() const;
  bool has_vertex(int id) const;

  bool operator==(const Diagram& other) const;

 private:
  Diagram() = default;

  ModelSpec model_;
  std::vector<Vertex> vertices_;  // sorted by id
  std::vector<Edge> edges_;       // normalized + sorted
  std::vector<ExternalLeg> external_legs_;
};

/// Connectivity of the multigraph on internal edges; the empty diagram is
/// connected by convention. External legs play no role.
bool is_connected(const Diagram& d);

/// True iff no internal edge is a bridge. Parallel edges are never
/// bridges; self-loops never matter. Requires a connected diagram.
bool is_one_particle_irreducible(const Diagram& d);

/// Even leg count per type with equal numbers of upper and lower indices:
/// the signature a gauge-invariant insertion must present.
bool gauge_invariant_vertex_check(const LegSignature& signature);

/// All incidences at one vertex (both ends of self-loops) followed by the
/// external legs attached there, in canonical edge order.
LegSignature vertex_signature(const Diagram& d, int vertex_id);

/// Replaces the induced subdiagram on `subdiagram_vertices` by
/// `replacement`. The replacement's external legs must match, in order,
/// the cut edges joining the subdiagram to the rest, ordered by
/// (outside vertex id, type, inside variance). External legs of the host
/// may not attach inside the replaced region. Removed vertex ids are
/// reused for the replacement's vertices (in sorted order), so replacing
/// a subdiagram with an identical copy reproduces the host exactly.
Diagram insert_vertex(const Diagram& host, const std::vector<int>& subdiagram_vertices,
                      const Diagram& replacement);

struct SubtractedTerm {
  Diagram diagram;
  bool subtracted = true;
};

struct BreakLineTerms {
  /// Host with a new bare 2-valent vertex on the broken line carrying an
  /// attached influence-type loop.
  Diagram with_loop;
  /// Vacuum-subtraction counterterm: same topology, flagged subtracted.
  /// Evaluation of the subtracted expectation is power-counting data and
  /// lives outside the topology layer.
  SubtractedTerm counterterm;
};

/// Breaks internal edge `edge_id` (a type-a line) under the influence of
/// `influence_type` (type b), producing the two terms of
/// (X^a X^a)(X^b X^b - <X^b X^b>). External legs are untouched.
BreakLineTerms break_line(const Diagram& d, int edge_id, int influence_type);

/// Groups the diagram's connected components into two nonempty parts such
/// that each part's external legs form a gauge-invariant signature, if
/// possible. Connected diagrams never factorize.
bool factorizes(const Diagram& d);

/// Connected, external legs of a single type only, and no gauge-invariant
/// factorization.
bool is_prime(const Diagram& d);

/// Streams connected single-type multigraphs with 1..max_edges edges on
/// 1..max_vertices vertices, no external legs, in deterministic
/// (vertex count, edge count, edge list) order. By default one canonical
/// representative per isomorphism class is produced; with
/// `include_all_labelings` every labeled multigraph is streamed.
/// Bounds above (7, 6) are rejected.
void for_each_connected_multigraph(int max_edges, int max_vertices, bool include_all_labelings,
                                   const std::function<void(const Diagram&)>& visit);

std::vector<Diagram> enumerate_connected_multigraphs(int max_edges, int max_vertices,
                                                     bool include_all_labelings = false);

/// Label-independent identity for de-duplication of small diagrams
/// (minimum over vertex relabelings; guarded to <= 8 vertices).
std::string canonical_key(const Diagram& d);

/// Perfect matchings of n items: (n-1)!! for even n, 0 for odd n.
BigInt count_pairings(int n);

}  // namespace rpt

#endif
