#pragma once

#include "powerslab/tree.hpp"

#include <cstdint>
#include <vector>

namespace powerslab {

// A clopen subset of the boundary, as a finite union of shadows U_{v0,eta}.
// Stored as a reduced trie over the tree rooted at v0: a node is Empty,
// Full, or Split into one child per outward neighbour.  Reduced tries are
// unique, so equality is structural.
class ShadowSet {
 public:
  struct Uniform {
    std::size_t radius = 0;
    std::vector<Vertex> directions;  // the smaller side, at distance radius
    bool polarity = false;           // true: directions list the complement
  };

  static ShadowSet empty(const BsParams& p);
  static ShadowSet full(const BsParams& p);
  // U_{v0,eta}; throws BasePointShadow for eta = v0.
  static ShadowSet shadow(const Vertex& eta);
  // U_{rho,eta} for rho != eta, re-expressed from v0.
  static ShadowSet seen_from(const Vertex& rho, const Vertex& eta);
  static ShadowSet from_uniform(const BsParams& p, std::size_t radius,
                                const std::vector<Vertex>& directions, bool polarity);

  const BsParams& params() const { return params_; }
  bool is_empty() const { return root_.kind == Empty; }
  bool is_full() const { return root_.kind == Full; }
  bool contains(const BoundaryPoint& x) const;

  ShadowSet complement() const;
  ShadowSet unite(const ShadowSet& o) const;
  ShadowSet intersect(const ShadowSet& o) const;
  ShadowSet minus(const ShadowSet& o) const;
  bool is_disjoint(const ShadowSet& o) const;
  bool is_subset(const ShadowSet& o) const;

  // g * S, exact.
  ShadowSet act(const BsElement& g) const;

  // Height of the trie: the least radius at which S is a union of shadows.
  std::size_t radius() const;
  Uniform uniform() const { return uniform(radius()); }
  Uniform uniform(std::size_t r) const;
  // Number of sphere vertices at distance r whose shadows lie in S.
  Integer count_at(std::size_t r) const;
  // The coarsest vertices whose shadows partition S.
  std::vector<Vertex> pieces() const;

  bool operator==(const ShadowSet& o) const;

 private:
  enum Kind : std::uint8_t { Empty, Full, Split };
  struct Node {
    Kind kind = Empty;
    std::vector<Node> kids;
    bool operator==(const Node&) const = default;
  };

  explicit ShadowSet(const BsParams& p) : params_(p) {}

  static void reduce(Node& n);
  static Node complement_node(const Node& n);
  static Node merge(const Node& a, const Node& b, bool union_op);
  static bool disjoint_nodes(const Node& a, const Node& b);
  static std::size_t height(const Node& n);
  void insert(const Vertex& eta);
  template <class F>
  void visit_leaves(const Node& n, const Vertex& v, std::size_t depth, F&& f) const;
  std::size_t leaves(Kind k) const;

  BsParams params_;
  Node root_;
};

inline ShadowSet act_on_shadow(const BsElement& g, const ShadowSet& s) { return s.act(g); }

// Slot of a vertex below its parent in the child order of children().
std::size_t child_slot(const Vertex& v);

}  // namespace powerslab
