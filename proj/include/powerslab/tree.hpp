#pragma once

#include "powerslab/group.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace powerslab {

// A coset g<a>, i.e. a vertex of the Bass-Serre tree.  The representative
// is the normal form of g with the trailing a-power removed.
class Vertex {
 public:
  explicit Vertex(const BsElement& g) : rep_(g) { rep_.clear_final(); }
  static Vertex base(const BsParams& p) { return Vertex(BsElement(p)); }

  const BsElement& rep() const { return rep_; }
  const BsParams& params() const { return rep_.params(); }
  // Distance from the base vertex.
  std::size_t depth() const { return rep_.length(); }
  std::string str() const { return rep_.str(); }

  bool operator==(const Vertex& o) const { return rep_ == o.rep_; }
  auto operator<=>(const Vertex& o) const { return rep_ <=> o.rep_; }

 private:
  BsElement rep_;
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const { return v.rep().hash(); }
};

Vertex act(const BsElement& g, const Vertex& v);
std::vector<Vertex> neighbors(const Vertex& v);
// Neighbours of v farther from the base vertex, in the fixed child order:
// a^j t (j < n) then a^j t^-1 (j < |m|), skipping the way back.
std::vector<Vertex> children(const Vertex& v);
std::size_t distance(const Vertex& v, const Vertex& w);
std::vector<Vertex> geodesic(const Vertex& v, const Vertex& w);
// All vertices at distance exactly r (resp. at most r) from the base vertex,
// in breadth-first child order.
std::vector<Vertex> sphere(const BsParams& p, std::size_t r);
std::vector<Vertex> ball(const BsParams& p, std::size_t r);
// Regular tree counts.
Integer sphere_size(const BsParams& p, std::size_t r);
Integer ball_size(const BsParams& p, std::size_t r);

struct Classification {
  enum class Kind { Elliptic, Hyperbolic };
  Kind kind;
  std::size_t length;  // translation length, 0 when elliptic
  Vertex vertex;       // a fixed vertex, or a vertex on the axis

  bool hyperbolic() const { return kind == Kind::Hyperbolic; }
};

Classification classify(const BsElement& g);
// Throws EllipticInput unless g is hyperbolic.
Classification require_hyperbolic(const BsElement& g);

// The end prefix * omega(engine^orientation), where omega(h) is the
// attracting end of the hyperbolic element h.
class BoundaryPoint {
 public:
  BoundaryPoint(BsElement prefix, BsElement engine, int orientation = 1);

  const BsElement& prefix() const { return prefix_; }
  const BsElement& engine() const { return engine_; }
  int orientation() const { return orientation_; }
  const BsParams& params() const { return prefix_.params(); }

  // The engine raised to the orientation, its translation length and an
  // axis vertex (before applying the prefix).
  const BsElement& directed_engine() const { return directed_; }
  std::size_t period() const { return period_; }
  const Vertex& axis_vertex() const { return axis_; }
  // Upper bound for the distance from v0 to the translated axis.
  std::size_t preperiod() const;

  BoundaryPoint translated(const BsElement& g) const;
  // First depth+1 vertices of the geodesic ray from rho towards this end.
  std::vector<Vertex> ray(const Vertex& rho, std::size_t depth) const;

  std::string str() const;

 private:
  BsElement prefix_;
  BsElement engine_;
  int orientation_;
  BsElement directed_;
  std::size_t period_;
  Vertex axis_;
};

// Comparison depth used for equality of two ends.
std::size_t equality_depth(const BoundaryPoint& x, const BoundaryPoint& y);
bool same_end(const BoundaryPoint& x, const BoundaryPoint& y);
bool same_end_to_depth(const BoundaryPoint& x, const BoundaryPoint& y, std::size_t depth);

BoundaryPoint attracting(const BsElement& g);
BoundaryPoint repelling(const BsElement& g);
bool is_transverse(const BsElement& g, const BsElement& h);
bool fixes(const BsElement& g, const BoundaryPoint& x);

// Length of the common part of the rays [rho,x) and [rho,y); nullopt when
// x and y are the same end.
std::optional<std::size_t> meet(const Vertex& rho, const BoundaryPoint& x,
                                const BoundaryPoint& y);

// Depth past which g strictly increases the meet with its attracting end.
std::size_t contraction_depth(const BsElement& g, const Vertex& rho);

struct ContractionCheck {
  std::size_t depth = 0;
  std::size_t checked = 0;
  std::size_t failures = 0;
  bool ok() const { return failures == 0; }
};

// Exact check on every sphere direction at depths d .. d+extra around rho
// that leaves the attracting ray at distance >= d.
ContractionCheck verify_contraction(const BsElement& g, const Vertex& rho, std::size_t d,
                                    std::size_t extra = 3);

// A point of the shadow of zeta seen from rho.
BoundaryPoint sample_point(const Vertex& rho, const Vertex& zeta);

}  // namespace powerslab

template <>
struct std::hash<powerslab::Vertex> {
  std::size_t operator()(const powerslab::Vertex& v) const { return v.rep().hash(); }
};
