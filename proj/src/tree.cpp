#include "powerslab/tree.hpp"

#include "powerslab/error.hpp"

#include <numeric>
#include <stdexcept>

namespace powerslab {

namespace {

// Vertices start * h.prefix(i) for i = 0 .. min(count, |h|).
std::vector<Vertex> walk(const BsElement& start, const BsElement& h, std::size_t count) {
  std::vector<Vertex> out;
  BsElement x = start;
  out.emplace_back(x);
  x.mul_a(h.leading());
  const auto& s = h.syllables();
  for (std::size_t i = 0; i < s.size() && out.size() <= count; ++i) {
    x.mul_t(s[i].sign);
    out.emplace_back(x);
    x.mul_a(s[i].exponent);
  }
  return out;
}

}  // namespace

Vertex act(const BsElement& g, const Vertex& v) { return Vertex(g * v.rep()); }

std::vector<Vertex> neighbors(const Vertex& v) {
  const auto& p = v.params();
  std::vector<Vertex> out;
  for (long j = 0; j < p.n(); ++j) {
    BsElement g = v.rep();
    g.mul_a(j);
    g.mul_t(1);
    out.emplace_back(g);
  }
  for (long j = 0; j < p.abs_m(); ++j) {
    BsElement g = v.rep();
    g.mul_a(j);
    g.mul_t(-1);
    out.emplace_back(g);
  }
  return out;
}

std::vector<Vertex> children(const Vertex& v) {
  const auto& p = v.params();
  int s = v.rep().last_sign();
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(p.degree()));
  for (int e : {1, -1}) {
    long count = e > 0 ? p.n() : p.abs_m();
    for (long j = 0; j < count; ++j) {
      if (j == 0 && s == -e) continue;
      BsElement g = v.rep();
      g.mul_a(j);
      g.mul_t(e);
      out.emplace_back(g);
    }
  }
  return out;
}

std::size_t distance(const Vertex& v, const Vertex& w) {
  return (v.rep().inverse() * w.rep()).length();
}

std::vector<Vertex> geodesic(const Vertex& v, const Vertex& w) {
  BsElement h = v.rep().inverse() * w.rep();
  return walk(v.rep(), h, h.length());
}

std::vector<Vertex> sphere(const BsParams& p, std::size_t r) {
  std::vector<Vertex> cur{Vertex::base(p)};
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Vertex> next;
    for (const auto& v : cur)
      for (auto& c : children(v)) next.push_back(std::move(c));
    cur = std::move(next);
  }
  return cur;
}

std::vector<Vertex> ball(const BsParams& p, std::size_t r) {
  std::vector<Vertex> out{Vertex::base(p)};
  std::size_t begin = 0;
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (auto& c : children(out[i])) out.push_back(std::move(c));
    begin = end;
  }
  return out;
}

Integer sphere_size(const BsParams& p, std::size_t r) {
  if (r == 0) return 1;
  Integer s = p.degree();
  for (std::size_t k = 1; k < r; ++k) s *= p.degree() - 1;
  return s;
}

Integer ball_size(const BsParams& p, std::size_t r) {
  Integer s = 0;
  for (std::size_t k = 0; k <= r; ++k) s += sphere_size(p, k);
  return s;
}

Classification classify(const BsElement& g) {
  const auto& p = g.params();
  Vertex v0 = Vertex::base(p);
  auto path = geodesic(v0, Vertex(g));
  std::size_t best = SIZE_MAX;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& x = path[i].rep();
    std::size_t d = (x.inverse() * g * x).length();
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  const Vertex& x = path[arg];
  if (best == 0) return {Classification::Kind::Elliptic, 0, x};
  if (distance(x, act(g * g, x)) != 2 * best)
    throw std::logic_error("tree automorphism with an inversion: " + g.str());
  return {Classification::Kind::Hyperbolic, best, x};
}

Classification require_hyperbolic(const BsElement& g) {
  auto c = classify(g);
  if (!c.hyperbolic()) throw Error(ErrorKind::EllipticInput, g.str() + " is elliptic");
  return c;
}

BoundaryPoint::BoundaryPoint(BsElement prefix, BsElement engine, int orientation)
    : prefix_(std::move(prefix)),
      engine_(std::move(engine)),
      orientation_(orientation),
      directed_(orientation < 0 ? engine_.inverse() : engine_),
      period_(0),
      axis_(Vertex::base(engine_.params())) {
  check_same(prefix_.params(), engine_.params());
  if (orientation != 1 && orientation != -1)
    throw std::invalid_argument("orientation must be +1 or -1");
  auto c = require_hyperbolic(directed_);
  period_ = c.length;
  axis_ = c.vertex;
}

std::size_t BoundaryPoint::preperiod() const {
  std::size_t through_axis = (prefix_ * axis_.rep()).length();
  return std::max(through_axis, prefix_.length());
}

BoundaryPoint BoundaryPoint::translated(const BsElement& g) const {
  return BoundaryPoint(g * prefix_, engine_, orientation_);
}

std::vector<Vertex> BoundaryPoint::ray(const Vertex& rho, std::size_t depth) const {
  Vertex base(prefix_ * axis_.rep());
  std::size_t need = distance(base, rho) + depth;
  std::size_t k = (need + period_ - 1) / period_ + 1;
  BsElement target = prefix_;
  for (std::size_t i = 0; i < k; ++i) target.mul(directed_);
  target.mul(axis_.rep());
  BsElement h = rho.rep().inverse() * target;
  auto out = walk(rho.rep(), h, depth);
  if (out.size() < depth + 1) throw std::logic_error("ray too short");
  return out;
}

std::string BoundaryPoint::str() const {
  std::string e = engine_.str();
  std::string s = prefix_.is_identity() ? "" : prefix_.str() + " @ ";
  return s + (orientation_ > 0 ? e : "(" + e + ")^-1");
}

std::size_t equality_depth(const BoundaryPoint& x, const BoundaryPoint& y) {
  std::size_t l = std::lcm(x.period(), y.period());
  return 2 * (x.preperiod() + y.preperiod()) + 2 * l + 2;
}

bool same_end_to_depth(const BoundaryPoint& x, const BoundaryPoint& y, std::size_t depth) {
  check_same(x.params(), y.params());
  Vertex v0 = Vertex::base(x.params());
  return x.ray(v0, depth).back() == y.ray(v0, depth).back();
}

bool same_end(const BoundaryPoint& x, const BoundaryPoint& y) {
  return same_end_to_depth(x, y, equality_depth(x, y));
}

BoundaryPoint attracting(const BsElement& g) {
  return BoundaryPoint(BsElement(g.params()), g, 1);
}

BoundaryPoint repelling(const BsElement& g) {
  return BoundaryPoint(BsElement(g.params()), g, -1);
}

bool fixes(const BsElement& g, const BoundaryPoint& x) {
  return same_end(x.translated(g), x);
}

bool is_transverse(const BsElement& g, const BsElement& h) {
  check_same(g.params(), h.params());
  BoundaryPoint gs[] = {attracting(g), repelling(g)};
  BoundaryPoint hs[] = {attracting(h), repelling(h)};
  for (const auto& x : gs)
    for (const auto& y : hs)
      if (same_end(x, y)) return false;
  return true;
}

std::optional<std::size_t> meet(const Vertex& rho, const BoundaryPoint& x,
                                const BoundaryPoint& y) {
  if (same_end(x, y)) return std::nullopt;
  std::size_t depth = equality_depth(x, y) + rho.depth() + 1;
  auto rx = x.ray(rho, depth);
  auto ry = y.ray(rho, depth);
  for (std::size_t i = 1; i <= depth; ++i)
    if (!(rx[i] == ry[i])) return i - 1;
  throw std::logic_error("distinct ends with identical rays");
}

std::size_t contraction_depth(const BsElement& g, const Vertex& rho) {
  require_hyperbolic(g);
  auto m = meet(rho, attracting(g), repelling(g));
  return *m + 1;
}

ContractionCheck verify_contraction(const BsElement& g, const Vertex& rho, std::size_t d,
                                    std::size_t extra) {
  require_hyperbolic(g);
  ContractionCheck rep;
  rep.depth = d;
  std::size_t dmax = d + extra;
  auto xray = attracting(g).ray(rho, dmax + distance(rho, act(g, rho)) + 2);
  const auto& p = g.params();
  for (std::size_t depth = d; depth <= dmax; ++depth) {
    for (const auto& s : sphere(p, depth)) {
      Vertex zeta = act(rho.rep(), s);
      auto path = geodesic(rho, zeta);
      std::size_t j = 0;
      while (j + 1 < path.size() && path[j + 1] == xray[j + 1]) ++j;
      if (j < d || j == depth) continue;
      ++rep.checked;
      Vertex gxi = act(g, xray[j]);
      Vertex gnext = act(g, path[j + 1]);
      std::size_t big = distance(rho, gxi);
      bool ok = big > j && big + 1 < xray.size() && xray[big] == gxi &&
                distance(rho, gnext) == big + 1 && !(xray[big + 1] == gnext);
      if (!ok) ++rep.failures;
    }
  }
  return rep;
}

BoundaryPoint sample_point(const Vertex& rho, const Vertex& zeta) {
  Vertex rel(rho.rep().inverse() * zeta.rep());
  int s = rel.rep().last_sign();
  const auto& p = rho.params();
  return BoundaryPoint(rho.rep() * rel.rep(), BsElement::t(p), s == 0 ? 1 : s);
}

}  // namespace powerslab
