#include "powerslab/shadow.hpp"

#include "powerslab/error.hpp"

#include <stdexcept>

namespace powerslab {

namespace {

std::size_t child_count(const BsParams& p, int incoming) {
  return static_cast<std::size_t>(p.degree() - (incoming != 0 ? 1 : 0));
}

std::vector<Vertex> descendants(const Vertex& v, std::size_t levels) {
  std::vector<Vertex> cur{v};
  for (std::size_t k = 0; k < levels; ++k) {
    std::vector<Vertex> next;
    for (const auto& u : cur)
      for (auto& c : children(u)) next.push_back(std::move(c));
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

std::size_t child_slot(const Vertex& v) {
  const auto& s = v.rep().syllables();
  if (s.empty()) throw std::invalid_argument("the base vertex has no parent");
  const auto& p = v.params();
  std::size_t k = s.size();
  int e = s[k - 1].sign;
  const Integer& j = k >= 2 ? s[k - 2].exponent : v.rep().leading();
  int in = k >= 2 ? s[k - 2].sign : 0;
  long jj = j.convert_to<long>();
  if (e > 0) return static_cast<std::size_t>(jj - (in == -1 ? 1 : 0));
  long base = p.n() - (in == -1 ? 1 : 0);
  return static_cast<std::size_t>(base + jj - (in == 1 ? 1 : 0));
}

ShadowSet ShadowSet::empty(const BsParams& p) { return ShadowSet(p); }

ShadowSet ShadowSet::full(const BsParams& p) {
  ShadowSet s(p);
  s.root_.kind = Full;
  return s;
}

void ShadowSet::insert(const Vertex& eta) {
  auto path = geodesic(Vertex::base(params_), eta);
  std::vector<Node*> stack{&root_};
  Node* node = &root_;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (node->kind == Full) return;
    if (node->kind == Empty) {
      node->kind = Split;
      node->kids.assign(child_count(params_, path[i - 1].rep().last_sign()), Node{});
    }
    node = &node->kids[child_slot(path[i])];
    stack.push_back(node);
  }
  node->kind = Full;
  node->kids.clear();
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) reduce(**it);
}

ShadowSet ShadowSet::shadow(const Vertex& eta) {
  if (eta.depth() == 0)
    throw Error(ErrorKind::BasePointShadow, "shadow of the base vertex");
  ShadowSet s(eta.params());
  s.insert(eta);
  return s;
}

ShadowSet ShadowSet::seen_from(const Vertex& rho, const Vertex& eta) {
  check_same(rho.params(), eta.params());
  Vertex v0 = Vertex::base(rho.params());
  std::size_t dp = rho.depth();
  std::size_t dq = eta.depth();
  std::size_t dqp = distance(eta, rho);
  if (dq + dqp == dp) {
    if (dqp == 0) return full(rho.params());
    Vertex next = geodesic(eta, rho)[1];
    return shadow(next).complement();
  }
  return shadow(eta);
}

ShadowSet ShadowSet::from_uniform(const BsParams& p, std::size_t radius,
                                  const std::vector<Vertex>& directions, bool polarity) {
  ShadowSet s(p);
  for (const auto& v : directions) {
    check_same(p, v.params());
    if (v.depth() != radius || radius == 0)
      throw std::invalid_argument("direction " + v.str() + " is not at distance " +
                                  std::to_string(radius));
    s.insert(v);
  }
  return polarity ? s.complement() : s;
}

void ShadowSet::reduce(Node& n) {
  if (n.kind != Split) return;
  bool all_full = true, all_empty = true;
  for (const auto& k : n.kids) {
    all_full = all_full && k.kind == Full;
    all_empty = all_empty && k.kind == Empty;
  }
  if (all_full || all_empty) {
    n.kind = all_full ? Full : Empty;
    n.kids.clear();
  }
}

ShadowSet::Node ShadowSet::complement_node(const Node& n) {
  Node out;
  if (n.kind == Empty) {
    out.kind = Full;
  } else if (n.kind == Full) {
    out.kind = Empty;
  } else {
    out.kind = Split;
    out.kids.reserve(n.kids.size());
    for (const auto& k : n.kids) out.kids.push_back(complement_node(k));
  }
  return out;
}

ShadowSet::Node ShadowSet::merge(const Node& a, const Node& b, bool union_op) {
  Kind absorbing = union_op ? Full : Empty;
  Kind neutral = union_op ? Empty : Full;
  if (a.kind == absorbing || b.kind == neutral) return a;
  if (b.kind == absorbing || a.kind == neutral) return b;
  Node out;
  out.kind = Split;
  out.kids.reserve(a.kids.size());
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    out.kids.push_back(merge(a.kids[i], b.kids[i], union_op));
  reduce(out);
  return out;
}

bool ShadowSet::disjoint_nodes(const Node& a, const Node& b) {
  if (a.kind == Empty || b.kind == Empty) return true;
  if (a.kind == Full || b.kind == Full) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!disjoint_nodes(a.kids[i], b.kids[i])) return false;
  return true;
}

std::size_t ShadowSet::height(const Node& n) {
  if (n.kind != Split) return 0;
  std::size_t h = 0;
  for (const auto& k : n.kids) h = std::max(h, height(k));
  return h + 1;
}

ShadowSet ShadowSet::complement() const {
  ShadowSet s(params_);
  s.root_ = complement_node(root_);
  return s;
}

ShadowSet ShadowSet::unite(const ShadowSet& o) const {
  check_same(params_, o.params_);
  ShadowSet s(params_);
  s.root_ = merge(root_, o.root_, true);
  return s;
}

ShadowSet ShadowSet::intersect(const ShadowSet& o) const {
  check_same(params_, o.params_);
  ShadowSet s(params_);
  s.root_ = merge(root_, o.root_, false);
  return s;
}

ShadowSet ShadowSet::minus(const ShadowSet& o) const { return intersect(o.complement()); }

bool ShadowSet::is_disjoint(const ShadowSet& o) const {
  check_same(params_, o.params_);
  return disjoint_nodes(root_, o.root_);
}

bool ShadowSet::is_subset(const ShadowSet& o) const {
  return is_disjoint(o.complement());
}

bool ShadowSet::operator==(const ShadowSet& o) const {
  return params_ == o.params_ && root_ == o.root_;
}

bool ShadowSet::contains(const BoundaryPoint& x) const {
  check_same(params_, x.params());
  std::size_t h = height(root_);
  auto ray = x.ray(Vertex::base(params_), h);
  const Node* node = &root_;
  for (std::size_t i = 1; node->kind == Split; ++i) node = &node->kids[child_slot(ray[i])];
  return node->kind == Full;
}

template <class F>
void ShadowSet::visit_leaves(const Node& n, const Vertex& v, std::size_t depth, F&& f) const {
  if (n.kind != Split) {
    f(n.kind, v, depth);
    return;
  }
  auto ch = children(v);
  for (std::size_t i = 0; i < n.kids.size(); ++i) visit_leaves(n.kids[i], ch[i], depth + 1, f);
}

std::size_t ShadowSet::leaves(Kind k) const {
  std::size_t c = 0;
  visit_leaves(root_, Vertex::base(params_), 0,
               [&](Kind kind, const Vertex&, std::size_t) { c += kind == k; });
  return c;
}

std::vector<Vertex> ShadowSet::pieces() const {
  std::vector<Vertex> out;
  visit_leaves(root_, Vertex::base(params_), 0, [&](Kind kind, const Vertex& v, std::size_t) {
    if (kind == Full) out.push_back(v);
  });
  return out;
}

ShadowSet ShadowSet::act(const BsElement& g) const {
  check_same(params_, g.params());
  if (root_.kind != Split) return *this;
  if (leaves(Full) > leaves(Empty)) return complement().act(g).complement();
  Vertex p(g);
  ShadowSet out(params_);
  for (const auto& zeta : pieces()) {
    out = out.unite(seen_from(p, powerslab::act(g, zeta)));
    if (out.is_full()) break;
  }
  return out;
}

std::size_t ShadowSet::radius() const { return height(root_); }

Integer ShadowSet::count_at(std::size_t r) const {
  if (r < radius()) throw std::invalid_argument("radius below the resolution of the set");
  Integer c = 0;
  visit_leaves(root_, Vertex::base(params_), 0, [&](Kind kind, const Vertex&, std::size_t d) {
    if (kind != Full) return;
    if (d == 0) {
      c += sphere_size(params_, r);
    } else {
      Integer x = 1;
      for (std::size_t i = d; i < r; ++i) x *= params_.degree() - 1;
      c += x;
    }
  });
  return c;
}

ShadowSet::Uniform ShadowSet::uniform(std::size_t r) const {
  Integer in = count_at(r);
  Integer out = sphere_size(params_, r) - in;
  Uniform u;
  u.radius = r;
  u.polarity = in > out;
  Kind side = u.polarity ? Empty : Full;
  visit_leaves(root_, Vertex::base(params_), 0, [&](Kind kind, const Vertex& v, std::size_t d) {
    if (kind != side) return;
    for (auto& w : descendants(v, r - d)) u.directions.push_back(std::move(w));
  });
  return u;
}

}  // namespace powerslab
