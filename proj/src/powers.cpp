#include "powerslab/powers.hpp"

#include "powerslab/completion.hpp"
#include "powerslab/error.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace powerslab {

BsElement powers_witness(const BsParams& p) { return BsElement::parse(p, "a t a t^-1"); }

BoundaryPoint powers_base_point(const BsParams& p) { return attracting(powers_witness(p)); }

std::vector<BoundaryPoint> k_orbit_points(const BoundaryPoint& x) {
  std::vector<BoundaryPoint> out{x};
  BsElement a = BsElement::a(x.params());
  BsElement ai = a;
  for (std::size_t i = 1; i < kOrbitBudget; ++i, ai.mul(a)) {
    BoundaryPoint y = x.translated(ai);
    if (same_end(y, x)) return out;
    out.push_back(std::move(y));
  }
  throw Error(ErrorKind::OrbitBudgetExceeded, "orbit of " + x.str());
}

ShadowSet orbit_neighbourhood(const BoundaryPoint& x, std::size_t d) {
  Vertex v0 = Vertex::base(x.params());
  ShadowSet s = ShadowSet::empty(x.params());
  for (const auto& y : k_orbit_points(x)) s = s.unite(ShadowSet::shadow(y.ray(v0, d).back()));
  return s;
}

namespace {

bool separates(const std::vector<BsElement>& f_list, const ShadowSet& O) {
  if (O.is_empty() || O.is_full()) return false;
  for (const auto& f : f_list)
    if (!O.act(f).is_disjoint(O)) return false;
  return true;
}

}  // namespace

ShadowSet build_separating_shadow(const std::vector<BsElement>& f_list, const BoundaryPoint& x,
                                  const PowersOptions& opt) {
  if (f_list.empty()) throw std::invalid_argument("empty F");
  Vertex v0 = Vertex::base(x.params());
  for (const auto& f : f_list) {
    check_same(f.params(), x.params());
    if (act(f, v0) == v0)
      throw Error(ErrorKind::FIntersectsK, f.str() + " fixes the base vertex");
  }
  ShadowSet cur = orbit_neighbourhood(x, 1);
  for (std::size_t d = 1; d <= opt.max_depth; ++d) {
    ShadowSet next = orbit_neighbourhood(x, d + 1);
    if (separates(f_list, cur)) return cur;
    ShadowSet level = cur.minus(next);
    if (separates(f_list, level)) return level;
    cur = std::move(next);
  }
  throw Error(ErrorKind::SeparationNotFound,
              "no separating set up to depth " + std::to_string(opt.max_depth));
}

TransverseFamily build_transverse_family(std::size_t n, const ShadowSet& O,
                                         const BoundaryPoint& x, const PowersOptions& opt) {
  if (n == 0) throw Error(ErrorKind::InvalidN, "need at least one element");
  if (O.is_empty() || O.is_full()) throw std::invalid_argument("O must be nonempty and proper");
  const auto& p = x.params();
  BsElement w = powers_witness(p);
  if (!(x.engine() == w) || x.orientation() != 1)
    throw std::invalid_argument("base point must be the attracting end of the witness");
  Vertex v0 = Vertex::base(p);

  TransverseFamily fam{{}, x.prefix(), BsElement(p), {}, {}};
  if (!O.contains(x)) {
    bool found = false;
    for (const auto& v : ball(p, kUSearchRadius)) {
      if (O.contains(x.translated(v.rep()))) {
        fam.conjugator_u = v.rep() * x.prefix();
        found = true;
        break;
      }
    }
    if (!found) throw Error(ErrorKind::BudgetExceeded, "no translate of x lands in O");
  }
  const BsElement& u = fam.conjugator_u;
  BsElement h = u * w * u.inverse();

  // Seed conjugator: deterministic shuffle of the radius-3 ball.
  auto cands = ball(p, kCSearchRadius);
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = cands.size(); i > 1; --i)
    std::swap(cands[i - 1], cands[static_cast<std::size_t>(rng() % i)]);
  bool found = false;
  for (const auto& v : cands) {
    BsElement g = v.rep() * h * v.rep().inverse();
    if (is_transverse(g, h)) {
      fam.conjugator_c = v.rep();
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorKind::BudgetExceeded, "no transverse conjugate found");
  const BsElement& c = fam.conjugator_c;
  BsElement g = c * h * c.inverse();
  BoundaryPoint gplus = attracting(g), gminus = repelling(g);

  // Conjugates h^j g h^-j with both fixed ends in O, pairwise transverse.
  // Two of them share an end iff h^|j-k| maps an end of g to an end of g.
  std::vector<BsElement> hpow{BsElement(p)};
  for (std::size_t j = 1; j <= opt.max_shift; ++j) hpow.push_back(hpow.back() * h);
  std::vector<int> clash(opt.max_shift + 1, -1);
  auto shift_clashes = [&](std::size_t d) {
    if (clash[d] < 0) {
      bool hit = false;
      for (const auto* e : {&gplus, &gminus}) {
        BoundaryPoint moved = e->translated(hpow[d]);
        hit = hit || same_end(moved, gplus) || same_end(moved, gminus);
      }
      clash[d] = hit ? 1 : 0;
    }
    return clash[d] == 1;
  };
  std::vector<BoundaryPoint> ends;
  for (std::size_t j = 1; j <= opt.max_shift && fam.shifts.size() < n; ++j) {
    BoundaryPoint plus = gplus.translated(hpow[j]), minus = gminus.translated(hpow[j]);
    if (!O.contains(plus) || !O.contains(minus)) continue;
    bool transverse = true;
    for (std::size_t k : fam.shifts) transverse = transverse && !shift_clashes(j - k);
    if (!transverse) continue;
    fam.shifts.push_back(j);
    ends.push_back(plus);
  }
  if (fam.shifts.size() < n)
    throw Error(ErrorKind::BudgetExceeded, "only " + std::to_string(fam.shifts.size()) +
                                               " conjugates found with fixed ends in O");

  // Rays towards the attracting ends, long enough to see every divergence.
  std::size_t reach = 0;
  for (const auto& e : ends) reach = std::max(reach, equality_depth(e, e));
  std::vector<std::vector<Vertex>> rays;
  for (const auto& e : ends) rays.push_back(e.ray(v0, reach));
  auto split = [&](std::size_t i, std::size_t k) {
    std::size_t d = 1;
    while (rays[i][d] == rays[k][d]) ++d;
    return d - 1;
  };

  ShadowSet outside = O.complement();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t depth = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) depth = std::max(depth, split(i, k) + 1);
    ShadowSet W = ShadowSet::shadow(rays[i][depth]);
    const BsElement& hj = hpow[fam.shifts[i]];
    BsElement gi = hj * g * hj.inverse();
    ShadowSet img = outside;
    std::size_t l = 1;
    for (; l <= opt.max_boost; ++l) {
      img = img.act(gi);
      if (img.is_subset(W)) break;
    }
    if (l > opt.max_boost)
      throw Error(ErrorKind::BudgetExceeded,
                  "power boost exceeded " + std::to_string(opt.max_boost));
    fam.boosts.push_back(l);
    fam.elements.push_back(hj * pow(g, static_cast<long>(l)) * hj.inverse());
  }
  return fam;
}

namespace {

Integer max_index_product(const BsParams& p, std::size_t radius) {
  Integer best = 1;
  for (const auto& v : ball(p, radius)) {
    Integer x = Integer(index_R(v.rep())) * index_L(v.rep());
    if (x > best) best = x;
  }
  return best;
}

}  // namespace

Integer control_bound(const BsParams& p) {
  // Element i is (h^j)(c u) w^l (c u)^-1 (h^-j) with h = u w u^-1.  R is
  // submultiplicative, L(x) = R(x^-1), and R(w^k), L(w^k) divide n because
  // a^n commutes with w.  Hence R <= (R(u)L(u))^3 R(c)L(c) n^3 over the
  // search ranges of u and c.
  Integer mu = max_index_product(p, kUSearchRadius);
  Integer mc = max_index_product(p, kCSearchRadius);
  Integer b = p.n();
  return mu * mu * mu * mc * b * b * b;
}

PowersCertificate powers_certificate(const BsParams& p, const std::vector<BsElement>& f_list,
                                     std::size_t n, const PowersOptions& opt) {
  if (n == 0) throw Error(ErrorKind::InvalidN, "need at least one element");
  BoundaryPoint x = powers_base_point(p);
  ShadowSet O = build_separating_shadow(f_list, x, opt);
  auto fam = build_transverse_family(n, O, x, opt);
  PowersCertificate cert{p,
                         x,
                         O,
                         f_list,
                         fam.elements,
                         control_bound(p),
                         fam.conjugator_u,
                         fam.conjugator_c,
                         fam.shifts,
                         fam.boosts};
  cert.validate();
  return cert;
}

void PowersCertificate::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidCertificate, m); };
  if (f_list.empty()) fail("empty F");
  if (elements.empty()) fail("no elements");
  if (control_r <= 0) fail("control must be positive");
  check_same(params, base_point_x.params());
  check_same(params, separating_set_O.params());
  for (const auto& f : f_list) check_same(params, f.params());
  for (const auto& g : elements) {
    check_same(params, g.params());
    if (g.t_exponent_sum() != 0) fail(g.str() + " has nonzero t-exponent sum");
  }
  if (separating_set_O.is_empty() || separating_set_O.is_full()) fail("O must be proper");
  if (!(separating_set_O.act(BsElement::a(params)) == separating_set_O))
    fail("O is not invariant under a");
}

bool PowersCertificate::operator==(const PowersCertificate& o) const {
  auto same_point = [](const BoundaryPoint& a, const BoundaryPoint& b) {
    return a.prefix() == b.prefix() && a.engine() == b.engine() &&
           a.orientation() == b.orientation();
  };
  return params == o.params && same_point(base_point_x, o.base_point_x) &&
         separating_set_O == o.separating_set_O && f_list == o.f_list &&
         elements == o.elements && control_r == o.control_r &&
         conjugator_u == o.conjugator_u && conjugator_c == o.conjugator_c &&
         shifts == o.shifts && boosts == o.boosts;
}

PowersReport verify_certificate(const PowersCertificate& cert) {
  PowersReport r;
  const ShadowSet& O = cert.separating_set_O;
  r.cond_separation = !O.is_empty();
  for (const auto& f : cert.f_list)
    r.cond_separation = r.cond_separation && O.act(f).is_disjoint(O);

  std::vector<ShadowSet> images;
  ShadowSet outside = O.complement();
  for (const auto& g : cert.elements) images.push_back(outside.act(g));
  r.cond_disjoint = true;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t k = i + 1; k < images.size(); ++k)
      r.cond_disjoint = r.cond_disjoint && images[i].is_disjoint(images[k]);

  r.cond_control = true;
  std::size_t budget = cert.control_r > Integer(kOrbitBudget)
                           ? kOrbitBudget
                           : cert.control_r.convert_to<std::size_t>();
  for (const auto& g : cert.elements) {
    try {
      if (Integer(k_orbit_size(Vertex(g), budget)) > cert.control_r) r.cond_control = false;
    } catch (const Error&) {
      r.cond_control = false;
    }
  }
  r.verdict = r.cond_separation && r.cond_disjoint && r.cond_control;
  return r;
}

}  // namespace powerslab
