#include "powerslab/completion.hpp"

#include "powerslab/error.hpp"

#include <algorithm>
#include <set>

namespace powerslab {

std::vector<Vertex> cyclic_orbit(const BsElement& gen, const Vertex& v, std::size_t budget) {
  std::vector<Vertex> out{v};
  for (;;) {
    Vertex w = act(gen, out.back());
    if (w == v) return out;
    if (out.size() >= budget)
      throw Error(ErrorKind::OrbitBudgetExceeded,
                  "orbit of " + v.str() + " exceeds " + std::to_string(budget));
    out.push_back(std::move(w));
  }
}

std::vector<Vertex> k_orbit(const Vertex& v, std::size_t budget) {
  return cyclic_orbit(BsElement::a(v.params()), v, budget);
}

std::size_t k_orbit_size(const Vertex& v, std::size_t budget) {
  BsElement a = BsElement::a(v.params());
  BsElement x = v.rep();
  for (std::size_t k = 1;; ++k) {
    x = a * x;
    x.clear_final();
    if (x == v.rep()) return k;
    if (k >= budget)
      throw Error(ErrorKind::OrbitBudgetExceeded,
                  "orbit of " + v.str() + " exceeds " + std::to_string(budget));
  }
}

std::size_t index_R(const BsElement& g) { return k_orbit_size(Vertex(g)); }
std::size_t index_L(const BsElement& g) { return index_R(g.inverse()); }

Rational modular(const BsElement& g) {
  return Rational(Integer(index_R(g)), Integer(index_L(g)));
}

Rational modular_inverse_convention(const BsElement& g) { return 1 / modular(g); }

Rational modular_image(const BsParams& p) {
  return Rational(Integer(p.abs_m()), Integer(p.n()));
}

std::vector<std::size_t> index_power_sequence(const BsElement& g, std::size_t lmax) {
  std::vector<std::size_t> out;
  BsElement pos(g.params()), neg(g.params());
  BsElement ginv = g.inverse();
  for (std::size_t l = 1; l <= lmax; ++l) {
    pos.mul(g);
    neg.mul(ginv);
    out.push_back(std::max(k_orbit_size(Vertex(pos)), k_orbit_size(Vertex(neg))));
  }
  return out;
}

std::size_t index_power_bound(const BsElement& g, std::size_t lmax) {
  auto s = index_power_sequence(g, lmax);
  return s.empty() ? 1 : *std::max_element(s.begin(), s.end());
}

ConditionStarReport verify_condition_star(const BsParams& p) {
  BsElement w = BsElement::parse(p, "a t a t^-1");
  ConditionStarReport r{w, false, false, {}, 0, false, 0, false, false, false};
  r.witness_hyperbolic = classify(w).hyperbolic();
  r.witness_t_sum_zero = w.t_exponent_sum() == 0;
  r.index_sequence = index_power_sequence(w, 5);
  r.index_power_bound = *std::max_element(r.index_sequence.begin(), r.index_sequence.end());
  r.index_bound_constant =
      std::all_of(r.index_sequence.begin(), r.index_sequence.end(),
                  [&](std::size_t x) { return x == r.index_sequence.front(); });

  r.ball_transitivity_radius_checked = 3;
  auto nb0 = neighbors(Vertex::base(p));
  r.ball_transitive = true;
  for (const auto& v : ball(p, 3)) {
    if (!(act(v.rep(), Vertex::base(p)) == v)) r.ball_transitive = false;
    auto nb = neighbors(v);
    std::set<Vertex> expect(nb.begin(), nb.end());
    std::set<Vertex> image;
    for (const auto& u : nb0) image.insert(act(v.rep(), u));
    if (image != expect) r.ball_transitive = false;
  }
  r.discrete = p.abs_m() == p.n();
  r.verdict = r.witness_hyperbolic && r.witness_t_sum_zero && r.index_bound_constant &&
              r.ball_transitive;
  return r;
}

TypeLabel type_label(const BsParams& p) {
  auto rep = verify_condition_star(p);
  if (!rep.verdict)
    throw Error(ErrorKind::ConditionStarFailed,
                "condition (*) check failed for m=" + std::to_string(p.m()) +
                    " n=" + std::to_string(p.n()));
  if (rep.discrete) return {TypeLabel::Kind::II1, Rational(1)};
  return {TypeLabel::Kind::IIIlambda, modular_image(p)};
}

std::string TypeLabel::str() const {
  switch (kind) {
    case Kind::II1: return "II_1";
    case Kind::IIinf: return "II_inf";
    case Kind::III1: return "III_1";
    case Kind::IIIlambda: return "III_{" + lambda.str() + "}";
  }
  return "?";
}

}  // namespace powerslab
