#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "powerslab/completion.hpp"
#include "powerslab/error.hpp"
#include "support.hpp"

#include <numeric>
#include <set>

using namespace powerslab;
using namespace testsupport;

namespace {
const BsParams P23(2, 3);
BsElement E(const char* s) { return BsElement::parse(P23, s); }

// Distinct cosets a^j g <a>, j = 0 .. limit, counted directly.
std::size_t coset_count(const BsElement& g, int limit) {
  std::set<Vertex> s;
  for (int j = 0; j < limit; ++j) s.insert(Vertex(BsElement::a(g.params(), j) * g));
  return s.size();
}

Rational expected_modular(const BsElement& g) {
  const auto& p = g.params();
  Rational q(Integer(p.n()), Integer(p.abs_m()));
  long s = g.t_exponent_sum();
  Rational r = 1;
  for (long i = 0; i < (s < 0 ? -s : s); ++i) r *= q;
  return s < 0 ? 1 / r : r;
}
}  // namespace

TEST_CASE("orbits") {
  CHECK(k_orbit(Vertex::base(P23)).size() == 1);
  CHECK(k_orbit(Vertex(E("t"))).size() == 3);
  CHECK(k_orbit(Vertex(E("t^-1"))).size() == 2);
  CHECK_THROWS_AS(k_orbit(Vertex(E("t^6")), 10), Error);
}

TEST_CASE("indices against direct coset enumeration") {
  for (auto p : {BsParams(2, 3), BsParams(3, 5), BsParams(-2, 3), BsParams(2, 4)}) {
    auto t = BsElement::t(p);
    CHECK(index_R(t) == static_cast<std::size_t>(p.n()));
    CHECK(index_L(t) == static_cast<std::size_t>(p.abs_m()));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
      auto g = random_element(p, rng, 8);
      int limit = 1;
      for (std::size_t k = 0; k < g.length(); ++k) limit *= static_cast<int>(p.n());
      CHECK(index_R(g) == coset_count(g, 2 * limit));
      CHECK(index_R(g) == index_L(g.inverse()));
    }
  }
  CHECK(index_R(E("e")) == 1);
}

TEST_CASE("modular function") {
  CHECK(modular(E("a")) == 1);
  CHECK(modular(E("t")) == Rational(3, 2));
  CHECK(modular_inverse_convention(E("t")) == Rational(2, 3));
  CHECK(modular_image(P23) == Rational(2, 3));
  CHECK(modular_image(BsParams(2, 2)) == 1);
  CHECK(modular_image(BsParams(2, 4)) == Rational(1, 2));
  for (auto p : {BsParams(2, 3), BsParams(3, 5), BsParams(-2, 3)}) {
    std::mt19937_64 rng(2);
    long g = 0;
    for (int i = 0; i < 100; ++i) {
      auto x = random_element(p, rng, 10), y = random_element(p, rng, 10);
      CHECK(modular(x * y) == modular(x) * modular(y));
      CHECK(modular(x) * modular(x.inverse()) == 1);
      CHECK(modular(x) == expected_modular(x));
      g = std::gcd(g, x.t_exponent_sum());
    }
    CHECK(g == 1);
  }
}

TEST_CASE("open stabilizer dichotomy") {
  auto w = E("a t a t^-1");
  auto sw = index_power_sequence(w, 5);
  for (auto x : sw) CHECK(x == sw.front());
  auto st = index_power_sequence(E("t"), 5);
  for (std::size_t l = 1; l < st.size(); ++l) CHECK(st[l] > st[l - 1]);
  CHECK(st == std::vector<std::size_t>{3, 9, 27, 81, 243});
  CHECK(index_power_bound(E("a"), 4) == 1);
  std::size_t prev = 0;
  for (std::size_t l = 1; l <= 3; ++l) {
    auto b = index_power_bound(E("t"), l);
    CHECK(b > prev);
    prev = b;
  }
}

TEST_CASE("condition (*) and type labels") {
  for (auto p : {BsParams(2, 3), BsParams(3, 5), BsParams(2, 2), BsParams(-2, 3)}) {
    auto r = verify_condition_star(p);
    CHECK(r.witness_hyperbolic);
    CHECK(r.witness_t_sum_zero);
    CHECK(r.index_bound_constant);
    CHECK(r.ball_transitive);
    CHECK(r.verdict);
    CHECK(r.discrete == (p.abs_m() == p.n()));
  }
  CHECK(type_label(BsParams(2, 2)).str() == "II_1");
  CHECK(type_label(BsParams(2, 3)).str() == "III_{2/3}");
  CHECK(type_label(BsParams(3, 6)).str() == "III_{1/2}");
  CHECK(type_label(BsParams(-2, 3)).str() == "III_{2/3}");
}
