#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "powerslab/completion.hpp"
#include "powerslab/error.hpp"
#include "powerslab/powers.hpp"

using namespace powerslab;

namespace {
const BsParams P23(2, 3);
BsElement E(const char* s) { return BsElement::parse(P23, s); }
std::vector<BsElement> F(std::initializer_list<const char*> l) {
  std::vector<BsElement> out;
  for (auto s : l) out.push_back(E(s));
  return out;
}
}  // namespace

TEST_CASE("the witness commutes with a^n") {
  for (auto p : {BsParams(2, 3), BsParams(3, 5), BsParams(-2, 3), BsParams(3, 3)}) {
    auto w = powers_witness(p);
    auto an = BsElement::a(p, p.n());
    CHECK(w * an == an * w);
    for (auto x : index_power_sequence(w, 6)) CHECK(p.n() % static_cast<long>(x) == 0);
  }
}

TEST_CASE("separating set") {
  auto x = powers_base_point(P23);
  CHECK_THROWS_AS(build_separating_shadow(F({"a"}), x), Error);
  CHECK_THROWS_AS(build_separating_shadow(F({"t", "a^4"}), x), Error);
  try {
    build_separating_shadow(F({"a"}), x);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FIntersectsK);
  }
  auto O = build_separating_shadow(F({"t"}), x);
  CHECK(O.act(E("t")).is_disjoint(O));
  CHECK(O.contains(x));
  CHECK(O.act(E("a")) == O);
  // A hyperbolic element fixing x forces a level set that avoids x.
  auto w = powers_witness(P23);
  REQUIRE(fixes(w, x));
  auto O1 = build_separating_shadow({w}, x);
  CHECK(!O1.contains(x));
  CHECK(O1.act(w).is_disjoint(O1));
  CHECK(O1.act(E("a")) == O1);
}

TEST_CASE("transverse family") {
  auto x = powers_base_point(P23);
  auto O = build_separating_shadow(F({"t", "t^-1"}), x);
  CHECK_THROWS_AS(build_transverse_family(0, O, x), Error);
  auto one = build_transverse_family(1, O, x);
  CHECK(one.elements.size() == 1);
  auto fam = build_transverse_family(6, O, x);
  REQUIRE(fam.elements.size() == 6);
  for (std::size_t i = 0; i < fam.elements.size(); ++i) {
    const auto& g = fam.elements[i];
    CHECK(g.t_exponent_sum() == 0);
    CHECK(modular(g) == 1);
    CHECK(O.contains(attracting(g)));
    CHECK(O.contains(repelling(g)));
    for (std::size_t k = i + 1; k < fam.elements.size(); ++k)
      CHECK(is_transverse(g, fam.elements[k]));
  }
}

TEST_CASE("certificates verify exactly and share one control constant") {
  std::vector<std::vector<BsElement>> fs = {F({"t", "t^-1"}), F({"t^2"}), F({"a t a^-1", "t"}),
                                            {powers_witness(P23)}};
  Integer r = -1;
  for (const auto& f : fs) {
    for (std::size_t n : {1, 2, 4, 8}) {
      auto cert = powers_certificate(P23, f, n);
      CHECK(cert.elements.size() == n);
      auto rep = verify_certificate(cert);
      CHECK(rep.cond_separation);
      CHECK(rep.cond_disjoint);
      CHECK(rep.cond_control);
      CHECK(rep.verdict);
      if (r < 0) r = cert.control_r;
      CHECK(cert.control_r == r);
      for (const auto& g : cert.elements) CHECK(Integer(index_R(g)) <= cert.control_r);
    }
  }
  CHECK_THROWS_AS(powers_certificate(P23, F({"t"}), 0), Error);
}

TEST_CASE("other parameters") {
  for (auto p : {BsParams(3, 5), BsParams(-2, 3), BsParams(2, 2)}) {
    auto cert = powers_certificate(p, {BsElement::t(p), BsElement::t(p, -1)}, 4);
    CHECK(verify_certificate(cert).verdict);
  }
}

TEST_CASE("tampering is detected") {
  auto cert = powers_certificate(P23, F({"t", "t^-1"}), 4);
  auto dup = cert;
  dup.elements[1] = dup.elements[0];
  auto r1 = verify_certificate(dup);
  CHECK(!r1.cond_disjoint);
  CHECK(!r1.verdict);
  auto withe = cert;
  withe.f_list.push_back(E("e"));
  auto r2 = verify_certificate(withe);
  CHECK(!r2.cond_separation);
  CHECK(!r2.verdict);
  auto tight = cert;
  tight.control_r = 1;
  CHECK(!verify_certificate(tight).cond_control);
  auto bad = cert;
  bad.elements[0] = E("t");
  CHECK_THROWS_AS(bad.validate(), Error);
  auto notinv = cert;
  notinv.separating_set_O = ShadowSet::shadow(Vertex(E("t")));
  CHECK_THROWS_AS(notinv.validate(), Error);
}

TEST_CASE("sub-families stay valid") {
  auto cert = powers_certificate(P23, F({"t^2"}), 8);
  for (std::size_t drop = 0; drop < cert.elements.size(); ++drop) {
    auto sub = cert;
    sub.elements.erase(sub.elements.begin() + static_cast<std::ptrdiff_t>(drop));
    CHECK(verify_certificate(sub).verdict);
  }
}
