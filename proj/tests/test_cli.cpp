#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "powerslab/cli.hpp"
#include "powerslab/error.hpp"
#include "powerslab/json_io.hpp"
#include "support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace powerslab;
using namespace testsupport;
using io::json;

namespace {
const BsParams P23(2, 3);
BsElement E(const char* s) { return BsElement::parse(P23, s); }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("powerslab_test_" + name)).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("json round trip: boundary points and shadow sets") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    BsElement pre = random_element(P23, rng, 6);
    BsElement eng = E("a t a t^-1");
    BoundaryPoint x(pre, eng, i % 2 ? 1 : -1);
    auto y = io::boundary_from(P23, io::parse(io::dump(io::boundary_json(x))));
    CHECK(y.prefix() == x.prefix());
    CHECK(y.engine() == x.engine());
    CHECK(y.orientation() == x.orientation());
    CHECK(same_end(x, y));
  }
  auto vs = sphere(P23, 3);
  for (int i = 0; i < 30; ++i) {
    ShadowSet s = ShadowSet::empty(P23);
    for (std::size_t k = 0; k < 5; ++k) s = s.unite(ShadowSet::shadow(vs[rng() % vs.size()]));
    if (i % 3 == 0) s = s.complement();
    auto back = io::shadow_from(P23, io::parse(io::dump(io::shadow_json(s))));
    CHECK(back == s);
  }
  CHECK(io::shadow_from(P23, io::shadow_json(ShadowSet::full(P23))).is_full());
  CHECK(io::shadow_from(P23, io::shadow_json(ShadowSet::empty(P23))).is_empty());
}

TEST_CASE("json round trip: certificates and reports") {
  std::vector<std::vector<BsElement>> fs = {{E("t"), E("t^-1")}, {E("t^2")}, {E("a t a^-1"), E("t")}};
  for (const auto& f : fs)
    for (std::size_t n : {1, 4, 8}) {
      auto c = powers_certificate(P23, f, n);
      auto text = io::dump(io::certificate_json(c));
      auto back = io::certificate_from(io::parse(text));
      CHECK(back == c);
      CHECK(io::dump(io::certificate_json(back)) == text);
      auto r = verify_certificate(back);
      CHECK(r.verdict);
      CHECK(io::powers_report_from(io::parse(io::dump(io::powers_report_json(r)))) == r);
    }

  auto cs = verify_condition_star(P23);
  CHECK(io::condition_star_from(io::parse(io::dump(io::condition_star_json(P23, cs)))) == cs);

  auto cert = powers_certificate(P23, {E("t"), E("t^-1")}, 4);
  auto d = powers_decay_experiment(cert, {{E("t"), Rational(1)}, {E("t^-1"), Rational(-2, 3)}}, 2);
  auto dtext = io::dump(io::decay_json(d));
  CHECK(io::decay_from(io::parse(dtext)) == d);
  CHECK(io::dump(io::decay_json(io::decay_from(io::parse(dtext)))) == dtext);

  auto ia = check_invertible_average(E("t a t^-1"), 4);
  CHECK(io::invertible_average_from(io::parse(io::dump(io::invertible_average_json(ia)))) == ia);
}

TEST_CASE("json readers reject malformed input") {
  auto c = io::certificate_json(powers_certificate(P23, {E("t")}, 2));
  auto bad_schema = c;
  bad_schema["schema"] = "powers-lab/0";
  CHECK_THROWS_AS(io::certificate_from(bad_schema), Error);
  auto missing = c;
  missing.erase("elements");
  CHECK_THROWS_AS(io::certificate_from(missing), Error);
  auto wrong_n = c;
  wrong_n["n"] = 3;
  CHECK_THROWS_AS(io::certificate_from(wrong_n), Error);
  auto bad_elem = c;
  bad_elem["elements"][0] = "t q";
  CHECK_THROWS_AS(io::certificate_from(bad_elem), Error);
  CHECK_THROWS_AS(io::powers_report_from(c), Error);
  CHECK_THROWS_AS(io::parse("{not json"), Error);
  try {
    io::certificate_from(missing);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("cli examples") {
  auto r = run({"normalize", "--m", "2", "--n", "3", "t a^2 t^-1"});
  CHECK(r.code == 0);
  CHECK(r.out == "a^3\n");
  CHECK(run({"delta", "--m", "2", "--n", "3", "a"}).out == "1\n");
  CHECK(run({"type", "--m", "2", "--n", "3"}).out == "III_{2/3}\n");
  CHECK(run({"type", "--m", "2", "--n", "2"}).out == "II_1\n");
  CHECK(run({"type", "--m", "3", "--n", "6"}).out == "III_{1/2}\n");
  CHECK(run({"delta", "t"}).out == "3/2 (inverse convention: 2/3)\n");
  CHECK(run({"index", "t"}).out == "R=3 L=2\n");
  CHECK(run({"mul", "t", "a^2", "t^-1"}).out == "a^3\n");
  CHECK(run({"hecke-mul", "t", "t^-1"}).out == "3 v(e) + v(t a t^-1)\n");
  CHECK(run({"hecke-star", "t"}).out == "3/2 v(t^-1)\n");

  auto cl = json::parse(run({"classify", "a t a t^-1"}).out);
  CHECK(cl["kind"] == "hyperbolic");
  CHECK(cl["length"] == 2);
  CHECK(cl["axis_vertex"] == "e");
  CHECK(json::parse(run({"classify", "a"}).out)["kind"] == "elliptic");

  auto sh = json::parse(run({"shadow", "t", "--act", "t"}).out);
  CHECK(sh["radius"] == 2);
  CHECK(sh["directions"] == json::array({"t^2"}));
  CHECK(sh["polarity"] == false);

  auto mt = json::parse(run({"meet", "a t a t^-1", "t"}).out);
  CHECK(mt["meet"] == 0);
  CHECK(json::parse(run({"meet", "t", "t^2"}).out)["same_end"] == true);

  auto star = run({"star"});
  CHECK(star.code == 0);
  CHECK(json::parse(star.out)["verdict"] == true);

  auto table = json::parse(run({"hecke-table", "--maxlen", "1"}).out);
  CHECK(table["basis"].size() == 3);
  CHECK(table["products"]["t"]["t^-1"]["e"] == "3");

  auto js = json::parse(run({"normalize", "--json", "t t"}).out);
  CHECK(js["element"] == "t^2");
  CHECK(js["schema"] == "powers-lab/1");
}

TEST_CASE("cli exit codes and diagnostics") {
  auto r = run({"normalize", "--m", "5", "--n", "3", "t"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--m") != std::string::npos);
  r = run({"normalize", "t x"});
  CHECK(r.code == 2);
  CHECK(r.err.find("word") != std::string::npos);
  r = run({"rayleigh-min", "--g", "t", "--radius", "2", "--tol", "-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--tol") != std::string::npos);
  r = run({"powers-cert", "--F", "t"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--nelems") != std::string::npos);
  r = run({"powers-cert", "--nelems", "2", "--F", "a"});
  CHECK(r.code == 1);
  CHECK(r.err.find("FIntersectsK") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  r = run({"powers-verify", temp_path("does_not_exist.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("cert") != std::string::npos);

  // verification failures exit 1
  r = run({"rayleigh-min", "--g", "t", "--radius", "4"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["verdict"] == false);
  r = run({"rayleigh-min", "--g", "t a t^-1", "--radius", "4"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == true);
}

TEST_CASE("cli certificate files") {
  const std::string path = temp_path("cert.json");
  auto r = run({"powers-cert", "--m", "2", "--n", "3", "--nelems", "4", "--F", "t,t^-1", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string text = read_file(path);
  // determinism: the same request prints the same bytes
  CHECK(run({"powers-cert", "--nelems", "4", "--F", "t, t^-1"}).out == text);
  CHECK(io::certificate_from(io::parse(text)).elements.size() == 4);

  r = run({"powers-verify", path});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == true);

  r = run({"norm-decay", "--cert", path, "--n", "4", "--radius", "2"});
  CHECK(r.code == 0);
  auto d = json::parse(r.out);
  CHECK(d["verdict"] == true);
  CHECK(d["bound"] == 2.0);
  CHECK(d["estimate"]["direction"] == "LOWER_BOUND_ON_CSTAR_NORM");
  CHECK(run({"norm-decay", "--cert", path, "--n", "4", "--radius", "2"}).out == r.out);
  CHECK(run({"norm-decay", "--cert", path, "--n", "9"}).code == 2);
  CHECK(run({"norm-decay", "--cert", path, "--coeffs", "t^3:1"}).code == 2);
  r = run({"norm-decay", "--cert", path, "--n", "2", "--radius", "1", "--coeffs", "t:1/2,t^-1:-1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["l1"] == "3/2");

  // tamper: swap an element for one that breaks disjointness
  auto j = io::parse(text);
  j["elements"][1] = j["elements"][0];
  {
    std::ofstream o(path);
    o << io::dump(j);
  }
  r = run({"powers-verify", path});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["verdict"] == false);
  std::remove(path.c_str());
}
