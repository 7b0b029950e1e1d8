#include "powerslab/json_io.hpp"

#include "powerslab/error.hpp"

#include <sstream>

namespace powerslab::io {

namespace {

BsElement elem(const BsParams& p, const json& j) {
  return BsElement::parse(p, j.get<std::string>());
}

json elems_json(const std::vector<BsElement>& v) {
  json out = json::array();
  for (const auto& g : v) out.push_back(g.str());
  return out;
}

std::vector<BsElement> elems_from(const BsParams& p, const json& j) {
  std::vector<BsElement> out;
  for (const auto& x : j) out.push_back(elem(p, x));
  return out;
}

json header(const char* kind) { return json{{"schema", kSchema}, {"kind", kind}}; }

void expect(const json& j, const char* kind) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "expected a JSON object");
  if (j.value("schema", "") != kSchema)
    throw Error(ErrorKind::Parse, std::string("expected schema ") + kSchema);
  if (j.value("kind", "") != kind)
    throw Error(ErrorKind::Parse, std::string("expected kind ") + kind);
}

Rational rational_from(const json& j) {
  try {
    return Rational(j.get<std::string>());
  } catch (const std::runtime_error&) {
    throw Error(ErrorKind::Parse, "bad rational " + j.dump());
  }
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// Runs f, turning JSON access errors into Parse errors.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace

json params_json(const BsParams& p) { return json{{"m", p.m()}, {"n", p.n()}}; }

BsParams params_from(const json& j) {
  return guarded([&] { return BsParams(j.at("m").get<long>(), j.at("n").get<long>()); });
}

json boundary_json(const BoundaryPoint& x) {
  return json{{"prefix", x.prefix().str()},
              {"engine", x.engine().str()},
              {"orientation", x.orientation()}};
}

BoundaryPoint boundary_from(const BsParams& p, const json& j) {
  return guarded([&] {
    return BoundaryPoint(elem(p, j.at("prefix")), elem(p, j.at("engine")),
                         j.at("orientation").get<int>());
  });
}

json shadow_json(const ShadowSet& s) {
  auto u = s.uniform();
  json dirs = json::array();
  for (const auto& v : u.directions) dirs.push_back(v.str());
  return json{{"radius", u.radius}, {"directions", dirs}, {"polarity", u.polarity}};
}

ShadowSet shadow_from(const BsParams& p, const json& j) {
  return guarded([&] {
    std::vector<Vertex> dirs;
    for (const auto& d : j.at("directions")) dirs.emplace_back(elem(p, d));
    return ShadowSet::from_uniform(p, j.at("radius").get<std::size_t>(), dirs,
                                   j.at("polarity").get<bool>());
  });
}

json classification_json(const Classification& c) {
  return json{{"kind", c.hyperbolic() ? "hyperbolic" : "elliptic"},
              {"length", c.length},
              {"axis_vertex", c.vertex.str()}};
}

json hecke_json(const HeckeElement& x) {
  json terms = json::object();
  for (const auto& [dc, c] : x.terms()) terms[dc.str()] = rational_str(c);
  return terms;
}

json certificate_json(const PowersCertificate& c) {
  json j = header("PowersCertificate");
  j["params"] = params_json(c.params);
  j["base_point_x"] = boundary_json(c.base_point_x);
  j["separating_set_O"] = shadow_json(c.separating_set_O);
  j["f_list"] = elems_json(c.f_list);
  j["elements"] = elems_json(c.elements);
  j["n"] = c.elements.size();
  j["control_r"] = c.control_r.str();
  j["conjugator_u"] = c.conjugator_u.str();
  j["conjugator_c"] = c.conjugator_c.str();
  j["shifts"] = c.shifts;
  j["boosts"] = c.boosts;
  return j;
}

PowersCertificate certificate_from(const json& j) {
  expect(j, "PowersCertificate");
  return guarded([&] {
    BsParams p = params_from(j.at("params"));
    PowersCertificate c{p,
                        boundary_from(p, j.at("base_point_x")),
                        shadow_from(p, j.at("separating_set_O")),
                        elems_from(p, j.at("f_list")),
                        elems_from(p, j.at("elements")),
                        Integer(j.at("control_r").get<std::string>()),
                        elem(p, j.at("conjugator_u")),
                        elem(p, j.at("conjugator_c")),
                        j.at("shifts").get<std::vector<std::size_t>>(),
                        j.at("boosts").get<std::vector<std::size_t>>()};
    if (j.at("n").get<std::size_t>() != c.elements.size())
      throw Error(ErrorKind::Parse, "certificate n does not match its element list");
    return c;
  });
}

json powers_report_json(const PowersReport& r) {
  json j = header("PowersReport");
  j["cond_separation"] = r.cond_separation;
  j["cond_disjoint"] = r.cond_disjoint;
  j["cond_control"] = r.cond_control;
  j["verdict"] = r.verdict;
  return j;
}

PowersReport powers_report_from(const json& j) {
  expect(j, "PowersReport");
  return guarded([&] {
    PowersReport r;
    r.cond_separation = j.at("cond_separation").get<bool>();
    r.cond_disjoint = j.at("cond_disjoint").get<bool>();
    r.cond_control = j.at("cond_control").get<bool>();
    r.verdict = j.at("verdict").get<bool>();
    return r;
  });
}

json condition_star_json(const BsParams& p, const ConditionStarReport& r) {
  json j = header("ConditionStarReport");
  j["params"] = params_json(p);
  j["witness"] = r.witness.str();
  j["witness_hyperbolic"] = r.witness_hyperbolic;
  j["witness_t_sum_zero"] = r.witness_t_sum_zero;
  j["index_sequence"] = r.index_sequence;
  j["index_power_bound"] = r.index_power_bound;
  j["index_bound_constant"] = r.index_bound_constant;
  j["ball_transitivity_radius_checked"] = r.ball_transitivity_radius_checked;
  j["ball_transitive"] = r.ball_transitive;
  j["discrete"] = r.discrete;
  j["verdict"] = r.verdict;
  return j;
}

ConditionStarReport condition_star_from(const json& j) {
  expect(j, "ConditionStarReport");
  return guarded([&] {
    BsParams p = params_from(j.at("params"));
    ConditionStarReport r{elem(p, j.at("witness")),
                          j.at("witness_hyperbolic").get<bool>(),
                          j.at("witness_t_sum_zero").get<bool>(),
                          j.at("index_sequence").get<std::vector<std::size_t>>(),
                          j.at("index_power_bound").get<std::size_t>(),
                          j.at("index_bound_constant").get<bool>(),
                          j.at("ball_transitivity_radius_checked").get<std::size_t>(),
                          j.at("ball_transitive").get<bool>(),
                          j.at("discrete").get<bool>(),
                          j.at("verdict").get<bool>()};
    return r;
  });
}

json norm_estimate_json(const NormEstimate& e) {
  return json{{"value", e.value},
              {"iterations", e.iterations},
              {"residual", e.residual},
              {"converged", e.converged},
              {"direction", e.direction}};
}

NormEstimate norm_estimate_from(const json& j) {
  return guarded([&] {
    NormEstimate e;
    e.value = j.at("value").get<double>();
    e.iterations = j.at("iterations").get<std::size_t>();
    e.residual = j.at("residual").get<double>();
    e.converged = j.at("converged").get<bool>();
    e.direction = j.at("direction").get<std::string>();
    return e;
  });
}

json decay_json(const DecayReport& r) {
  json j = header("DecayReport");
  j["n"] = r.n;
  j["radius"] = r.radius;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  j["estimate"] = norm_estimate_json(r.estimate);
  j["l1"] = rational_str(r.l1);
  j["bound"] = r.bound;
  j["verdict"] = r.verdict;
  return j;
}

DecayReport decay_from(const json& j) {
  expect(j, "DecayReport");
  return guarded([&] {
    DecayReport r;
    r.n = j.at("n").get<std::size_t>();
    r.radius = j.at("radius").get<std::size_t>();
    r.columns = j.at("columns").get<std::size_t>();
    r.rows = j.at("rows").get<std::size_t>();
    r.estimate = norm_estimate_from(j.at("estimate"));
    r.l1 = rational_from(j.at("l1"));
    r.bound = j.at("bound").get<double>();
    r.verdict = j.at("verdict").get<bool>();
    return r;
  });
}

json invertible_average_json(const InvertibleAverageCheck& c) {
  json j = header("InvertibleAverageCheck");
  j["params"] = params_json(c.g.params());
  j["g"] = c.g.str();
  j["radius"] = c.radius;
  j["estimate"] = c.rayleigh.value;
  j["interior_orbits"] = c.rayleigh.interior_orbits;
  j["blocks"] = c.rayleigh.blocks;
  j["largest_block"] = c.rayleigh.largest_block;
  j["index_R"] = c.index_R;
  j["bound"] = c.bound;
  j["tol"] = c.tol;
  j["verdict"] = c.verdict;
  return j;
}

InvertibleAverageCheck invertible_average_from(const json& j) {
  expect(j, "InvertibleAverageCheck");
  return guarded([&] {
    BsParams p = params_from(j.at("params"));
    InvertibleAverageCheck c{elem(p, j.at("g")), j.at("radius").get<std::size_t>(), {}, 0, 0, 0,
                             false};
    c.rayleigh.value = j.at("estimate").get<double>();
    c.rayleigh.interior_orbits = j.at("interior_orbits").get<std::size_t>();
    c.rayleigh.blocks = j.at("blocks").get<std::size_t>();
    c.rayleigh.largest_block = j.at("largest_block").get<std::size_t>();
    c.index_R = j.at("index_R").get<std::size_t>();
    c.bound = j.at("bound").get<double>();
    c.tol = j.at("tol").get<double>();
    c.verdict = j.at("verdict").get<bool>();
    return c;
  });
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace powerslab::io
