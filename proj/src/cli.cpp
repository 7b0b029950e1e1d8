#include "powerslab/cli.hpp"

#include "powerslab/completion.hpp"
#include "powerslab/error.hpp"
#include "powerslab/hecke.hpp"
#include "powerslab/json_io.hpp"
#include "powerslab/numerics.hpp"
#include "powerslab/powers.hpp"
#include "powerslab/shadow.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace powerslab::cli {

namespace {

using io::json;

// A bad value for a named flag or positional argument.
struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& msg)
      : std::runtime_error(flag + ": " + msg) {}
};

struct Config {
  long m = 2;
  long n = 3;
  bool json = false;
};

BsParams params_of(const Config& c) {
  try {
    return BsParams(c.m, c.n);
  } catch (const Error& e) {
    throw UsageError("--m/--n", e.what());
  }
}

BsElement element(const BsParams& p, const std::string& s, const std::string& flag) {
  try {
    return BsElement::parse(p, s);
  } catch (const Error& e) {
    throw UsageError(flag, e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

json read_json_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return io::parse(ss.str());
  } catch (const Error& e) {
    throw UsageError(flag, e.what());
  }
}

void add_group(CLI::App* sub, Config& c) {
  sub->add_option("--m", c.m, "parameter m of BS(m,n)")->capture_default_str();
  sub->add_option("--n", c.n, "parameter n of BS(m,n)")->capture_default_str();
}

void add_json(CLI::App* sub, Config& c) { sub->add_flag("--json", c.json, "emit JSON"); }

json element_json(const BsParams& p, const BsElement& g) {
  return json{{"schema", io::kSchema}, {"kind", "Element"}, {"params", io::params_json(p)},
              {"element", g.str()}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for Baumslag-Solitar groups and their Schlichting completions",
               "powers-lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  Config cfg;
  std::function<int()> action;

  // normalize
  std::string word;
  {
    auto* s = app.add_subcommand("normalize", "print the normal form of an element");
    add_group(s, cfg);
    add_json(s, cfg);
    s->add_option("word", word, "element")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto g = element(p, word, "word");
        if (cfg.json)
          out << io::dump(element_json(p, g));
        else
          out << g.str() << "\n";
        return 0;
      };
    });
  }

  // mul
  std::vector<std::string> words;
  {
    auto* s = app.add_subcommand("mul", "multiply elements left to right");
    add_group(s, cfg);
    add_json(s, cfg);
    s->add_option("words", words, "elements")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        BsElement g(p);
        for (std::size_t i = 0; i < words.size(); ++i)
          g = g * element(p, words[i], "words[" + std::to_string(i) + "]");
        if (cfg.json)
          out << io::dump(element_json(p, g));
        else
          out << g.str() << "\n";
        return 0;
      };
    });
  }

  // classify
  std::string g_str;
  {
    auto* s = app.add_subcommand("classify", "elliptic/hyperbolic type of an element (JSON)");
    add_group(s, cfg);
    s->add_option("g", g_str, "element")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        out << io::dump(io::classification_json(classify(element(p, g_str, "g"))));
        return 0;
      };
    });
  }

  // meet
  std::string x_str, y_str, rho_str = "e";
  {
    auto* s = app.add_subcommand(
        "meet", "meet of the attracting ends of two hyperbolic elements, seen from --rho (JSON)");
    add_group(s, cfg);
    s->add_option("x", x_str, "hyperbolic element")->required();
    s->add_option("y", y_str, "hyperbolic element")->required();
    s->add_option("--rho", rho_str, "base vertex")->capture_default_str();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        Vertex rho(element(p, rho_str, "--rho"));
        auto x = attracting(element(p, x_str, "x"));
        auto y = attracting(element(p, y_str, "y"));
        auto k = meet(rho, x, y);
        json j{{"rho", rho.str()}, {"x", io::boundary_json(x)}, {"y", io::boundary_json(y)}};
        j["meet"] = k ? json(*k) : json(nullptr);
        j["same_end"] = !k.has_value();
        out << io::dump(j);
        return 0;
      };
    });
  }

  // shadow
  std::string eta_str, act_str = "e";
  {
    auto* s = app.add_subcommand("shadow", "the shadow U_{rho,eta}, optionally translated (JSON)");
    add_group(s, cfg);
    s->add_option("eta", eta_str, "vertex")->required();
    s->add_option("--rho", rho_str, "base vertex")->capture_default_str();
    s->add_option("--act", act_str, "translate the set by this element")->capture_default_str();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        Vertex rho(element(p, rho_str, "--rho"));
        Vertex eta(element(p, eta_str, "eta"));
        if (rho == eta) throw UsageError("eta", "must differ from --rho");
        auto set = ShadowSet::seen_from(rho, eta).act(element(p, act_str, "--act"));
        out << io::dump(io::shadow_json(set));
        return 0;
      };
    });
  }

  // delta
  {
    auto* s = app.add_subcommand("delta", "modular function R(g)/L(g)");
    add_group(s, cfg);
    add_json(s, cfg);
    s->add_option("g", g_str, "element")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto g = element(p, g_str, "g");
        Rational d = modular(g), q = modular_inverse_convention(g);
        if (cfg.json) {
          out << io::dump(json{{"g", g.str()},
                               {"modular", rational_str(d)},
                               {"inverse_convention", rational_str(q)}});
        } else {
          out << d;
          if (q != d) out << " (inverse convention: " << q << ")";
          out << "\n";
        }
        return 0;
      };
    });
  }

  // index
  {
    auto* s = app.add_subcommand("index", "indices R(g) and L(g)");
    add_group(s, cfg);
    add_json(s, cfg);
    s->add_option("g", g_str, "element")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto g = element(p, g_str, "g");
        auto r = index_R(g), l = index_L(g);
        if (cfg.json)
          out << io::dump(json{{"g", g.str()}, {"index_R", r}, {"index_L", l}});
        else
          out << "R=" << r << " L=" << l << "\n";
        return 0;
      };
    });
  }

  // hecke-mul
  std::string h_str;
  {
    auto* s = app.add_subcommand("hecke-mul", "product v_g v_h in the Hecke algebra");
    add_group(s, cfg);
    add_json(s, cfg);
    s->add_option("g", g_str, "element")->required();
    s->add_option("second", h_str, "second element")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto x = hecke_multiply(double_coset_of(element(p, g_str, "g")),
                                double_coset_of(element(p, h_str, "second")));
        if (cfg.json)
          out << io::dump(io::hecke_json(x));
        else
          out << x.str() << "\n";
        return 0;
      };
    });
  }

  // hecke-star
  {
    auto* s = app.add_subcommand("hecke-star", "adjoint of v_g in the Hecke algebra");
    add_group(s, cfg);
    add_json(s, cfg);
    s->add_option("g", g_str, "element")->required();
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto x = hecke_star(double_coset_of(element(p, g_str, "g")));
        if (cfg.json)
          out << io::dump(io::hecke_json(x));
        else
          out << x.str() << "\n";
        return 0;
      };
    });
  }

  // hecke-table
  std::size_t maxlen = 1;
  {
    auto* s = app.add_subcommand("hecke-table", "product table of double cosets (JSON)");
    add_group(s, cfg);
    s->add_option("--maxlen", maxlen, "largest representative length")
        ->capture_default_str()
        ->check(CLI::Range(0, 6));
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        std::set<DoubleCoset> basis;
        for (const auto& v : ball(p, maxlen)) basis.insert(double_coset_of(v.rep()));
        json j{{"schema", io::kSchema}, {"kind", "HeckeTable"}, {"params", io::params_json(p)},
               {"maxlen", maxlen}};
        json b = json::array(), prod = json::object();
        for (const auto& x : basis) {
          b.push_back(json{{"rep", x.str()}, {"R", x.R}, {"L", x.L}});
          json row = json::object();
          for (const auto& y : basis) row[y.str()] = io::hecke_json(hecke_multiply(x, y));
          prod[x.str()] = row;
        }
        j["basis"] = b;
        j["products"] = prod;
        out << io::dump(j);
        return 0;
      };
    });
  }

  // star
  {
    auto* s = app.add_subcommand("star", "verify condition (*) for G(m,n) (JSON report)");
    add_group(s, cfg);
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto r = verify_condition_star(p);
        out << io::dump(io::condition_star_json(p, r));
        return r.verdict ? 0 : 1;
      };
    });
  }

  // type
  {
    auto* s = app.add_subcommand("type", "factor type of the group von Neumann algebra");
    add_group(s, cfg);
    add_json(s, cfg);
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto t = type_label(p);
        if (cfg.json)
          out << io::dump(json{{"params", io::params_json(p)}, {"type", t.str()}});
        else
          out << t.str() << "\n";
        return 0;
      };
    });
  }

  // powers-cert
  std::size_t nelems = 0;
  std::string f_str = "t,t^-1", out_path;
  std::uint64_t seed = PowersOptions{}.seed;
  {
    auto* s = app.add_subcommand("powers-cert", "build a Powers certificate (JSON)");
    add_group(s, cfg);
    s->add_option("--nelems", nelems, "number of elements")->required()->check(CLI::PositiveNumber);
    s->add_option("--F", f_str, "comma-separated elements of F")->capture_default_str();
    s->add_option("--seed", seed, "seed for the conjugator search")->capture_default_str();
    s->add_option("output", out_path, "write the certificate here instead of stdout");
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        std::vector<BsElement> f;
        for (const auto& w : split(f_str, ',')) f.push_back(element(p, w, "--F"));
        if (f.empty()) throw UsageError("--F", "empty list");
        PowersOptions opt;
        opt.seed = seed;
        auto text = io::dump(io::certificate_json(powers_certificate(p, f, nelems, opt)));
        if (out_path.empty()) {
          out << text;
        } else {
          std::ofstream o(out_path);
          if (!o) throw UsageError("output", "cannot write " + out_path);
          o << text;
        }
        return 0;
      };
    });
  }

  // powers-verify
  std::string cert_path;
  {
    auto* s = app.add_subcommand("powers-verify", "verify a certificate file (JSON report)");
    s->add_option("cert", cert_path, "certificate file")->required();
    s->callback([&] {
      action = [&] {
        PowersCertificate c = [&] {
          try {
            return io::certificate_from(read_json_file(cert_path, "cert"));
          } catch (const Error& e) {
            throw UsageError("cert", e.what());
          }
        }();
        auto r = verify_certificate(c);
        out << io::dump(io::powers_report_json(r));
        return r.verdict ? 0 : 1;
      };
    });
  }

  // rayleigh-min
  std::size_t radius = 8;
  double tol = 1e-9;
  {
    auto* s = app.add_subcommand("rayleigh-min", "check p u_g* p u_g p >= R(g)^-2 p on a ball (JSON)");
    add_group(s, cfg);
    s->add_option("--g", g_str, "element")->required();
    s->add_option("--radius", radius, "ball radius")->capture_default_str()->check(CLI::NonNegativeNumber);
    s->add_option("--tol", tol, "tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    s->callback([&] {
      action = [&] {
        auto p = params_of(cfg);
        auto c = check_invertible_average(element(p, g_str, "--g"), radius, tol);
        out << io::dump(io::invertible_average_json(c));
        return c.verdict ? 0 : 1;
      };
    });
  }

  // norm-decay
  std::size_t decay_n = 0, decay_radius = 8;
  double decay_tol = 1e-6;
  std::string coeff_str;
  {
    auto* s = app.add_subcommand("norm-decay", "norm of the Powers average of a certificate (JSON)");
    s->add_option("--cert", cert_path, "certificate file")->required();
    s->add_option("--n", decay_n, "number of certificate elements to average (0: all)")
        ->capture_default_str();
    s->add_option("--radius", decay_radius, "ball radius")->capture_default_str()->check(CLI::NonNegativeNumber);
    s->add_option("--tol", decay_tol, "power-iteration tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--coeffs", coeff_str, "f:c pairs, e.g. \"t:1,t^-1:-1/2\" (default 1 on each f)");
    s->callback([&] {
      action = [&] {
        PowersCertificate c = [&] {
          try {
            return io::certificate_from(read_json_file(cert_path, "--cert"));
          } catch (const Error& e) {
            throw UsageError("--cert", e.what());
          }
        }();
        std::vector<std::pair<BsElement, Rational>> coeffs;
        if (coeff_str.empty()) {
          for (const auto& f : c.f_list) coeffs.emplace_back(f, Rational(1));
        } else {
          for (const auto& item : split(coeff_str, ',')) {
            auto colon = item.rfind(':');
            if (colon == std::string::npos) throw UsageError("--coeffs", "expected f:c in '" + item + "'");
            Rational q;
            try {
              q = Rational(item.substr(colon + 1));
            } catch (const std::exception&) {
              throw UsageError("--coeffs", "bad coefficient in '" + item + "'");
            }
            coeffs.emplace_back(element(c.params, item.substr(0, colon), "--coeffs"), q);
          }
        }
        DecayReport r;
        try {
          r = powers_decay_experiment(c, coeffs, decay_radius, decay_n, decay_tol);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::InvalidN) throw UsageError("--n", e.what());
          if (e.kind() == ErrorKind::InvalidParams) throw UsageError("--coeffs", e.what());
          throw;
        }
        out << io::dump(io::decay_json(r));
        return r.verdict ? 0 : 1;
      };
    });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace powerslab::cli
