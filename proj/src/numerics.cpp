#include "powerslab/numerics.hpp"

#include "powerslab/completion.hpp"
#include "powerslab/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace powerslab {

std::string Symbol::str() const {
  if (kind == Kind::Unitary) return "U(" + g.str() + ")";
  if (g.is_identity() && step == 1) return "P";
  std::ostringstream os;
  os << "Avg(" << g.str() << ", " << step << ")";
  return os.str();
}

GroupRingWord GroupRingWord::U(const BsElement& g) {
  GroupRingWord w(g.params());
  w.terms_.push_back({Rational(1), simplify({Symbol{Symbol::Kind::Unitary, g, 1}})});
  return w;
}

GroupRingWord GroupRingWord::P(const BsParams& p) { return average(BsElement::identity(p), 1); }

GroupRingWord GroupRingWord::average(const BsElement& conj, long step) {
  if (step < 1) throw Error(ErrorKind::InvalidParams, "averaging step must be positive");
  GroupRingWord w(conj.params());
  w.terms_.push_back({Rational(1), {Symbol{Symbol::Kind::Average, conj, step}}});
  return w;
}

GroupRingWord GroupRingWord::identity(const BsParams& p) {
  GroupRingWord w(p);
  w.terms_.push_back({Rational(1), {}});
  return w;
}

std::vector<Symbol> GroupRingWord::simplify(std::vector<Symbol> f) {
  std::vector<Symbol> out;
  for (auto& s : f) {
    if (!out.empty()) {
      Symbol& last = out.back();
      if (last.kind == Symbol::Kind::Unitary && s.kind == Symbol::Kind::Unitary) {
        last.g = last.g * s.g;
        if (last.g.is_identity()) out.pop_back();
        continue;
      }
      if (last == s && s.kind == Symbol::Kind::Average) continue;
    }
    if (s.kind == Symbol::Kind::Unitary && s.g.is_identity()) continue;
    out.push_back(std::move(s));
  }
  return out;
}

GroupRingWord GroupRingWord::scaled(const Rational& c) const {
  GroupRingWord w(params_);
  if (c == 0) return w;
  for (const auto& t : terms_) w.terms_.push_back({t.coeff * c, t.factors});
  return w;
}

GroupRingWord GroupRingWord::adjoint() const {
  GroupRingWord w(params_);
  for (const auto& t : terms_) {
    std::vector<Symbol> f(t.factors.rbegin(), t.factors.rend());
    for (auto& s : f)
      if (s.kind == Symbol::Kind::Unitary) s.g = s.g.inverse();
    w.terms_.push_back({t.coeff, std::move(f)});
  }
  return w;
}

std::string GroupRingWord::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    const auto& t = terms_[i];
    if (t.coeff != 1 || t.factors.empty()) os << t.coeff << (t.factors.empty() ? "" : " ");
    for (std::size_t j = 0; j < t.factors.size(); ++j) os << (j ? " " : "") << t.factors[j].str();
  }
  return os.str();
}

GroupRingWord operator+(const GroupRingWord& x, const GroupRingWord& y) {
  check_same(x.params_, y.params_);
  GroupRingWord w = x;
  for (const auto& t : y.terms_) {
    auto it = std::find_if(w.terms_.begin(), w.terms_.end(),
                           [&](const GroupRingWord::Term& s) { return s.factors == t.factors; });
    if (it == w.terms_.end()) {
      w.terms_.push_back(t);
    } else {
      it->coeff += t.coeff;
      if (it->coeff == 0) w.terms_.erase(it);
    }
  }
  return w;
}

GroupRingWord operator*(const GroupRingWord& x, const GroupRingWord& y) {
  check_same(x.params_, y.params_);
  GroupRingWord w(x.params_);
  for (const auto& s : x.terms_) {
    for (const auto& t : y.terms_) {
      std::vector<Symbol> f = s.factors;
      f.insert(f.end(), t.factors.begin(), t.factors.end());
      GroupRingWord one(x.params_);
      one.terms_.push_back({s.coeff * t.coeff, GroupRingWord::simplify(std::move(f))});
      w = w + one;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

VertexBasis::VertexBasis(std::vector<Vertex> vs) {
  for (auto& v : vs) add(v);
}

std::int64_t VertexBasis::find(const Vertex& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::size_t VertexBasis::add(const Vertex& v) {
  auto [it, fresh] = index_.emplace(v, verts_.size());
  if (fresh) verts_.push_back(v);
  return it->second;
}

VertexBasis build_ball(const BsParams& p, std::size_t r) { return VertexBasis(ball(p, r)); }

// ---------------------------------------------------------------------------

namespace {

template <class Scalar>
Scalar scalar_of(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return q.template convert_to<double>();
  }
}

template <class Scalar>
void compact(SparseVec<Scalar>& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    Scalar s = v[i].second;
    while (++j < v.size() && v[j].first == v[i].first) s += v[j].second;
    if (s != Scalar(0)) v[out++] = {v[i].first, s};
    i = j;
  }
  v.resize(out);
}

}  // namespace

Evaluator::Evaluator(VertexBasis& basis, bool grow) : basis_(basis), grow_(grow) {}

std::int64_t Evaluator::target(const BsElement& g, std::size_t i) {
  auto& tab = unitary_[g];
  if (tab.size() < basis_.size()) tab.resize(basis_.size(), -2);
  if (tab[i] != -2) return tab[i];
  Vertex w = act(g, basis_[i]);
  std::int64_t j = basis_.find(w);
  if (j < 0 && grow_) j = static_cast<std::int64_t>(basis_.add(w));
  tab[i] = j;
  return j;
}

Evaluator::AverageCache& Evaluator::cache_for(const Symbol& s) {
  for (auto& [k, c] : average_)
    if (k == s) return c;
  average_.emplace_back(s, AverageCache{});
  return average_.back().second;
}

std::int64_t Evaluator::orbit(const Symbol& s, std::size_t i) {
  AverageCache& c = cache_for(s);
  if (c.orbit_of.size() < basis_.size()) c.orbit_of.resize(basis_.size(), -2);
  if (c.orbit_of[i] != -2) return c.orbit_of[i];

  const BsParams& p = s.g.params();
  Vertex u = act(s.g.inverse(), basis_[i]);
  std::vector<Vertex> orb = cyclic_orbit(BsElement::a(p, s.step), u);
  std::vector<std::size_t> idx;
  idx.reserve(orb.size());
  bool complete = true;
  for (const auto& w : orb) {
    Vertex x = act(s.g, w);
    std::int64_t j = basis_.find(x);
    if (j < 0) {
      if (!grow_) {
        complete = false;
        break;
      }
      j = static_cast<std::int64_t>(basis_.add(x));
    }
    idx.push_back(static_cast<std::size_t>(j));
  }
  if (c.orbit_of.size() < basis_.size()) c.orbit_of.resize(basis_.size(), -2);
  if (!complete) {
    c.orbit_of[i] = -1;
    for (auto j : idx) c.orbit_of[j] = -1;
    return -1;
  }
  auto id = static_cast<std::int64_t>(c.orbits.size());
  for (auto j : idx) c.orbit_of[j] = id;
  c.orbits.push_back(std::move(idx));
  return id;
}

std::vector<std::vector<std::size_t>> Evaluator::complete_orbits(const Symbol& s) {
  if (s.kind != Symbol::Kind::Average) throw std::invalid_argument("not an averaging symbol");
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = basis_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t o = orbit(s, i);
    if (o < 0) continue;
    const auto& orb = cache_for(s).orbits[static_cast<std::size_t>(o)];
    if (*std::min_element(orb.begin(), orb.end()) == i) out.push_back(orb);
  }
  return out;
}

template <class Scalar>
SparseVec<Scalar> Evaluator::apply_symbol(const Symbol& s, const SparseVec<Scalar>& x,
                                          bool& leaked) {
  SparseVec<Scalar> out;
  if (s.kind == Symbol::Kind::Unitary) {
    out.reserve(x.size());
    for (const auto& [i, v] : x) {
      std::int64_t j = target(s.g, i);
      if (j < 0)
        leaked = true;
      else
        out.emplace_back(static_cast<std::size_t>(j), v);
    }
    return out;
  }
  SparseVec<Scalar> mass;
  for (const auto& [i, v] : x) {
    std::int64_t o = orbit(s, i);
    if (o < 0)
      leaked = true;
    else
      mass.emplace_back(static_cast<std::size_t>(o), v);
  }
  compact(mass);
  const AverageCache& c = cache_for(s);
  for (const auto& [o, v] : mass) {
    Scalar share = v / Scalar(static_cast<long>(c.orbits[o].size()));
    for (auto j : c.orbits[o]) out.emplace_back(j, share);
  }
  compact(out);
  return out;
}

template <class Scalar>
SparseVec<Scalar> Evaluator::apply(const GroupRingWord& w, const SparseVec<Scalar>& x,
                                   bool& leaked) {
  SparseVec<Scalar> out;
  for (const auto& t : w.terms()) {
    SparseVec<Scalar> y = x;
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
      y = apply_symbol(*it, y, leaked);
    Scalar c = scalar_of<Scalar>(t.coeff);
    for (auto& [i, v] : y) out.emplace_back(i, v * c);
  }
  compact(out);
  return out;
}

template SparseVec<Rational> Evaluator::apply(const GroupRingWord&, const SparseVec<Rational>&,
                                              bool&);
template SparseVec<double> Evaluator::apply(const GroupRingWord&, const SparseVec<double>&, bool&);

namespace {

void put_varint(std::string& out, const Integer& x) {
  // zigzag, 7 bits per byte
  Integer z = x >= 0 ? Integer(x * 2) : Integer(-x * 2 - 1);
  do {
    unsigned b = static_cast<unsigned>(z & 0x7f);
    z >>= 7;
    out.push_back(static_cast<char>(z != 0 ? (b | 0x80u) : b));
  } while (z != 0);
}

template <class Scalar>
SparseMatrix<Scalar> materialize_impl(const GroupRingWord& w, const VertexBasis& basis) {
  // A closed evaluator never adds to the basis.
  Evaluator ev(const_cast<VertexBasis&>(basis), false);
  SparseMatrix<Scalar> m(basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    bool leaked = false;
    auto y = ev.apply<Scalar>(w, {{c, Scalar(1)}}, leaked);
    for (auto& [r, v] : y) m.cols[c].emplace(r, v);
    m.interior[c] = !leaked;
  }
  return m;
}

}  // namespace

std::string vertex_key(const Vertex& v) {
  const BsElement& r = v.rep();
  std::string out;
  out.reserve(2 * r.length() + 2);
  put_varint(out, r.leading());
  for (const auto& s : r.syllables()) {
    out.push_back(s.sign > 0 ? '+' : '-');
    put_varint(out, s.exponent);
  }
  return out;
}

SparseMatrix<Rational> materialize(const GroupRingWord& w, const VertexBasis& basis) {
  return materialize_impl<Rational>(w, basis);
}

SparseMatrix<double> materialize_double(const GroupRingWord& w, const VertexBasis& basis) {
  return materialize_impl<double>(w, basis);
}

// ---------------------------------------------------------------------------

NormEstimate spectral_norm(const SparseMatrix<double>& op, double tol, std::size_t max_iter) {
  std::vector<std::size_t> cols;
  std::size_t rows = 0;
  for (std::size_t c = 0; c < op.dim; ++c) {
    if (!op.interior[c]) continue;
    cols.push_back(c);
    if (!op.cols[c].empty()) rows = std::max(rows, op.cols[c].rbegin()->first + 1);
  }
  NormEstimate est;
  if (cols.empty()) {
    est.converged = true;
    return est;
  }

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  std::vector<double> x(cols.size()), y(rows), z(cols.size());
  for (auto& v : x) v = unif(rng);
  auto normalize = [](std::vector<double>& v) {
    double s = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (s > 0)
      for (auto& e : v) e /= s;
    return s;
  };
  normalize(x);

  double lambda = 0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (const auto& [r, v] : op.cols[cols[k]]) y[r] += v * x[k];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      double s = 0;
      for (const auto& [r, v] : op.cols[cols[k]]) s += v * y[r];
      z[k] = s;
    }
    lambda = std::inner_product(x.begin(), x.end(), z.begin(), 0.0);
    double res = 0;
    for (std::size_t k = 0; k < x.size(); ++k) res += (z[k] - lambda * x[k]) * (z[k] - lambda * x[k]);
    res = std::sqrt(res);
    est.iterations = it;
    est.residual = lambda > 0 ? res / lambda : res;
    est.value = std::sqrt(std::max(lambda, 0.0));
    if (est.residual <= tol) {
      est.converged = true;
      break;
    }
    if (normalize(z) == 0) {
      est.converged = true;
      est.value = 0;
      break;
    }
    x.swap(z);
  }
  return est;
}

// ---------------------------------------------------------------------------

GroupRingWord invertible_average_word(const BsElement& g) {
  const BsParams& p = g.params();
  auto P = GroupRingWord::P(p);
  return P * GroupRingWord::U(g.inverse()) * P * GroupRingWord::U(g) * P;
}

InvertibleAverageCheck check_invertible_average(const BsElement& g, std::size_t radius,
                                                double tol) {
  InvertibleAverageCheck c{g, radius, {}, index_R(g), 0, tol, false};
  c.rayleigh = rayleigh_min(invertible_average_word(g), build_ball(g.params(), radius));
  c.bound = 1.0 / (static_cast<double>(c.index_R) * static_cast<double>(c.index_R));
  c.verdict = c.rayleigh.value >= c.bound - tol;
  return c;
}

RayleighReport rayleigh_min(const GroupRingWord& w, const VertexBasis& basis) {
  if (w.terms().empty()) throw std::invalid_argument("rayleigh_min: zero word");
  const auto& f0 = w.terms().front().factors;
  if (f0.empty() || f0.front().kind != Symbol::Kind::Average)
    throw std::invalid_argument("rayleigh_min: word must start and end with an averaging symbol");
  const Symbol q = f0.front();
  for (const auto& t : w.terms())
    if (t.factors.empty() || !(t.factors.front() == q) || !(t.factors.back() == q))
      throw std::invalid_argument("rayleigh_min: word must start and end with an averaging symbol");

  Evaluator ev(const_cast<VertexBasis&>(basis), false);
  auto orbits = ev.complete_orbits(q);
  std::vector<std::int64_t> orbit_of(basis.size(), -1);
  for (std::size_t o = 0; o < orbits.size(); ++o)
    for (auto v : orbits[o]) orbit_of[v] = static_cast<std::int64_t>(o);

  // S[o'][o] = <1_o', W 1_o>, exact.  The compression to normalized orbit
  // vectors is C = D^-1/2 S D^-1/2 with D = diag(|o|).
  std::vector<bool> interior(orbits.size(), false);
  std::vector<std::vector<std::pair<std::size_t, Rational>>> entries(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    SparseVec<Rational> e;
    for (auto v : orbits[o]) e.emplace_back(v, Rational(1));
    bool leaked = false;
    auto y = ev.apply<Rational>(w, e, leaked);
    if (leaked) continue;
    interior[o] = true;
    std::map<std::size_t, Rational> acc;
    for (const auto& [v, x] : y) {
      std::int64_t oo = orbit_of[v];
      if (oo < 0) throw std::logic_error("rayleigh_min: image outside the averaging range");
      acc[static_cast<std::size_t>(oo)] += x;
    }
    entries[o].assign(acc.begin(), acc.end());
  }

  std::vector<std::size_t> parent(orbits.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  RayleighReport rep;
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (!interior[o]) continue;
    ++rep.interior_orbits;
    for (const auto& [oo, x] : entries[o])
      if (interior[oo] && x != 0) parent[root(o)] = root(oo);
  }
  if (rep.interior_orbits == 0)
    throw Error(ErrorKind::EmptyInterior, "no averaging orbit has its image inside the basis");

  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t o = 0; o < orbits.size(); ++o)
    if (interior[o]) blocks[root(o)].push_back(o);
  rep.blocks = blocks.size();
  rep.value = std::numeric_limits<double>::infinity();
  for (const auto& [r, members] : blocks) {
    if (members.size() == 1) {
      const std::size_t o = members.front();
      Rational diag = 0;
      for (const auto& [oo, x] : entries[o])
        if (oo == o) diag = x;
      rep.value = std::min(rep.value, (diag / Rational(static_cast<long>(orbits[o].size())))
                                          .convert_to<double>());
      continue;
    }
    const auto k = static_cast<Eigen::Index>(members.size());
    std::map<std::size_t, Eigen::Index> pos;
    for (Eigen::Index i = 0; i < k; ++i) pos[members[static_cast<std::size_t>(i)]] = i;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const std::size_t oj = members[static_cast<std::size_t>(j)];
      for (const auto& [oo, x] : entries[oj]) {
        auto it = pos.find(oo);
        if (it == pos.end()) continue;
        c(it->second, j) = x.convert_to<double>() /
                           std::sqrt(static_cast<double>(orbits[oo].size() * orbits[oj].size()));
      }
    }
    c = 0.5 * (c + c.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
    rep.value = std::min(rep.value, es.eigenvalues()(0));
    rep.largest_block = std::max(rep.largest_block, members.size());
  }
  return rep;
}

// ---------------------------------------------------------------------------

GroupRingWord powers_average_word(const std::vector<BsElement>& elements,
                                  const std::vector<std::pair<BsElement, Rational>>& coeffs) {
  if (elements.empty()) throw std::invalid_argument("powers_average_word: no elements");
  const BsParams& p = elements.front().params();
  GroupRingWord x = GroupRingWord::identity(p).scaled(0);
  for (const auto& [f, c] : coeffs) x = x + GroupRingWord::U(f).scaled(c);
  auto P = GroupRingWord::P(p);
  GroupRingWord y = GroupRingWord::identity(p).scaled(0);
  for (const auto& g : elements)
    y = y + GroupRingWord::U(g) * x * P * GroupRingWord::U(g.inverse());
  return y.scaled(Rational(1, static_cast<long>(elements.size())));
}

DecayReport powers_decay_experiment(const PowersCertificate& cert,
                                    const std::vector<std::pair<BsElement, Rational>>& coeffs,
                                    std::size_t radius, std::size_t n_use, double tol) {
  for (const auto& [f, c] : coeffs) {
    check_same(cert.params, f.params());
    if (std::find(cert.f_list.begin(), cert.f_list.end(), f) == cert.f_list.end())
      throw Error(ErrorKind::InvalidParams, "coefficient on " + f.str() + " outside the certificate's F");
  }
  const std::size_t n = n_use == 0 ? cert.elements.size() : n_use;
  if (n == 0 || n > cert.elements.size())
    throw Error(ErrorKind::InvalidN, "decay experiment needs 1 <= n <= certificate size");
  std::vector<BsElement> els(cert.elements.begin(), cert.elements.begin() + static_cast<long>(n));
  GroupRingWord y = powers_average_word(els, coeffs);

  // Only the final translates are far from v0; they are interned by a packed
  // key instead of being stored as vertices.
  const std::vector<Vertex> cols = ball(cert.params, radius);
  std::vector<BsElement> inv;
  std::vector<std::vector<std::pair<BsElement, double>>> outer;
  for (const auto& g : els) {
    inv.push_back(g.inverse());
    outer.emplace_back();
    for (const auto& [f, c] : coeffs)
      if (c != 0) outer.back().emplace_back(g * f, c.convert_to<double>());
  }
  std::unordered_map<std::string, std::size_t> rows;
  SparseMatrix<double> m(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      auto orb = k_orbit(act(inv[i], cols[c]));
      const double w = 1.0 / (static_cast<double>(n) * static_cast<double>(orb.size()));
      for (const auto& u : orb)
        for (const auto& [h, x] : outer[i]) {
          auto key = vertex_key(act(h, u));
          auto [it, fresh] = rows.emplace(std::move(key), rows.size());
          m.add(it->second, c, x * w);
        }
    }
  }

  DecayReport rep;
  rep.n = n;
  rep.radius = radius;
  rep.columns = cols.size();
  rep.rows = rows.size();
  rep.estimate = spectral_norm(m, tol);
  rep.l1 = 0;
  for (const auto& [f, c] : coeffs) rep.l1 += abs(c);
  rep.bound = 2.0 * std::sqrt(static_cast<double>(n)) / static_cast<double>(n) *
              rep.l1.convert_to<double>();
  rep.verdict = rep.estimate.value <= rep.bound + tol;
  return rep;
}

}  // namespace powerslab
