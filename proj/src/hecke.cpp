#include "powerslab/hecke.hpp"

#include "powerslab/completion.hpp"

#include <algorithm>
#include <unordered_map>

namespace powerslab {

namespace {

// Memo of canonical double cosets, one per thread.
std::unordered_map<Vertex, DoubleCoset>& dc_cache() {
  thread_local std::unordered_map<Vertex, DoubleCoset> cache;
  if (cache.size() > (1u << 20)) cache.clear();
  return cache;
}

}  // namespace

DoubleCoset double_coset_of(const BsElement& g) {
  Vertex v(g);
  auto& cache = dc_cache();
  if (auto it = cache.find(v); it != cache.end()) return it->second;
  auto orbit = k_orbit(v);
  auto least = std::min_element(orbit.begin(), orbit.end());
  DoubleCoset dc{least->rep(), orbit.size(), index_L(least->rep())};
  for (auto& u : orbit) cache.emplace(std::move(u), dc);
  return dc;
}

std::vector<BsElement> left_cosets_in(const DoubleCoset& dc) {
  std::vector<BsElement> out;
  out.reserve(dc.R);
  BsElement x = dc.rep;
  for (std::size_t i = 0; i < dc.R; ++i) {
    out.push_back(x);
    x = BsElement::a(x.params()) * x;
  }
  return out;
}

HeckeElement HeckeElement::basis(const DoubleCoset& dc) {
  HeckeElement x;
  x.add(dc, 1);
  return x;
}

Rational HeckeElement::coeff(const DoubleCoset& dc) const {
  auto it = terms_.find(dc);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HeckeElement::add(const DoubleCoset& dc, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(dc, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  for (const auto& [dc, c] : o.terms_) add(dc, c);
  return *this;
}

HeckeElement HeckeElement::scaled(const Rational& c) const {
  HeckeElement x;
  if (c == 0) return x;
  for (const auto& [dc, v] : terms_) x.terms_.emplace(dc, v * c);
  return x;
}

std::string HeckeElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [dc, c] : terms_) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += c.str() + " ";
    out += "v(" + dc.str() + ")";
  }
  return out;
}

HeckeElement hecke_multiply(const DoubleCoset& h, const DoubleCoset& g) {
  HeckeElement out;
  for (const auto& gp : left_cosets_in(g)) {
    auto dc = double_coset_of(h.rep * gp);
    out.add(dc, Rational(Integer(h.R), Integer(dc.R)));
  }
  return out;
}

HeckeElement operator*(const HeckeElement& x, const HeckeElement& y) {
  HeckeElement out;
  for (const auto& [h, c] : x.terms())
    for (const auto& [g, d] : y.terms()) out += hecke_multiply(h, g).scaled(c * d);
  return out;
}

HeckeElement operator+(const HeckeElement& x, const HeckeElement& y) {
  HeckeElement out = x;
  out += y;
  return out;
}

HeckeElement hecke_star(const DoubleCoset& dc) {
  HeckeElement out;
  out.add(double_coset_of(dc.rep.inverse()), Rational(Integer(dc.R), Integer(dc.L)));
  return out;
}

HeckeElement star(const HeckeElement& x) {
  HeckeElement out;
  for (const auto& [dc, c] : x.terms()) out += hecke_star(dc).scaled(c);
  return out;
}

RightCoset::RightCoset(const BsElement& g) : rep_(Vertex(g.inverse()).rep().inverse()) {}

std::vector<RightCoset> right_coset_ball(const BsParams& p, std::size_t r) {
  std::vector<RightCoset> out;
  for (const auto& v : ball(p, r)) out.emplace_back(v.rep().inverse());
  return out;
}

SparseMatrix<Rational> hecke_rep_matrix(const HeckeElement& x,
                                        const std::vector<RightCoset>& basis) {
  std::map<RightCoset, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  // Right cosets <a> h' inside <a> h <a>, from the orbit of h^-1 v0.
  std::vector<std::pair<std::vector<BsElement>, Rational>> blocks;
  for (const auto& [dc, c] : x.terms()) {
    std::vector<BsElement> reps;
    for (const auto& u : k_orbit(Vertex(dc.rep.inverse()))) reps.push_back(u.rep().inverse());
    blocks.emplace_back(std::move(reps), c);
  }
  SparseMatrix<Rational> m(basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (const auto& [reps, c] : blocks) {
      for (const auto& hp : reps) {
        auto it = index.find(RightCoset(hp * basis[col].rep()));
        if (it == index.end())
          m.interior[col] = false;
        else
          m.add(it->second, col, c);
      }
    }
  }
  return m;
}

std::pair<Integer, DoubleCoset> compression_dictionary(const BsElement& g) {
  auto dc = double_coset_of(g);
  return {Integer(dc.R) * dc.L, dc};
}

}  // namespace powerslab
