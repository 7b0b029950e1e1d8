#pragma once

#include "powerslab/sparse.hpp"
#include "powerslab/tree.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace powerslab {

// The double coset <a> g <a>, keyed by the least vertex representative in
// the <a>-orbit of g v0.
struct DoubleCoset {
  BsElement rep;
  std::size_t R;
  std::size_t L;

  bool operator==(const DoubleCoset& o) const { return rep == o.rep; }
  auto operator<=>(const DoubleCoset& o) const { return rep <=> o.rep; }
  std::string str() const { return rep.str(); }
};

DoubleCoset double_coset_of(const BsElement& g);
// Representatives a^i rep of the R left cosets g'<a> inside the double coset.
std::vector<BsElement> left_cosets_in(const DoubleCoset& dc);

class HeckeElement {
 public:
  HeckeElement() = default;
  static HeckeElement basis(const DoubleCoset& dc);

  const std::map<DoubleCoset, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const DoubleCoset& dc) const;

  void add(const DoubleCoset& dc, const Rational& c);
  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement scaled(const Rational& c) const;

  bool operator==(const HeckeElement& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  std::map<DoubleCoset, Rational> terms_;
};

HeckeElement hecke_multiply(const DoubleCoset& h, const DoubleCoset& g);
HeckeElement operator*(const HeckeElement& x, const HeckeElement& y);
HeckeElement operator+(const HeckeElement& x, const HeckeElement& y);
HeckeElement hecke_star(const DoubleCoset& dc);
HeckeElement star(const HeckeElement& x);

// Right coset <a> g, represented by the inverse of the vertex
// representative of g^-1 v0.
class RightCoset {
 public:
  explicit RightCoset(const BsElement& g);
  const BsElement& rep() const { return rep_; }
  bool operator==(const RightCoset& o) const { return rep_ == o.rep_; }
  auto operator<=>(const RightCoset& o) const { return rep_ <=> o.rep_; }
  std::string str() const { return rep_.str(); }

 private:
  BsElement rep_;
};

// Right cosets <a> g with g^-1 v0 in the ball of radius r.
std::vector<RightCoset> right_coset_ball(const BsParams& p, std::size_t r);

// Matrix of x acting on l^2 of the right cosets in the basis.
SparseMatrix<Rational> hecke_rep_matrix(const HeckeElement& x,
                                        const std::vector<RightCoset>& basis);

// (R(g) L(g), double coset of g).
std::pair<Integer, DoubleCoset> compression_dictionary(const BsElement& g);

}  // namespace powerslab
