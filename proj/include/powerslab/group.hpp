#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace powerslab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parameters of BS(m,n) = <a, t | t a^m t^-1 = a^n>, with 2 <= |m| <= n.
class BsParams {
 public:
  BsParams(long m, long n);

  long m() const { return m_; }
  long n() const { return n_; }
  long abs_m() const { return m_ < 0 ? -m_ : m_; }
  long degree() const { return abs_m() + n_; }

  bool operator==(const BsParams&) const = default;

 private:
  long m_;
  long n_;
};

// One letter of an input word: generator 'a' or 't' raised to a power.
struct Letter {
  char gen;
  Integer power;
};
using Word = std::vector<Letter>;

// t^sign followed by a^exponent.
struct Syllable {
  int sign;
  Integer exponent;

  bool operator==(const Syllable&) const = default;
};

// Britton normal form a^{r0} t^{e1} a^{r1} ... t^{ek} a^{rk}.  The exponent
// in front of a t-letter lies in [0,n), in front of a t^-1 letter in
// [0,|m|); the final exponent is unconstrained.
class BsElement {
 public:
  explicit BsElement(const BsParams& p) : params_(p) {}

  static BsElement identity(const BsParams& p) { return BsElement(p); }
  static BsElement a(const BsParams& p, const Integer& k = 1);
  static BsElement t(const BsParams& p, int sign = 1);
  static BsElement from_word(const BsParams& p, const Word& w);
  static BsElement parse(const BsParams& p, std::string_view s);

  const BsParams& params() const { return params_; }
  const Integer& leading() const { return leading_; }
  const std::vector<Syllable>& syllables() const { return syl_; }
  std::size_t length() const { return syl_.size(); }
  bool is_identity() const { return syl_.empty() && leading_ == 0; }

  const Integer& final_exponent() const;
  // Sign of the last t-letter, 0 when there is none.
  int last_sign() const { return syl_.empty() ? 0 : syl_.back().sign; }

  void mul_a(const Integer& k);
  void mul_t(int sign);
  void mul(const BsElement& h);
  // Drop the trailing a-power (right coset of <a>).
  void clear_final();
  // Prefix through the i-th t-letter, final exponent 0 (i <= length()).
  BsElement prefix(std::size_t i) const;

  BsElement inverse() const;
  long t_exponent_sum() const;
  std::string str() const;

  bool operator==(const BsElement& o) const {
    return leading_ == o.leading_ && syl_ == o.syl_;
  }
  // Shortlex-style order: syllable count, then exponents left to right.
  std::strong_ordering operator<=>(const BsElement& o) const;
  std::size_t hash() const;

 private:
  BsParams params_;
  Integer leading_ = 0;
  std::vector<Syllable> syl_;
};

BsElement operator*(const BsElement& g, const BsElement& h);
BsElement pow(const BsElement& g, long k);

void check_same(const BsParams& p, const BsParams& q);

// Tokenizer for the element grammar: tokens a, t, a^k, t^k, e.
Word parse_word(std::string_view s);

// Floor-style remainder in [0, d).
Integer mod_floor(const Integer& x, long d);

}  // namespace powerslab

template <>
struct std::hash<powerslab::BsElement> {
  std::size_t operator()(const powerslab::BsElement& g) const { return g.hash(); }
};
