#include "powerslab/group.hpp"

#include "powerslab/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace powerslab {

BsParams::BsParams(long m, long n) : m_(m), n_(n) {
  long am = m < 0 ? -m : m;
  if (am < 2 || am > n)
    throw Error(ErrorKind::InvalidParams,
                "need 2 <= |m| <= n, got m=" + std::to_string(m) +
                    " n=" + std::to_string(n));
}

void check_same(const BsParams& p, const BsParams& q) {
  if (!(p == q))
    throw Error(ErrorKind::ParamsMismatch, "elements belong to different groups");
}

Integer mod_floor(const Integer& x, long d) {
  Integer r = x % d;
  if (r < 0) r += d;
  return r;
}

BsElement BsElement::a(const BsParams& p, const Integer& k) {
  BsElement g(p);
  g.leading_ = k;
  return g;
}

BsElement BsElement::t(const BsParams& p, int sign) {
  BsElement g(p);
  g.mul_t(sign);
  return g;
}

const Integer& BsElement::final_exponent() const {
  return syl_.empty() ? leading_ : syl_.back().exponent;
}

void BsElement::mul_a(const Integer& k) {
  if (syl_.empty())
    leading_ += k;
  else
    syl_.back().exponent += k;
}

void BsElement::clear_final() {
  if (syl_.empty())
    leading_ = 0;
  else
    syl_.back().exponent = 0;
}

void BsElement::mul_t(int sign) {
  const long n = params_.n();
  const long m = params_.m();
  const long am = params_.abs_m();
  if (!syl_.empty() && syl_.back().sign == -sign) {
    const Integer& r = syl_.back().exponent;
    if (sign == -1 && r % m == 0) {
      // t a^{mq} t^-1 = a^{nq}
      Integer v = n * (r / m);
      syl_.pop_back();
      mul_a(v);
      return;
    }
    if (sign == 1 && r % n == 0) {
      // t^-1 a^{nq} t = a^{mq}
      Integer v = m * (r / n);
      syl_.pop_back();
      mul_a(v);
      return;
    }
  }
  Integer& r = syl_.empty() ? leading_ : syl_.back().exponent;
  if (sign == 1) {
    Integer s = mod_floor(r, n);
    Integer q = (r - s) / n;
    r = s;
    syl_.push_back({1, m * q});
  } else {
    Integer s = mod_floor(r, am);
    Integer q = (r - s) / am;
    r = s;
    syl_.push_back({-1, (m < 0 ? -n : n) * q});
  }
}

void BsElement::mul(const BsElement& h) {
  check_same(params_, h.params_);
  mul_a(h.leading_);
  for (const auto& s : h.syl_) {
    mul_t(s.sign);
    mul_a(s.exponent);
  }
}

BsElement BsElement::prefix(std::size_t i) const {
  BsElement p(params_);
  p.leading_ = leading_;
  p.syl_.assign(syl_.begin(), syl_.begin() + static_cast<std::ptrdiff_t>(i));
  p.clear_final();
  if (i == 0) p.leading_ = 0;
  return p;
}

BsElement BsElement::from_word(const BsParams& p, const Word& w) {
  BsElement g(p);
  for (const auto& l : w) {
    if (l.gen == 'a') {
      g.mul_a(l.power);
    } else if (l.gen == 't') {
      int s = l.power < 0 ? -1 : 1;
      Integer k = l.power < 0 ? Integer(-l.power) : l.power;
      for (Integer i = 0; i < k; ++i) g.mul_t(s);
    }
  }
  return g;
}

BsElement BsElement::parse(const BsParams& p, std::string_view s) {
  return from_word(p, parse_word(s));
}

BsElement BsElement::inverse() const {
  BsElement g(params_);
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) {
    g.mul_a(-it->exponent);
    g.mul_t(-it->sign);
  }
  g.mul_a(-leading_);
  return g;
}

long BsElement::t_exponent_sum() const {
  long s = 0;
  for (const auto& x : syl_) s += x.sign;
  return s;
}

namespace {

void put_a(std::string& out, const Integer& k) {
  if (k == 0) return;
  if (!out.empty()) out += ' ';
  out += 'a';
  if (k != 1) out += '^' + k.str();
}

}  // namespace

std::string BsElement::str() const {
  std::string out;
  put_a(out, leading_);
  for (std::size_t i = 0; i < syl_.size();) {
    // consecutive t-letters of one sign print as a single power
    std::size_t j = i;
    while (j + 1 < syl_.size() && syl_[j].exponent == 0 && syl_[j + 1].sign == syl_[i].sign) ++j;
    long k = static_cast<long>(j - i + 1) * syl_[i].sign;
    if (!out.empty()) out += ' ';
    out += k == 1 ? std::string("t") : "t^" + std::to_string(k);
    put_a(out, syl_[j].exponent);
    i = j + 1;
  }
  return out.empty() ? "e" : out;
}

std::strong_ordering BsElement::operator<=>(const BsElement& o) const {
  if (auto c = syl_.size() <=> o.syl_.size(); c != 0) return c;
  if (leading_ != o.leading_)
    return leading_ < o.leading_ ? std::strong_ordering::less
                                 : std::strong_ordering::greater;
  for (std::size_t i = 0; i < syl_.size(); ++i) {
    if (auto c = syl_[i].sign <=> o.syl_[i].sign; c != 0) return c;
    const Integer& x = syl_[i].exponent;
    const Integer& y = o.syl_[i].exponent;
    if (x != y)
      return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t BsElement::hash() const {
  std::hash<Integer> hi;
  std::size_t h = hi(leading_) ^ (syl_.size() * 0x9e3779b97f4a7c15ULL);
  for (const auto& s : syl_) {
    h ^= hi(s.exponent) + static_cast<std::size_t>(s.sign + 7) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

BsElement operator*(const BsElement& g, const BsElement& h) {
  BsElement r = g;
  r.mul(h);
  return r;
}

BsElement pow(const BsElement& g, long k) {
  BsElement base = k < 0 ? g.inverse() : g;
  BsElement r(g.params());
  for (long i = 0; i < (k < 0 ? -k : k); ++i) r.mul(base);
  return r;
}

Word parse_word(std::string_view s) {
  Word w;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(i) +
                                      " in \"" + std::string(s) + "\"");
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c != 'a' && c != 't' && c != 'e') fail("unexpected character");
    char gen = static_cast<char>(c);
    ++i;
    Integer power = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      bool brace = i < s.size() && (s[i] == '{' || s[i] == '(');
      if (brace) ++i;
      std::size_t start = i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      std::size_t digits = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == digits) fail("expected integer exponent");
      std::string num(s.substr(start, i - start));
      if (num[0] == '+') num.erase(0, 1);
      power = Integer(num);
      if (brace) {
        if (i >= s.size() || (s[i] != '}' && s[i] != ')')) fail("unclosed exponent");
        ++i;
      }
      if (gen == 'e') fail("identity takes no exponent");
    }
    if (gen != 'e') w.push_back({gen, power});
  }
  return w;
}

}  // namespace powerslab
