#pragma once

#include "powerslab/group.hpp"

#include <random>
#include <string>

namespace testsupport {

using namespace powerslab;

// Random word in a^{+-1}, t^{+-1} of the given length, as an element.
inline BsElement random_element(const BsParams& p, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 3);
  BsElement g(p);
  int l = len(rng);
  for (int i = 0; i < l; ++i) {
    switch (letter(rng)) {
      case 0: g.mul_a(1); break;
      case 1: g.mul_a(-1); break;
      case 2: g.mul_t(1); break;
      default: g.mul_t(-1); break;
    }
  }
  return g;
}

inline Word random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 3);
  Word w;
  int l = len(rng);
  for (int i = 0; i < l; ++i) {
    int c = letter(rng);
    w.push_back({c < 2 ? 'a' : 't', Integer(c % 2 == 0 ? 1 : -1)});
  }
  return w;
}

// Image of a word in the affine group of Q: a -> x+1, t -> (n/m) x.
struct Affine {
  Rational scale = 1;
  Rational shift = 0;
  // this after o: x -> scale*(o.scale*x + o.shift) + shift
  Affine then_after(const Affine& o) const {
    return {scale * o.scale, scale * o.shift + shift};
  }
  bool operator==(const Affine&) const = default;
};

inline Affine affine_of(const BsParams& p, const Word& w) {
  Affine r;
  for (const auto& l : w) {
    Affine step;
    if (l.gen == 'a') {
      step.shift = Rational(l.power);
    } else {
      Rational q = Rational(p.n()) / Rational(p.m());
      Rational s = 1;
      Integer k = l.power < 0 ? Integer(-l.power) : l.power;
      for (Integer i = 0; i < k; ++i) s *= q;
      step.scale = l.power < 0 ? 1 / s : s;
    }
    r = r.then_after(step);
  }
  return r;
}

inline Word word_of(const BsElement& g) {
  Word w;
  if (g.leading() != 0) w.push_back({'a', g.leading()});
  for (const auto& s : g.syllables()) {
    w.push_back({'t', Integer(s.sign)});
    if (s.exponent != 0) w.push_back({'a', s.exponent});
  }
  return w;
}

}  // namespace testsupport
