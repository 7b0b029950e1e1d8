#pragma once

#include "powerslab/tree.hpp"

#include <string>
#include <vector>

namespace powerslab {

constexpr std::size_t kOrbitBudget = 1u << 22;

// Orbit of v under the cyclic group generated by gen, in order v, gen v, ...
std::vector<Vertex> cyclic_orbit(const BsElement& gen, const Vertex& v,
                                 std::size_t budget = kOrbitBudget);
// Orbit of v under <a>, equivalently under its closure K.
std::vector<Vertex> k_orbit(const Vertex& v, std::size_t budget = kOrbitBudget);
std::size_t k_orbit_size(const Vertex& v, std::size_t budget = kOrbitBudget);

// R(g) = [K : K ∩ gKg^-1] and L(g) = [K : K ∩ g^-1 K g].
std::size_t index_R(const BsElement& g);
std::size_t index_L(const BsElement& g);

// Delta(g) = R(g)/L(g).
Rational modular(const BsElement& g);
// The same quantity in the inverse convention.
Rational modular_inverse_convention(const BsElement& g);
// Generator |m|/n of the image of Delta, in (0,1].
Rational modular_image(const BsParams& p);

// max(|K g^l v0|, |K g^-l v0|) for l = 1 .. lmax.
std::vector<std::size_t> index_power_sequence(const BsElement& g, std::size_t lmax);
std::size_t index_power_bound(const BsElement& g, std::size_t lmax);

struct ConditionStarReport {
  BsElement witness;
  bool witness_hyperbolic = false;
  bool witness_t_sum_zero = false;
  std::vector<std::size_t> index_sequence;
  std::size_t index_power_bound = 0;
  bool index_bound_constant = false;
  std::size_t ball_transitivity_radius_checked = 0;
  bool ball_transitive = false;
  bool discrete = false;
  bool verdict = false;

  bool operator==(const ConditionStarReport&) const = default;
};

ConditionStarReport verify_condition_star(const BsParams& p);

struct TypeLabel {
  enum class Kind { II1, IIinf, IIIlambda, III1 };
  Kind kind;
  Rational lambda;  // set for IIIlambda
  std::string str() const;
};

TypeLabel type_label(const BsParams& p);

}  // namespace powerslab
