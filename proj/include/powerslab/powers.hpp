#pragma once

#include "powerslab/shadow.hpp"

#include <cstdint>
#include <vector>

namespace powerslab {

struct PowersCertificate {
  BsParams params;
  BoundaryPoint base_point_x;
  ShadowSet separating_set_O;
  std::vector<BsElement> f_list;
  std::vector<BsElement> elements;
  Integer control_r;
  // Construction data: h = u w u^-1 drives the family, the seed element is
  // c h c^-1, and element i is h^{j_i} (c h c^-1)^{l_i} h^{-j_i}.
  BsElement conjugator_u;
  BsElement conjugator_c;
  std::vector<std::size_t> shifts;
  std::vector<std::size_t> boosts;

  // Throws InvalidCertificate when a structural invariant fails.
  void validate() const;
  bool operator==(const PowersCertificate& o) const;
};

struct PowersReport {
  bool cond_separation = false;
  bool cond_disjoint = false;
  bool cond_control = false;
  bool verdict = false;

  bool operator==(const PowersReport&) const = default;
};

struct PowersOptions {
  std::uint64_t seed = 1;
  std::size_t max_depth = 24;
  std::size_t max_shift = 400;
  std::size_t max_boost = 64;
};

// The witness a t a t^-1 and its attracting end.
BsElement powers_witness(const BsParams& p);
BoundaryPoint powers_base_point(const BsParams& p);

// Distinct ends a^i x.
std::vector<BoundaryPoint> k_orbit_points(const BoundaryPoint& x);
// Ends z with meet(v0, x', z) >= d for some x' in the orbit of x (d >= 1).
ShadowSet orbit_neighbourhood(const BoundaryPoint& x, std::size_t d);

ShadowSet build_separating_shadow(const std::vector<BsElement>& f_list, const BoundaryPoint& x,
                                  const PowersOptions& opt = {});

struct TransverseFamily {
  std::vector<BsElement> elements;
  BsElement conjugator_u;
  BsElement conjugator_c;
  std::vector<std::size_t> shifts;
  std::vector<std::size_t> boosts;
};

TransverseFamily build_transverse_family(std::size_t n, const ShadowSet& O,
                                         const BoundaryPoint& x, const PowersOptions& opt = {});

// Search radii for the conjugators u and c.
constexpr std::size_t kUSearchRadius = 4;
constexpr std::size_t kCSearchRadius = 3;

// Upper bound for [K : K ∩ g K g^-1] over every element the construction can
// produce; it does not depend on F, O or n.
Integer control_bound(const BsParams& p);

PowersCertificate powers_certificate(const BsParams& p, const std::vector<BsElement>& f_list,
                                     std::size_t n, const PowersOptions& opt = {});

PowersReport verify_certificate(const PowersCertificate& cert);

}  // namespace powerslab
