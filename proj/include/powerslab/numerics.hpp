#pragma once

#include "powerslab/powers.hpp"
#include "powerslab/sparse.hpp"
#include "powerslab/tree.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace powerslab {

// U(g), or the averaging projection onto functions invariant under the
// closure of <c a^step c^-1>.  P = average(e, 1) is p_K.
struct Symbol {
  enum class Kind { Unitary, Average };
  Kind kind;
  BsElement g;       // the element for U, the conjugator for an average
  long step = 1;

  bool operator==(const Symbol& o) const {
    return kind == o.kind && g == o.g && step == o.step;
  }
  std::string str() const;
};

// Finite rational combination of products of symbols; factors[0] is the
// leftmost factor.
class GroupRingWord {
 public:
  struct Term {
    Rational coeff;
    std::vector<Symbol> factors;
  };

  static GroupRingWord U(const BsElement& g);
  static GroupRingWord P(const BsParams& p);
  static GroupRingWord average(const BsElement& conj, long step);
  static GroupRingWord identity(const BsParams& p);

  const std::vector<Term>& terms() const { return terms_; }
  const BsParams& params() const { return params_; }
  GroupRingWord scaled(const Rational& c) const;
  GroupRingWord adjoint() const;
  std::string str() const;

  friend GroupRingWord operator*(const GroupRingWord& x, const GroupRingWord& y);
  friend GroupRingWord operator+(const GroupRingWord& x, const GroupRingWord& y);

 private:
  explicit GroupRingWord(const BsParams& p) : params_(p) {}
  static std::vector<Symbol> simplify(std::vector<Symbol> f);

  BsParams params_;
  std::vector<Term> terms_;
};

class VertexBasis {
 public:
  VertexBasis() = default;
  explicit VertexBasis(std::vector<Vertex> vs);

  std::size_t size() const { return verts_.size(); }
  const Vertex& operator[](std::size_t i) const { return verts_[i]; }
  const std::vector<Vertex>& vertices() const { return verts_; }
  // Index of v, or -1.
  std::int64_t find(const Vertex& v) const;
  std::size_t add(const Vertex& v);

 private:
  std::vector<Vertex> verts_;
  std::unordered_map<Vertex, std::size_t> index_;
};

// Compact injective byte encoding of a vertex.
std::string vertex_key(const Vertex& v);

// All vertices within distance r of v0.
VertexBasis build_ball(const BsParams& p, std::size_t r);

template <class Scalar>
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

// Applies words to sparse vectors on a vertex basis.  In closed mode any
// vertex outside the basis is dropped and reported; in growing mode the
// basis is extended instead.
class Evaluator {
 public:
  Evaluator(VertexBasis& basis, bool grow);

  template <class Scalar>
  SparseVec<Scalar> apply(const GroupRingWord& w, const SparseVec<Scalar>& x, bool& leaked);
  // Orbits of an averaging symbol that lie entirely inside the basis.
  std::vector<std::vector<std::size_t>> complete_orbits(const Symbol& s);

 private:
  struct AverageCache {
    std::vector<std::int64_t> orbit_of;  // -2 unknown, -1 leaves the basis
    std::vector<std::vector<std::size_t>> orbits;
  };
  std::int64_t target(const BsElement& g, std::size_t i);
  std::int64_t orbit(const Symbol& s, std::size_t i);
  AverageCache& cache_for(const Symbol& s);
  template <class Scalar>
  SparseVec<Scalar> apply_symbol(const Symbol& s, const SparseVec<Scalar>& x, bool& leaked);

  VertexBasis& basis_;
  bool grow_;
  std::unordered_map<BsElement, std::vector<std::int64_t>> unitary_;
  std::vector<std::pair<Symbol, AverageCache>> average_;
};

// Matrix of the word on the basis; column c is interior when nothing left
// the basis while computing it.
SparseMatrix<Rational> materialize(const GroupRingWord& w, const VertexBasis& basis);
SparseMatrix<double> materialize_double(const GroupRingWord& w, const VertexBasis& basis);

struct NormEstimate {
  double value = 0;
  std::size_t iterations = 0;
  double residual = 0;
  bool converged = false;
  std::string direction = "LOWER_BOUND_ON_CSTAR_NORM";

  bool operator==(const NormEstimate&) const = default;
};

NormEstimate spectral_norm(const SparseMatrix<double>& op, double tol = 1e-6,
                           std::size_t max_iter = 10000);

struct RayleighReport {
  double value = 0;
  std::size_t interior_orbits = 0;
  std::size_t blocks = 0;
  std::size_t largest_block = 1;

  bool operator==(const RayleighReport&) const = default;
};

// Minimum Rayleigh quotient of a self-adjoint word of the form Q X Q (Q an
// averaging symbol) over vectors in the range of Q supported on orbits whose
// image stays inside the basis.  Throws EmptyInterior when there are none.
RayleighReport rayleigh_min(const GroupRingWord& w, const VertexBasis& basis);
// The word P U(g)^* P U(g) P.
GroupRingWord invertible_average_word(const BsElement& g);

// rayleigh_min of that word on the radius-r ball against R(g)^-2 - tol.
struct InvertibleAverageCheck {
  BsElement g;
  std::size_t radius = 0;
  RayleighReport rayleigh;
  std::size_t index_R = 0;
  double bound = 0;
  double tol = 0;
  bool verdict = false;

  bool operator==(const InvertibleAverageCheck&) const = default;
};

InvertibleAverageCheck check_invertible_average(const BsElement& g, std::size_t radius,
                                                double tol = 1e-9);

struct DecayReport {
  std::size_t n = 0;
  std::size_t radius = 0;
  std::size_t columns = 0;
  std::size_t rows = 0;
  NormEstimate estimate;
  Rational l1;
  double bound = 0;
  bool verdict = false;

  bool operator==(const DecayReport&) const = default;
};

// The word (1/n) sum_i U(g_i) x P U(g_i^-1) with x = sum_f c_f U(f).
GroupRingWord powers_average_word(const std::vector<BsElement>& elements,
                                  const std::vector<std::pair<BsElement, Rational>>& coeffs);

// Norm of the word above on the span of the radius-R ball, with every column
// computed exactly (the row basis grows as needed).  Uses the first n_use
// elements of the certificate (all when 0).
DecayReport powers_decay_experiment(const PowersCertificate& cert,
                                    const std::vector<std::pair<BsElement, Rational>>& coeffs,
                                    std::size_t radius, std::size_t n_use = 0,
                                    double tol = 1e-6);

}  // namespace powerslab
