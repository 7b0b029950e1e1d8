#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace powerslab {

// Column-major sparse matrix on a fixed finite basis.  interior[c] is true
// when the column was computed without leaving the basis.
template <class Scalar>
struct SparseMatrix {
  std::size_t dim = 0;
  std::vector<std::map<std::size_t, Scalar>> cols;
  std::vector<bool> interior;

  explicit SparseMatrix(std::size_t d = 0) : dim(d), cols(d), interior(d, true) {}

  void add(std::size_t row, std::size_t col, const Scalar& v) {
    auto [it, fresh] = cols[col].emplace(row, v);
    if (!fresh) {
      it->second += v;
      if (it->second == Scalar(0)) cols[col].erase(it);
    } else if (v == Scalar(0)) {
      cols[col].erase(it);
    }
  }

  static SparseMatrix identity(std::size_t d) {
    SparseMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m.cols[i].emplace(i, Scalar(1));
    return m;
  }
};

// (A B) column c = A applied to column c of B.  A column of the product is
// interior when the column of B is interior and it only touches interior
// columns of A.
template <class Scalar>
SparseMatrix<Scalar> operator*(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  SparseMatrix<Scalar> out(b.dim);
  for (std::size_t c = 0; c < b.dim; ++c) {
    bool in = b.interior[c];
    for (const auto& [k, x] : b.cols[c]) {
      in = in && a.interior[k];
      for (const auto& [r, y] : a.cols[k]) out.add(r, c, y * x);
    }
    out.interior[c] = in;
  }
  return out;
}

// Equality restricted to columns interior in both operands.
template <class Scalar>
bool equal_on_interior(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b,
                       std::size_t* compared = nullptr) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < a.dim && c < b.dim; ++c) {
    if (!a.interior[c] || !b.interior[c]) continue;
    ++n;
    if (a.cols[c] != b.cols[c]) return false;
  }
  if (compared) *compared = n;
  return a.dim == b.dim;
}

}  // namespace powerslab
