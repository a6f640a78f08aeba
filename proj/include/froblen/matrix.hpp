#pragma once

// Dense matrices and canonical subspaces over a coefficient domain.
//
// A domain D supplies value_type, zero(), one() and frobenius(x, k). Finite
// fields additionally provide size(), element(i), index_of(x) and division;
// row reduction and Subspace require a field.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "froblen/errors.hpp"

namespace froblen {

template <class T>
using Vec = std::vector<T>;

template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<Vec<T>>& rows) {
    if (rows.empty() || rows.front().empty()) throw ArgumentError("matrix must be non-empty");
    Matrix out(rows.size(), rows.front().size(), rows.front().front());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != out.cols_) throw ArgumentError("ragged matrix rows");
      for (std::size_t j = 0; j < out.cols_; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> row(std::size_t i) const {
    return Vec<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vec<T> column(std::size_t j) const {
    Vec<T> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw ArgumentError("matrix product: inner dimensions differ");
    const T zero = data_.front() - data_.front();
    Matrix out(rows_, rhs.cols_, zero);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t l = 0; l < cols_; ++l) {
        const T& a = (*this)(i, l);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
          const T& b = rhs(l, j);
          if (!b.is_zero()) out(i, j) += a * b;
        }
      }
    }
    return out;
  }

  Vec<T> operator*(const Vec<T>& v) const {
    if (v.size() != cols_) {
      throw ArgumentError("matrix-vector product: vector has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(cols_));
    }
    const T zero = data_.front() - data_.front();
    Vec<T> out(rows_, zero);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
      }
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x.is_zero(); });
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (i != j && !(*this)(i, j).is_zero()) return false;
      }
    }
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template <class D>
Matrix<typename D::value_type> identity_matrix(const D& dom, std::size_t n) {
  Matrix<typename D::value_type> out(n, n, dom.zero());
  for (std::size_t i = 0; i < n; ++i) out(i, i) = dom.one();
  return out;
}

// A^[p^k]: every entry raised by the domain Frobenius.
template <class D>
Matrix<typename D::value_type> entry_frobenius(const D& dom, const Matrix<typename D::value_type>& a,
                                               std::uint64_t k) {
  Matrix<typename D::value_type> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = dom.frobenius(a(i, j), k);
  }
  return out;
}

template <class D>
Vec<typename D::value_type> vec_frobenius(const D& dom, const Vec<typename D::value_type>& v,
                                          std::uint64_t k) {
  Vec<typename D::value_type> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(dom.frobenius(x, k));
  return out;
}

template <class D>
bool is_identity(const D& dom, const Matrix<typename D::value_type>& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != (i == j ? dom.one() : dom.zero())) return false;
    }
  }
  return true;
}

template <class T>
bool is_zero_vector(const Vec<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return x.is_zero(); });
}

template <class D>
Matrix<typename D::value_type> matrix_power(const D& dom, Matrix<typename D::value_type> base,
                                            std::uint64_t exp) {
  auto result = identity_matrix(dom, base.rows());
  while (exp > 0) {
    if (exp & 1) result = result * base;
    exp >>= 1;
    if (exp > 0) base = base * base;
  }
  return result;
}

// --- row reduction (fields only) ----------------------------------------------

template <class T>
struct RowEchelon {
  Matrix<T> reduced;                 // reduced row-echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const noexcept { return pivots.size(); }
};

template <class T>
RowEchelon<T> rref(Matrix<T> a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, c).is_zero()) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(r, j));
    }
    const T inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const T factor = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

template <class T>
std::size_t rank(const Matrix<T>& a) {
  return rref(a).rank();
}

// Throws ArgumentError when a is singular.
template <class D>
Matrix<typename D::value_type> inverse(const D& dom, const Matrix<typename D::value_type>& a) {
  using T = typename D::value_type;
  if (!a.is_square()) throw ArgumentError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, 2 * n, dom.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = dom.one();
  }
  auto ech = rref(std::move(aug));
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) throw ArgumentError("matrix is singular");
  Matrix<T> out(n, n, dom.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = ech.reduced(i, n + j);
  }
  return out;
}

// --- subspaces ----------------------------------------------------------------------

/// Subspace of D^n kept as the nonzero rows of its reduced row-echelon form,
/// which is canonical: equal subspaces have identical bases.
template <class D>
class Subspace {
 public:
  using T = typename D::value_type;

  Subspace(D dom, std::size_t ambient) : dom_(std::move(dom)), ambient_(ambient) {}

  static Subspace span(D dom, std::size_t ambient, const std::vector<Vec<T>>& vectors) {
    Subspace out(std::move(dom), ambient);
    for (const auto& v : vectors) out.insert(v);
    return out;
  }
  static Subspace whole(D dom, std::size_t ambient) {
    Subspace out(dom, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
      Vec<T> e(ambient, dom.zero());
      e[i] = dom.one();
      out.insert(e);
    }
    return out;
  }

  const D& domain() const noexcept { return dom_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vec<T>>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  // v minus its projection along the basis; zero at every pivot position.
  Vec<T> reduce(Vec<T> v) const {
    check_length(v);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const T c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        if (!basis_[r][j].is_zero()) v[j] -= c * basis_[r][j];
      }
    }
    return v;
  }

  bool contains(const Vec<T>& v) const { return is_zero_vector(reduce(v)); }
  bool contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [&](const Vec<T>& v) { return contains(v); });
  }

  // Adds v; returns true when the dimension grew.
  bool insert(const Vec<T>& v) {
    Vec<T> w = reduce(v);
    std::size_t lead = 0;
    while (lead < ambient_ && w[lead].is_zero()) ++lead;
    if (lead == ambient_) return false;
    const T inv = w[lead].inverse();
    for (auto& x : w) x *= inv;
    for (auto& row : basis_) {
      const T c = row[lead];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        if (!w[j].is_zero()) row[j] -= c * w[j];
      }
    }
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin());
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
    return true;
  }

  Subspace join(const Subspace& other) const {
    Subspace out = *this;
    for (const auto& v : other.basis_) out.insert(v);
    return out;
  }

  // Coordinates of a member v in the echelon basis: its pivot entries.
  Vec<T> coordinates(const Vec<T>& v) const {
    Vec<T> out;
    out.reserve(basis_.size());
    for (std::size_t c : pivots_) out.push_back(v[c]);
    return out;
  }

  // Basis as the columns of an ambient x dim matrix.
  Matrix<T> basis_matrix() const {
    Matrix<T> out(ambient_, basis_.size(), dom_.zero());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      for (std::size_t i = 0; i < ambient_; ++i) out(i, j) = basis_[j][i];
    }
    return out;
  }

  // Hashable canonical form over a finite field.
  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> out;
    out.reserve(basis_.size() * ambient_ + 1);
    out.push_back(basis_.size());
    for (const auto& row : basis_) {
      for (const auto& x : row) out.push_back(dom_.index_of(x));
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  void check_length(const Vec<T>& v) const {
    if (v.size() != ambient_) {
      throw ArgumentError("vector has length " + std::to_string(v.size()) + ", expected " +
                          std::to_string(ambient_));
    }
  }

  D dom_;
  std::size_t ambient_;
  std::vector<Vec<T>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace froblen
