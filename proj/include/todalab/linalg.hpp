#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "todalab/exact.hpp"
#include "todalab/jet.hpp"

namespace todalab {

inline bool is_zero_entry(const Rational& x) { return is_zero(x); }
inline bool is_zero_entry(double x) { return x == 0.0; }
template <class S>
bool is_zero_entry(const Jet<S>& x) {
  return x.is_zero();
}

inline double pivot_magnitude(const Rational& x) { return magnitude(x); }
inline double pivot_magnitude(double x) { return magnitude(x); }
template <class S>
double pivot_magnitude(const Jet<S>& x) {
  return magnitude(x.value());
}

template <class T>
class Poly1;
template <class T>
bool is_zero_entry(const Poly1<T>& p);

/// Dense row-major matrix over any ring-like scalar (Rational, double, Jet, Poly1).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero_entry(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero_entry(b(k, j))) continue;
          r(i, j) += aik * b(k, j);
        }
      }
    }
    return r;
  }

  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data_) v = s * v;
    return r;
  }

 private:
  static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <class T>
T trace(const Matrix<T>& a) {
  T t(0);
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

template <class T>
Matrix<T> power(const Matrix<T>& a, int k) {
  if (k < 0) throw std::invalid_argument("negative matrix power");
  Matrix<T> r = Matrix<T>::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

/// Gauss-Jordan inverse, pivoting on the largest value magnitude.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    double best = pivot_magnitude(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const double v = pivot_magnitude(a(r, c));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best == 0.0) throw std::domain_error("singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    const T scale = T(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) = a(c, j) * scale;
      inv(c, j) = inv(c, j) * scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero_entry(a(r, c))) continue;
      const T f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!is_zero_entry(a(c, j))) a(r, j) -= f * a(c, j);
        if (!is_zero_entry(inv(c, j))) inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Cofactor expansion, memoized over column subsets: no division, so it works
/// over polynomial entries. Practical up to roughly 16 columns.
template <class T>
T determinant(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return T(1);
  if (n > 20) throw std::invalid_argument("cofactor determinant limited to 20 columns");
  // minors[S] = det of the last |S| rows restricted to the columns in S.
  std::vector<T> minors(std::size_t{1} << n, T(0));
  minors[0] = T(1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    T acc(0);
    int position = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const T& entry = m(row, j);
      const T& sub = minors[mask & ~(1u << j)];
      if (!is_zero_entry(entry) && !is_zero_entry(sub)) {
        if (position % 2 == 0) {
          acc += entry * sub;
        } else {
          acc -= entry * sub;
        }
      }
      ++position;
    }
    minors[mask] = acc;
  }
  return minors[(1u << n) - 1];
}

/// Polynomial in one indeterminate (lambda) with coefficients in T, lowest degree first.
template <class T>
class Poly1 {
 public:
  Poly1() = default;
  Poly1(const T& c) : coeffs_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  Poly1(int c) : Poly1(T(c)) {}               // NOLINT(google-explicit-constructor)

  static Poly1 lambda() {
    Poly1 p;
    p.coeffs_ = {T(0), T(1)};
    return p;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  T coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : T(0);
  }
  bool is_zero() const { return coeffs_.empty(); }

  Poly1& operator+=(const Poly1& o) { return *this = *this + o; }
  Poly1& operator-=(const Poly1& o) { return *this = *this - o; }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) { return add(a, b, false); }
  friend Poly1 operator-(const Poly1& a, const Poly1& b) { return add(a, b, true); }
  friend Poly1 operator-(const Poly1& a) { return Poly1(0) - a; }

  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    Poly1 r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (is_zero_entry(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (!is_zero_entry(b.coeffs_[j])) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    r.trim();
    return r;
  }

 private:
  static Poly1 add(const Poly1& a, const Poly1& b, bool subtract) {
    Poly1 r;
    r.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
      if (subtract) {
        r.coeffs_[i] -= b.coeffs_[i];
      } else {
        r.coeffs_[i] += b.coeffs_[i];
      }
    }
    r.trim();
    return r;
  }

  void trim() {
    while (!coeffs_.empty() && is_zero_entry(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

template <class T>
bool is_zero_entry(const Poly1<T>& p) {
  return p.is_zero();
}

}  // namespace todalab
