#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "todalab/exact.hpp"

namespace todalab {

/// Monomial in the offset variables of a jet, stored as the sorted multiset of
/// its variable ids (1-based, one byte each, lowest byte first).
class Monomial {
 public:
  static constexpr int kMaxDegree = 8;
  static constexpr std::size_t kMaxVariables = 255;

  constexpr Monomial() = default;

  static Monomial variable(std::size_t k) {
    if (k >= kMaxVariables) throw std::out_of_range("jet variable index too large");
    return Monomial(static_cast<std::uint64_t>(k + 1));
  }

  int degree() const {
    return bits_ == 0 ? 0 : (64 - std::countl_zero(bits_) + 7) / 8;
  }

  std::uint64_t bits() const { return bits_; }

  /// Multiplicity of variable k.
  int count(std::size_t k) const {
    int n = 0;
    for (std::uint64_t b = bits_; b != 0; b >>= 8) {
      if ((b & 0xff) == k + 1) ++n;
    }
    return n;
  }

  /// Removes one occurrence of variable k (which must be present).
  Monomial without(std::size_t k) const {
    std::array<std::uint8_t, kMaxDegree> ids{};
    int n = unpack(ids.data());
    for (int i = 0; i < n; ++i) {
      if (ids[i] == k + 1) {
        std::copy(ids.begin() + i + 1, ids.begin() + n, ids.begin() + i);
        return pack(ids.data(), n - 1);
      }
    }
    return *this;
  }

  friend Monomial operator*(Monomial a, Monomial b) {
    std::array<std::uint8_t, kMaxDegree> x{};
    std::array<std::uint8_t, kMaxDegree> y{};
    std::array<std::uint8_t, 2 * kMaxDegree> z{};
    const int nx = a.unpack(x.data());
    const int ny = b.unpack(y.data());
    if (nx + ny > kMaxDegree) throw std::out_of_range("jet monomial degree exceeds 8");
    std::merge(x.begin(), x.begin() + nx, y.begin(), y.begin() + ny, z.begin());
    return pack(z.data(), nx + ny);
  }

  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }

  /// Graded order: total degree first.
  friend bool operator<(Monomial a, Monomial b) {
    const int da = a.degree();
    const int db = b.degree();
    return da != db ? da < db : a.bits_ < b.bits_;
  }

 private:
  explicit constexpr Monomial(std::uint64_t bits) : bits_(bits) {}

  int unpack(std::uint8_t* out) const {
    int n = 0;
    for (std::uint64_t b = bits_; b != 0; b >>= 8) out[n++] = static_cast<std::uint8_t>(b & 0xff);
    return n;
  }

  static Monomial pack(const std::uint8_t* ids, int n) {
    std::uint64_t bits = 0;
    for (int i = n - 1; i >= 0; --i) bits = (bits << 8) | ids[i];
    return Monomial(bits);
  }

  std::uint64_t bits_ = 0;
};

/// Truncated multivariate Taylor expansion f(x0 + eps) = sum_a c_a eps^a with
/// |a| <= order. An order-1 jet is the dual number (value plus one partial per
/// chart coordinate); higher orders stand in for nested duals. Constants carry
/// an unbounded order so they never truncate their partner in an operation.
template <class S>
class Jet {
 public:
  static constexpr int kUnbounded = 1 << 20;
  using Term = std::pair<Monomial, S>;

  Jet() = default;
  Jet(const S& c) {  // NOLINT(google-explicit-constructor)
    if (!todalab::is_zero(c)) terms_.emplace_back(Monomial{}, c);
  }
  Jet(int c) : Jet(S(c)) {}  // NOLINT(google-explicit-constructor)

  static Jet variable(const S& value, std::size_t k, int order) {
    Jet j(value);
    j.order_ = order;
    if (order >= 1) j.terms_.emplace_back(Monomial::variable(k), S(1));
    return j;
  }

  static Jet fraction(long num, long den) { return Jet(ScalarTraits<S>::fraction(num, den)); }
  static Jet from_rational(const Rational& r) { return Jet(ScalarTraits<S>::from_rational(r)); }

  int order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.degree() == 0);
  }
  const std::vector<Term>& terms() const { return terms_; }

  const S& value() const {
    static const S kZero(0);
    return (!terms_.empty() && terms_.front().first.degree() == 0) ? terms_.front().second : kZero;
  }

  S coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return t.first < key; });
    return (it != terms_.end() && it->first == m) ? it->second : S(0);
  }

  /// First partial derivative at the expansion point.
  S partial(std::size_t k) const { return coefficient(Monomial::variable(k)); }

  /// Jet of the partial derivative along coordinate k (one order lower).
  Jet derivative(std::size_t k) const {
    Jet r;
    r.order_ = order_ >= kUnbounded ? kUnbounded : order_ - 1;
    for (const auto& [m, c] : terms_) {
      const int n = m.count(k);
      if (n == 0) continue;
      r.terms_.emplace_back(m.without(k), c * n);
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    return r;
  }

  Jet truncated(int order) const {
    Jet r;
    r.order_ = std::min(order_, order);
    for (const auto& t : terms_) {
      if (t.first.degree() > r.order_) break;
      r.terms_.push_back(t);
    }
    return r;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  Jet& operator+=(const Jet& o) { return *this = combine(*this, o, false); }
  Jet& operator-=(const Jet& o) { return *this = combine(*this, o, true); }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, false); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, true); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.is_constant()) return scaled(b, a.terms_.front().second, r.order_);
    if (b.is_constant()) return scaled(a, b.terms_.front().second, r.order_);
    const int cap = r.order_;
    std::vector<Term> buf;
    buf.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_) {
      const int da = ma.degree();
      if (da > cap) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (da + mb.degree() > cap) break;
        buf.emplace_back(ma * mb, ca * cb);
      }
    }
    std::sort(buf.begin(), buf.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : buf) {
      if (!r.terms_.empty() && r.terms_.back().first == t.first) {
        r.terms_.back().second += t.second;
      } else {
        if (!r.terms_.empty() && todalab::is_zero(r.terms_.back().second)) r.terms_.pop_back();
        r.terms_.push_back(std::move(t));
      }
    }
    if (!r.terms_.empty() && todalab::is_zero(r.terms_.back().second)) r.terms_.pop_back();
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet reciprocal(const Jet& b) {
    const S c = b.value();
    if (todalab::is_zero(c)) throw std::domain_error("division by a jet with zero value");
    const S inv = S(1) / c;
    if (b.is_constant()) return Jet(inv);
    Jet u = -(b - Jet(c)) * Jet(inv);
    Jet sum(S(1));
    Jet power(S(1));
    for (int m = 1; m <= u.order_; ++m) {
      power = power * u;
      if (power.is_zero()) break;
      sum += power;
    }
    sum.order_ = b.order_;
    return sum * Jet(inv);
  }

  friend Jet exp(const Jet& b) {
    const S c = b.value();
    const S base = todalab::is_zero(c) ? S(1) : ScalarTraits<S>::exp(c);
    Jet h = b - Jet(c);
    Jet sum(S(1));
    Jet power(S(1));
    for (int m = 1; m <= h.order_ && !h.is_zero(); ++m) {
      power = power * h * Jet(S(1) / S(m));
      if (power.is_zero()) break;
      sum += power;
    }
    sum.order_ = b.order_;
    return sum * Jet(base);
  }

  /// Principal square root; the value must be positive.
  friend Jet sqrt(const Jet& b) {
    const S c = b.value();
    if (!(to_double(c) > 0.0)) throw std::domain_error("sqrt of a jet with non-positive value");
    const S root = ScalarTraits<S>::sqrt(c);
    Jet u = (b - Jet(c)) * Jet(S(1) / c);
    Jet sum(S(1));
    Jet power(S(1));
    S binom(1);
    for (int m = 1; m <= u.order_ && !u.is_zero(); ++m) {
      binom = binom * (ScalarTraits<S>::fraction(1, 2) - S(m - 1)) / S(m);
      power = power * u;
      if (power.is_zero()) break;
      sum += power * Jet(binom);
    }
    sum.order_ = b.order_;
    return sum * Jet(root);
  }

  friend Jet pow(const Jet& b, int n) {
    if (n < 0) return pow(reciprocal(b), -n);
    Jet r(S(1));
    r.order_ = b.order_;
    for (int i = 0; i < n; ++i) r = r * b;
    return r;
  }

 private:
  static Jet scaled(const Jet& a, const S& s, int order) {
    Jet r;
    r.order_ = order;
    if (todalab::is_zero(s)) return r;
    for (const auto& [m, c] : a.terms_) {
      if (m.degree() > order) break;
      r.terms_.emplace_back(m, c * s);
    }
    return r;
  }

  static Jet combine(const Jet& a, const Jet& b, bool subtract) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    const int cap = r.order_;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        if (ia->first.degree() > cap) break;
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        if (ib->first.degree() > cap) break;
        r.terms_.emplace_back(ib->first, subtract ? S(-ib->second) : ib->second);
        ++ib;
      } else {
        if (ia->first.degree() > cap) break;
        S c = subtract ? S(ia->second - ib->second) : S(ia->second + ib->second);
        if (!todalab::is_zero(c)) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  int order_ = kUnbounded;
  std::vector<Term> terms_;
};

template <class S>
const S& value_of(const Jet<S>& j) {
  return j.value();
}

}  // namespace todalab
