#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schober/matrix.hpp"

namespace schober {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::Overflow, "exponent overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw Error(ErrorCode::Overflow, "exponent overflow in " + std::to_string(a) + " - " + std::to_string(b));
  }
  return out;
}

/// Integer Laurent polynomial in one character t. Zero coefficients are never stored.
class LaurentPoly {
 public:
  using Terms = std::map<std::int64_t, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(Terms terms) {
    for (auto& [e, c] : terms) add_term(e, c);
  }

  static LaurentPoly monomial(std::int64_t exponent, Integer coeff = 1) {
    LaurentPoly p;
    p.add_term(exponent, coeff);
    return p;
  }

  /// 1 - t^k
  static LaurentPoly one_minus_power(std::int64_t k) {
    LaurentPoly p = monomial(0);
    p.add_term(k, -1);
    return p;
  }

  void add_term(std::int64_t exponent, const Integer& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Integer coefficient(std::int64_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Integer(0) : it->second;
  }
  // Callers check is_zero() first.
  std::int64_t min_exponent() const { return terms_.begin()->first; }
  std::int64_t max_exponent() const { return terms_.rbegin()->first; }
  std::int64_t span() const { return is_zero() ? 0 : checked_sub(max_exponent(), min_exponent()); }

  LaurentPoly shifted(std::int64_t k) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_.emplace(checked_add(e, k), c);
    return p;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
    return a;
  }
  friend LaurentPoly operator*(const Integer& k, LaurentPoly a) {
    if (k == 0) return {};
    for (auto& [e, c] : a.terms_) c *= k;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) p.add_term(checked_add(ea, eb), ca * cb);
    return p;
  }

 private:
  Terms terms_;
};

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    Integer mag = c < 0 ? Integer(-c) : c;
    s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (e == 0) {
      s += mag.str();
      continue;
    }
    if (mag != 1) s += mag.str() + "*";
    s += e == 1 ? "t" : "t^" + std::to_string(e);
  }
  return s;
}

/// Closed range of exponents [lo, hi]. Empty when hi < lo.
struct ExponentWindow {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  static ExponentWindow of_length(std::int64_t lo, std::int64_t length) {
    return {lo, checked_sub(checked_add(lo, length), 1)};
  }
  std::int64_t length() const { return hi < lo ? 0 : checked_add(checked_sub(hi, lo), 1); }
  bool contains(std::int64_t e) const { return lo <= e && e <= hi; }
  friend bool operator==(const ExponentWindow&, const ExponentWindow&) = default;
};

/// Representative of p modulo (modulus) supported in the window. The modulus must
/// have leading and trailing coefficients +-1, and the window must have exactly
/// span(modulus) exponents; reduction is then a bijection from any such window.
inline LaurentPoly laurent_reduce(LaurentPoly p, const LaurentPoly& modulus, const ExponentWindow& window) {
  if (modulus.is_zero()) throw Error(ErrorCode::BadModulus, "zero modulus");
  const Integer& lead = modulus.terms().rbegin()->second;
  const Integer& trail = modulus.terms().begin()->second;
  if (abs(lead) != 1 || abs(trail) != 1) {
    throw Error(ErrorCode::BadModulus, "extreme coefficients of " + to_string(modulus) + " must be +-1");
  }
  if (window.length() != modulus.span()) {
    throw Error(ErrorCode::DimensionMismatch, "window has " + std::to_string(window.length()) +
                                                  " exponents, modulus spans " + std::to_string(modulus.span()));
  }
  const std::int64_t top = modulus.max_exponent();
  const std::int64_t bottom = modulus.min_exponent();

  // Subtract multiples of the modulus from above; new terms stay >= window.lo.
  while (!p.is_zero() && p.max_exponent() > window.hi) {
    const std::int64_t e = p.max_exponent();
    const Integer q = p.coefficient(e) * lead;  // lead = +-1, so q / lead = q * lead
    p = p - q * modulus.shifted(checked_sub(e, top));
  }
  while (!p.is_zero() && p.min_exponent() < window.lo) {
    const std::int64_t e = p.min_exponent();
    const Integer q = p.coefficient(e) * trail;
    p = p - q * modulus.shifted(checked_sub(e, bottom));
  }
  return p;
}

/// Coefficient vector of p over the exponents of a window; p must be supported there.
inline Matrix coefficient_column(const LaurentPoly& p, const ExponentWindow& window) {
  Matrix col(static_cast<std::size_t>(window.length()), 1);
  for (const auto& [e, c] : p.terms()) {
    if (!window.contains(e)) {
      throw Error(ErrorCode::DimensionMismatch, "term t^" + std::to_string(e) + " lies outside the window");
    }
    col(static_cast<std::size_t>(e - window.lo), 0) = Rational(c);
  }
  return col;
}

inline LaurentPoly from_coefficients(const Matrix& column, std::int64_t lo) {
  LaurentPoly p;
  for (std::size_t r = 0; r < column.rows(); ++r) {
    p.add_term(checked_add(lo, static_cast<std::int64_t>(r)), to_integer(column(r, 0)));
  }
  return p;
}

/// Matrix of "reduce modulo modulus" from the monomial basis of one window to that
/// of another; column j is the reduction of t^(from.lo + j).
inline Matrix reduction_matrix(const LaurentPoly& modulus, const ExponentWindow& from, const ExponentWindow& to) {
  Matrix m(static_cast<std::size_t>(to.length()), static_cast<std::size_t>(from.length()));
  for (std::int64_t j = 0; j < from.length(); ++j) {
    LaurentPoly r = laurent_reduce(LaurentPoly::monomial(from.lo + j), modulus, to);
    for (const auto& [e, c] : r.terms()) m(static_cast<std::size_t>(e - to.lo), static_cast<std::size_t>(j)) = Rational(c);
  }
  return m;
}

}  // namespace schober
