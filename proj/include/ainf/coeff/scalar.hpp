#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

#include "ainf/coeff/poly.hpp"

namespace ainf::coeff {

/// Exact element of Q(var). Integers, rationals and polynomials are the
/// special cases with trivial denominator; which of them a value is allowed
/// to be is decided by the RingDescriptor it is used with.
///
/// Constants are stored inline as a single mpq; only genuinely
/// non-constant rational functions allocate a shared, immutable numerator
/// and denominator pair.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class v) : q_(std::move(v)) { q_.canonicalize(); }
  explicit Scalar(const Poly& p);
  /// num/den, normalised; throws on a zero denominator.
  static Scalar fraction(const Poly& num, const Poly& den);
  static Scalar variable() { return Scalar(Poly::variable()); }

  bool is_zero() const { return !f_ && q_ == 0; }
  bool is_one() const { return !f_ && q_ == 1; }
  bool is_constant() const { return !f_; }
  /// Valid only when is_constant().
  const mpq_class& constant() const { return q_; }
  bool is_polynomial() const;
  bool is_integer() const { return !f_ && q_.get_den() == 1; }

  Poly numerator() const;
  Poly denominator() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Exact string, e.g. "3/4", "ħ^2 - 1/2", "(ħ)/(ħ + 1)".
  std::string to_string(std::string_view var = "ħ") const;

 private:
  struct Fraction {
    Poly num;
    Poly den;  // monic, coprime to num, degree >= 0
  };
  static Scalar from_parts(Poly num, Poly den);

  mpq_class q_{0};
  std::shared_ptr<const Fraction> f_;
};

/// (-1)^parity as a Scalar.
inline Scalar sign(int parity) { return (parity & 1) ? Scalar(-1) : Scalar(1); }

/// Parses the exact coefficient syntax: rationals, the ring variable (or "h"),
/// + - * / ^ and parentheses. Throws SchemaError on malformed input.
Scalar parse_scalar(std::string_view text, std::string_view var = "ħ");

}  // namespace ainf::coeff
