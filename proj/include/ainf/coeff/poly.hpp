#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ainf::coeff {

/// Univariate polynomial over the rationals. Coefficient i multiplies var^i.
/// Always trimmed: the leading coefficient is nonzero, the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(mpq_class constant);
  explicit Poly(std::vector<mpq_class> coeffs);

  static Poly monomial(mpq_class c, int exponent);
  static Poly variable() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  mpq_class coeff(int i) const;
  const mpq_class& leading() const { return c_.back(); }
  mpq_class constant_term() const { return c_.empty() ? mpq_class(0) : c_[0]; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& s) const;
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly monic() const;
  mpq_class evaluate(const mpq_class& x) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string(std::string_view var) const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

/// Monic gcd (zero if both inputs are zero).
Poly gcd(Poly a, Poly b);

}  // namespace ainf::coeff
