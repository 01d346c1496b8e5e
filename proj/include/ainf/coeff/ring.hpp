#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ainf/coeff/scalar.hpp"

namespace ainf::coeff {

enum class RingKind { rationals, integers, polynomials, rational_functions };

/// The base ring of a computation. Polynomials and rational functions are in
/// one variable over the rationals.
struct RingDescriptor {
  RingKind kind = RingKind::rationals;
  std::string variable = "ħ";

  static RingDescriptor rationals() { return {RingKind::rationals, "ħ"}; }
  static RingDescriptor integers() { return {RingKind::integers, "ħ"}; }
  static RingDescriptor polynomials(std::string var = "ħ") { return {RingKind::polynomials, std::move(var)}; }
  static RingDescriptor rational_functions(std::string var = "ħ") {
    return {RingKind::rational_functions, std::move(var)};
  }

  bool is_field() const { return kind == RingKind::rationals || kind == RingKind::rational_functions; }
  bool is_euclidean() const { return true; }
  /// Whether 1/n! makes sense (needed by exponentials of coderivations).
  bool contains_rationals() const { return kind != RingKind::integers; }
  bool has_variable() const { return kind == RingKind::polynomials || kind == RingKind::rational_functions; }
  bool contains(const Scalar& x) const;
  /// Fraction field: integers -> rationals, polynomials -> rational functions.
  RingDescriptor fraction_field() const;
  std::string name() const;
  std::string format(const Scalar& x) const { return x.to_string(variable); }
  Scalar parse(std::string_view text) const;

  friend bool operator==(const RingDescriptor& a, const RingDescriptor& b) {
    return a.kind == b.kind && (!a.has_variable() || a.variable == b.variable);
  }
  friend bool operator!=(const RingDescriptor& a, const RingDescriptor& b) { return !(a == b); }
};

/// Euclidean structure. Over a field every nonzero element has size 0 and
/// division is exact.
int euclidean_size(const RingDescriptor& ring, const Scalar& a);
std::pair<Scalar, Scalar> euclidean_divmod(const RingDescriptor& ring, const Scalar& a, const Scalar& b);
bool is_unit(const RingDescriptor& ring, const Scalar& a);
/// Unit u such that a*u is the canonical associate (positive integer, monic
/// polynomial, 1 over a field).
Scalar normalizing_unit(const RingDescriptor& ring, const Scalar& a);
/// a/b if b divides a in the ring.
std::optional<Scalar> exact_quotient(const RingDescriptor& ring, const Scalar& a, const Scalar& b);

enum class RingMapKind { identity, fraction_field_embedding, evaluation };

/// Ring homomorphism used for base change.
struct RingMap {
  RingDescriptor source;
  RingDescriptor target;
  RingMapKind kind = RingMapKind::identity;
  mpq_class point = 0;  // evaluation point

  static RingMap identity(const RingDescriptor& r) { return {r, r, RingMapKind::identity, 0}; }
  static RingMap fraction_field_embedding(const RingDescriptor& r);
  static RingMap evaluation(const RingDescriptor& r, mpq_class point);

  bool is_flat() const { return kind != RingMapKind::evaluation; }
  Scalar apply(const Scalar& x) const;
};

}  // namespace ainf::coeff
