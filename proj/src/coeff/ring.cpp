#include "ainf/coeff/ring.hpp"

#include <limits>

#include "ainf/error.hpp"

namespace ainf::coeff {

bool RingDescriptor::contains(const Scalar& x) const {
  switch (kind) {
    case RingKind::rationals: return x.is_constant();
    case RingKind::integers: return x.is_integer();
    case RingKind::polynomials: return x.is_polynomial();
    case RingKind::rational_functions: return true;
  }
  return false;
}

RingDescriptor RingDescriptor::fraction_field() const {
  switch (kind) {
    case RingKind::integers: return rationals();
    case RingKind::polynomials: return rational_functions(variable);
    default: return *this;
  }
}

std::string RingDescriptor::name() const {
  switch (kind) {
    case RingKind::rationals: return "rationals";
    case RingKind::integers: return "integers";
    case RingKind::polynomials: return "poly(" + variable + ")";
    case RingKind::rational_functions: return "ratfunc(" + variable + ")";
  }
  return "?";
}

Scalar RingDescriptor::parse(std::string_view text) const {
  Scalar v = parse_scalar(text, variable);
  if (!contains(v)) throw SchemaError("coefficient '" + std::string(text) + "' does not lie in " + name());
  return v;
}

int euclidean_size(const RingDescriptor& ring, const Scalar& a) {
  if (a.is_zero()) return -1;
  switch (ring.kind) {
    case RingKind::integers: {
      mpz_class m = abs(a.constant().get_num());
      // sizes only need to be comparable; saturate large values
      return m.fits_sint_p() ? static_cast<int>(m.get_si()) : std::numeric_limits<int>::max();
    }
    case RingKind::polynomials: return a.numerator().degree();
    default: return 0;
  }
}

std::pair<Scalar, Scalar> euclidean_divmod(const RingDescriptor& ring, const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error("euclidean division by zero");
  switch (ring.kind) {
    case RingKind::integers: {
      mpz_class an = a.constant().get_num(), bn = b.constant().get_num();
      mpz_class q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), an.get_mpz_t(), bn.get_mpz_t());
      return {Scalar(mpq_class(q)), Scalar(mpq_class(r))};
    }
    case RingKind::polynomials: {
      auto [q, r] = a.numerator().divmod(b.numerator());
      return {Scalar(q), Scalar(r)};
    }
    default: return {a / b, Scalar()};
  }
}

bool is_unit(const RingDescriptor& ring, const Scalar& a) {
  if (a.is_zero()) return false;
  switch (ring.kind) {
    case RingKind::integers: return abs(a.constant()) == 1;
    case RingKind::polynomials: return a.is_constant();
    default: return true;
  }
}

Scalar normalizing_unit(const RingDescriptor& ring, const Scalar& a) {
  if (a.is_zero()) return Scalar(1);
  switch (ring.kind) {
    case RingKind::integers: return Scalar(a.constant() < 0 ? -1 : 1);
    case RingKind::polynomials: return Scalar(mpq_class(1) / a.numerator().leading());
    default: return Scalar(1) / a;
  }
}

std::optional<Scalar> exact_quotient(const RingDescriptor& ring, const Scalar& a, const Scalar& b) {
  if (b.is_zero()) {
    if (a.is_zero()) return Scalar();
    return std::nullopt;
  }
  Scalar q = a / b;
  if (!ring.contains(q)) return std::nullopt;
  return q;
}

RingMap RingMap::fraction_field_embedding(const RingDescriptor& r) {
  return {r, r.fraction_field(), RingMapKind::fraction_field_embedding, 0};
}

RingMap RingMap::evaluation(const RingDescriptor& r, mpq_class point) {
  if (!r.has_variable()) throw UnsupportedRing("evaluation needs a ring with a variable, got " + r.name());
  return {r, RingDescriptor::rationals(), RingMapKind::evaluation, std::move(point)};
}

Scalar RingMap::apply(const Scalar& x) const {
  switch (kind) {
    case RingMapKind::identity:
    case RingMapKind::fraction_field_embedding: return x;
    case RingMapKind::evaluation: {
      if (x.is_constant()) return x;
      mpq_class den = x.denominator().evaluate(point);
      if (den == 0) throw Error("evaluation at a pole of " + x.to_string(source.variable));
      return Scalar(mpq_class(x.numerator().evaluate(point) / den));
    }
  }
  return x;
}

}  // namespace ainf::coeff
