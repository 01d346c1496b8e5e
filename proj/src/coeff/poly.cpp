#include "ainf/coeff/poly.hpp"

#include <sstream>

#include "ainf/error.hpp"

namespace ainf::coeff {

Poly::Poly(mpq_class constant) {
  constant.canonicalize();
  if (constant != 0) c_.push_back(std::move(constant));
}

Poly::Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(mpq_class c, int exponent) {
  if (c == 0) return {};
  std::vector<mpq_class> v(static_cast<size_t>(exponent) + 1, mpq_class(0));
  v.back() = std::move(c);
  Poly p;
  p.c_ = std::move(v);
  return p;
}

void Poly::trim() {
  for (auto& x : c_) x.canonicalize();
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<size_t>(i)];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<mpq_class> r(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Poly(std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly Poly::scaled(const mpq_class& s) const {
  if (s == 0) return {};
  Poly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw Error("polynomial division by zero");
  Poly rem = *this;
  if (rem.degree() < divisor.degree()) return {Poly{}, rem};
  std::vector<mpq_class> q(static_cast<size_t>(rem.degree() - divisor.degree() + 1), mpq_class(0));
  const mpq_class& lead = divisor.leading();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    int shift = rem.degree() - divisor.degree();
    mpq_class factor = rem.leading() / lead;
    q[static_cast<size_t>(shift)] = factor;
    for (size_t i = 0; i < divisor.c_.size(); ++i) rem.c_[i + static_cast<size_t>(shift)] -= factor * divisor.c_[i];
    rem.trim();
  }
  return {Poly(std::move(q)), rem};
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return scaled(mpq_class(1) / leading());
}

mpq_class Poly::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (i == 0 || !unit) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace ainf::coeff
