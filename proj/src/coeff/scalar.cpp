#include "ainf/coeff/scalar.hpp"

#include <cctype>

#include "ainf/error.hpp"

namespace ainf::coeff {

Scalar::Scalar(const Poly& p) {
  if (p.is_constant()) {
    q_ = p.constant_term();
  } else {
    f_ = std::make_shared<const Fraction>(Fraction{p, Poly(mpq_class(1))});
  }
}

Scalar Scalar::from_parts(Poly num, Poly den) {
  if (den.is_zero()) throw Error("division by zero");
  if (num.is_zero()) return Scalar();
  Poly g = den.degree() == 0 ? den : gcd(num, den);
  if (g.degree() > 0) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  mpq_class lead = den.leading();
  num = num.scaled(mpq_class(1) / lead);
  den = den.scaled(mpq_class(1) / lead);
  if (den.degree() == 0 && num.is_constant()) return Scalar(num.constant_term());
  Scalar s;
  s.f_ = std::make_shared<const Fraction>(Fraction{std::move(num), std::move(den)});
  return s;
}

Scalar Scalar::fraction(const Poly& num, const Poly& den) { return from_parts(num, den); }

bool Scalar::is_polynomial() const { return !f_ || f_->den.degree() == 0; }

Poly Scalar::numerator() const { return f_ ? f_->num : Poly(q_); }

Poly Scalar::denominator() const { return f_ ? f_->den : Poly(mpq_class(1)); }

Scalar Scalar::operator-() const {
  if (!f_) return Scalar(mpq_class(-q_));
  Scalar s;
  s.f_ = std::make_shared<const Fraction>(Fraction{-f_->num, f_->den});
  return s;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (!a.f_ && !b.f_) return Scalar(mpq_class(a.q_ + b.q_));
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Poly an = a.numerator(), ad = a.denominator(), bn = b.numerator(), bd = b.denominator();
  if (ad == bd) return Scalar::from_parts(an + bn, ad);
  return Scalar::from_parts(an * bd + bn * ad, ad * bd);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (!a.f_ && !b.f_) return Scalar(mpq_class(a.q_ * b.q_));
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (!a.f_) {
    Scalar s;
    s.f_ = std::make_shared<const Scalar::Fraction>(Scalar::Fraction{b.f_->num.scaled(a.q_), b.f_->den});
    return s;
  }
  if (!b.f_) return b * a;
  return Scalar::from_parts(a.f_->num * b.f_->num, a.f_->den * b.f_->den);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw Error("division by zero");
  if (!a.f_ && !b.f_) return Scalar(mpq_class(a.q_ / b.q_));
  return Scalar::from_parts(a.numerator() * b.denominator(), a.denominator() * b.numerator());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.f_ && !b.f_) return a.q_ == b.q_;
  if (!a.f_ || !b.f_) return false;
  return a.f_->num == b.f_->num && a.f_->den == b.f_->den;
}

std::string Scalar::to_string(std::string_view var) const {
  if (!f_) return q_.get_str();
  if (f_->den.degree() == 0) return f_->num.to_string(var);
  return "(" + f_->num.to_string(var) + ")/(" + f_->den.to_string(var) + ")";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw SchemaError("cannot parse coefficient '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip();
    if (!w.empty() && s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar acc;
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  Scalar term() {
    Scalar acc = power();
    for (;;) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        Scalar d = power();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        skip();
        // implicit multiplication: "2ħ", "3(ħ+1)"
        if (pos_ < s_.size() && (s_[pos_] == '(' || starts_variable())) acc *= power();
        else return acc;
      }
    }
  }

  bool starts_variable() const {
    return s_.substr(pos_, var_.size()) == var_ || (pos_ < s_.size() && s_[pos_] == 'h');
  }

  Scalar power() {
    Scalar base = atom();
    if (eat('^')) {
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      Scalar r(1);
      for (int i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }

  Scalar atom() {
    skip();
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat_word(var_) || eat_word("h")) return Scalar::variable();
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number, variable or '('");
    return Scalar(mpq_class(std::string(s_.substr(start, pos_ - start))));
  }

  std::string_view s_;
  std::string_view var_;
  size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, std::string_view var) { return Parser(text, var).parse(); }

}  // namespace ainf::coeff
