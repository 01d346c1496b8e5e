#pragma once

#include <map>
#include <string>
#include <vector>

#include "ainf/coeff/scalar.hpp"

namespace ainf {

using coeff::Scalar;

/// A tensor word of basis indices in paper order: word[0] is the last arrow
/// of the composable chain, word.back() the first.
using Word = std::vector<int>;
/// Linear combination of basis elements.
using Vec = std::map<int, Scalar>;
/// Linear combination of words.
using TensorVec = std::map<Word, Scalar>;
/// Sparse multilinear map: input word -> output vector.
using MapTable = std::map<Word, Vec>;

struct BasisElement {
  std::string name;
  int degree = 0;
  int source = 0;
  int target = 0;
};

/// All basis elements of all hom spaces, indexed globally.
struct GradedBasis {
  std::vector<BasisElement> elements;

  int size() const { return static_cast<int>(elements.size()); }
  const BasisElement& operator[](int i) const { return elements[static_cast<size_t>(i)]; }
  int degree(int i) const { return elements[static_cast<size_t>(i)].degree; }
  int shifted_degree(int i) const { return degree(i) - 1; }
  int source(int i) const { return elements[static_cast<size_t>(i)].source; }
  int target(int i) const { return elements[static_cast<size_t>(i)].target; }
  int word_degree(const Word& w) const;
  int word_shifted_degree(const Word& w) const;
  bool composable(const Word& w) const;
  /// Source object of the chain (source of w.back()).
  int word_source(const Word& w) const { return source(w.back()); }
  int word_target(const Word& w) const { return target(w.front()); }
  std::string word_name(const Word& w) const;
};

/// A homogeneous multilinear map. The degree is with respect to whichever
/// grading (plain or shifted) the map is declared on.
struct GradedMap {
  int degree = 0;
  MapTable table;
  bool is_zero() const { return table.empty(); }
  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.degree == b.degree && a.table == b.table;
  }
};

void add_to(Vec& v, int index, const Scalar& c);
void add_scaled(Vec& v, const Vec& w, const Scalar& c);
void add_to(TensorVec& v, const Word& w, const Scalar& c);
void add_scaled(TensorVec& v, const TensorVec& w, const Scalar& c);
void add_to(MapTable& t, const Word& w, int out, const Scalar& c);
void add_scaled(MapTable& t, const MapTable& u, const Scalar& c);
MapTable scaled(const MapTable& t, const Scalar& c);
/// Removes empty rows.
void prune(MapTable& t);

/// Entries of `m` violating the declared degree: deg(out) - deg(word) must
/// equal m.degree. `shifted` selects the grading.
std::vector<Word> degree_violations(const GradedBasis& basis, const GradedMap& m, bool shifted);

/// Parity of the Koszul sign produced by applying (s^{-1})^{⊗n} to a shifted
/// word: sum over p of (n-1-p) * sdeg(w_p).
int desuspension_parity(const GradedBasis& basis, const Word& w);

/// d_i = -s∘m_i∘(s^{-1})^{⊗i}, as a degree 1 map on shifted words. The input
/// must have degree 2 - i for its arity i; throws otherwise.
GradedMap suspend_multiplication(const GradedBasis& basis, const GradedMap& m, int arity);
/// Inverse of suspend_multiplication.
GradedMap desuspend_multiplication(const GradedBasis& basis, const GradedMap& d, int arity);

/// One tensor factor in a Koszul evaluation: a map of fixed arity, or the
/// identity on `arity` letters when `map` is null.
struct Factor {
  int arity = 1;
  const GradedMap* map = nullptr;
};

/// (f_1 ⊗ ... ⊗ f_k)(w) with the Koszul rule
/// (f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y). Degrees of the letters are
/// plain or shifted according to `shifted`. Throws if arities do not sum to
/// the word length.
TensorVec koszul_evaluate(const GradedBasis& basis, const std::vector<Factor>& factors, const Word& w,
                          bool shifted);
/// Linear extension of koszul_evaluate.
TensorVec koszul_evaluate(const GradedBasis& basis, const std::vector<Factor>& factors, const TensorVec& v,
                          bool shifted);

}  // namespace ainf
