#pragma once

#include <utility>
#include <vector>

#include "ainf/category.hpp"

namespace ainf {

/// Coderivation of the reduced tensor cocategory of the shifted category,
/// stored by its cogenerating components: word (any weight) -> single
/// shifted letter. Degrees are shifted degrees.
struct Coderivation {
  int degree = 0;
  MapTable comps;

  bool is_zero() const;
  /// Component restricted to input words of the given weight.
  MapTable weight_part(int weight) const;
  /// Lowest / highest input weight with a nonzero entry; 0 if zero.
  int min_weight() const;
  int max_weight() const;
  Coderivation truncated(int max_weight) const;
  void normalize() { prune(comps); }

  friend Coderivation operator+(const Coderivation& a, const Coderivation& b);
  friend Coderivation operator-(const Coderivation& a, const Coderivation& b);
  friend Coderivation operator*(const Scalar& c, const Coderivation& a);
  friend bool operator==(const Coderivation& a, const Coderivation& b);
};

/// Degree 0 cocategory morphism of bar constructions, stored by components
/// word -> single letter. Weight-1 components are stored explicitly (the
/// identity cofunctor has components w -> w on letters).
struct Cofunctor {
  std::vector<int> object_map;
  MapTable comps;

  static Cofunctor identity(const CategoryPresentation& cat);
  Cofunctor truncated(int max_weight) const;
  friend bool operator==(const Cofunctor& a, const Cofunctor& b);
};

/// Δ(w) = Σ_{i=1}^{n-1} w[0..i) ⊗ w[i..n): proper splits in tensor order.
std::vector<std::pair<Word, Word>> comultiplication_split(const Word& w);

/// Full action of the coderivation on a word:
/// Σ (-1)^{|D| sdeg(w[0..j))} w[0..j) ⊗ D(w[j..j+k)) ⊗ w[j+k..).
TensorVec extend_coderivation(const GradedBasis& basis, const Coderivation& d, const Word& w);
TensorVec extend_coderivation(const GradedBasis& basis, const Coderivation& d, const TensorVec& v);
/// Full action of a cofunctor: Σ over compositions F_{i1} ⊗ ... ⊗ F_{ir}.
TensorVec extend_cofunctor(const Cofunctor& f, const Word& w);
TensorVec extend_cofunctor(const Cofunctor& f, const TensorVec& v);

/// Weight-1 projection of a tensor vector.
Vec project(const TensorVec& v);
/// Applies components (word -> letter) to a tensor vector.
Vec apply_components(const MapTable& comps, const TensorVec& v);

/// d with components d_i = suspend(m_i).
Coderivation bar_codifferential(const GradedBasis& basis, const MultiplicationFamily& m);
/// Inverse of bar_codifferential.
MultiplicationFamily multiplications_from_bar(const GradedBasis& basis, const Coderivation& d);

/// Components of a∘b on all composable input words of weight <= max_weight.
/// Support-based: only words reachable from entries of a and b are visited.
MapTable compose_components(const GradedBasis& basis, const Coderivation& a, const Coderivation& b,
                            int max_weight);
/// [a, b] = a∘b - (-1)^{|a||b|} b∘a, through weight max_weight.
Coderivation coderivation_bracket(const GradedBasis& basis, const Coderivation& a, const Coderivation& b,
                                  int max_weight);
/// Reference implementation of the bracket by per-word evaluation over all
/// composable words; used to cross-check the support-based version.
Coderivation coderivation_bracket_bruteforce(const CategoryPresentation& cat, const Coderivation& a,
                                             const Coderivation& b, int max_weight);
/// Composable words w of weight <= max_weight with D(D(w)) != 0, evaluated
/// on the full tensor word by word.
std::vector<Word> square_violations(const CategoryPresentation& cat, const Coderivation& d, int max_weight);

/// Components of outer∘X where X is the extension along the cofunctor
/// `along` (identity when null) of the coderivation components `inner`:
/// X = Σ along ⊗ ... ⊗ inner ⊗ ... ⊗ along. With `inner` null, X is the
/// cofunctor `along` itself. Only input words of weight <= max_weight are
/// produced. Support-based: enumerates preimages of entries of `outer`.
MapTable compose_support(const GradedBasis& basis, const MapTable& outer, const MapTable* inner, int inner_degree,
                         const MapTable* along, int max_weight);

/// (g∘f) components on input words of weight <= max_weight. `middle` is the
/// basis of the target of f.
Cofunctor compose_cofunctors(const GradedBasis& middle, const Cofunctor& g, const Cofunctor& f, int max_weight);
/// Inverse of a cofunctor whose weight-1 part is the identity.
Cofunctor inverse_isotopy(const CategoryPresentation& cat, const Cofunctor& f, int max_weight);
/// exp(c) = Σ c^k / k! for a degree-0 coderivation vanishing on weight 1.
Cofunctor exp_cofunctor(const CategoryPresentation& cat, const Coderivation& c, int max_weight);
/// Components of f∘D∘g (g typically the inverse of f): the transport of a
/// coderivation along an isotopy.
Coderivation conjugate(const CategoryPresentation& cat, const Cofunctor& f, const Coderivation& d,
                       const Cofunctor& g, int max_weight);
/// Components of f∘d_source - d_target∘f for words of weight <= max_weight.
MapTable cofunctor_defect(const GradedBasis& source, const GradedBasis& target, const Cofunctor& f,
                          const Coderivation& d_source, const Coderivation& d_target, int max_weight);

/// Bar-side functor components: F~_i = s∘f_i∘(s^{-1})^{⊗i}.
Cofunctor suspend_functor(const GradedBasis& source, const AInfFunctor& f);
AInfFunctor desuspend_functor(const GradedBasis& source, const Cofunctor& f);

}  // namespace ainf
