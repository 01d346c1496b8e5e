#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/bar.hpp"
#include "ainf/category.hpp"
#include "ainf/coeff/linalg.hpp"

namespace ainf {

/// A nonzero residue of relation number `arity` on one input word.
struct RelationViolation {
  int arity = 0;
  Word word;
  Vec residue;
};

/// Residues of Σ_{j+k+l=n} (-1)^{jk+l} m_{j+1+l}(id^j ⊗ m_k ⊗ id^l) for all
/// n <= max_weight on every composable word. Empty iff the relations hold.
std::vector<RelationViolation> check_relations(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                               int max_weight);

/// Sign exponent s(i_1, ..., i_r) = Σ_{u>=2} (1 - i_u) Σ_{v<u} i_v.
int functor_sign(const std::vector<int>& arities);

/// Residues of the functor equations on every composable source word of
/// weight <= max_weight:
/// Σ (-1)^{jk+l} f_{j+1+l}(id^j ⊗ m_k ⊗ id^l) - Σ (-1)^{s(i)} m'_r(f_{i_1} ⊗ ... ⊗ f_{i_r}).
std::vector<RelationViolation> check_functor(const CategoryPresentation& source, const CategoryPresentation& target,
                                             const AInfFunctor& f, const MultiplicationFamily& m,
                                             const MultiplicationFamily& m_target, int max_weight);
/// The same check on the bar side: F∘d - d'∘F.
std::vector<RelationViolation> check_functor_bar(const CategoryPresentation& source,
                                                 const CategoryPresentation& target, const AInfFunctor& f,
                                                 const MultiplicationFamily& m,
                                                 const MultiplicationFamily& m_target, int max_weight);

/// (G∘F)_n = Σ_r Σ_{i_1+...+i_r=n} (-1)^{s(i)} G_r(F_{i_1} ⊗ ... ⊗ F_{i_r}) on
/// every composable source word of weight <= max_weight.
AInfFunctor compose_functors(const CategoryPresentation& source, const CategoryPresentation& middle,
                             const AInfFunctor& g, const AInfFunctor& f, int max_weight);

/// Opposite category: hom_op(X, Y) = hom(Y, X) with the same basis indices,
/// d^op_n(x_1..x_n) = (-1)^{n-1 + Σ_{p<q} sdeg x_p sdeg x_q} d_n(x_n..x_1).
AInfCategory opposite_category(const CategoryPresentation& cat, const MultiplicationFamily& m);

/// Splitting of every hom complex (C, m_1): F_1 : H -> C, G_1 : C -> H and
/// h_1 : C -> C of degree -1 with m_1 h_1 + h_1 m_1 = F_1 G_1 - id.
struct ContractionData {
  CategoryPresentation cohomology;  // basis of H
  MapTable f1;                      // H letter -> C vector
  MapTable g1;                      // C letter -> H vector
  MapTable h1;                      // C letter -> C vector
};

/// Cohomology category with its induced composition and the chosen
/// splitting (reduced-echelon canonical complement).
struct CohomologyCategory {
  AInfCategory h;  // graded category: only m_2
  ContractionData contraction;
};

/// Requires a field, or a PID where every cohomology module is free and the
/// splitting computed over the fraction field is integral; throws
/// PreconditionFailed with the torsion report otherwise.
CohomologyCategory cohomology_category(const CategoryPresentation& cat, const MultiplicationFamily& m);
/// Entries of m_1 h_1 + h_1 m_1 - F_1 G_1 + id that are nonzero (C letter -> residue).
MapTable contraction_defect(const CategoryPresentation& cat, const MultiplicationFamily& m,
                            const ContractionData& c);

struct ExpIsotopy {
  Cofunctor bar;      // exp(c) on the bar side
  AInfFunctor functor;  // desuspended components
  bool valid = false;   // [d, c] vanishes through the truncation
};

/// exp(c) for a degree 0 coderivation c vanishing on weight 1.
ExpIsotopy exp_coderivation(const CategoryPresentation& cat, const MultiplicationFamily& m, const Coderivation& c,
                            int max_weight);

/// m' = F∘d∘F^{-1} transported along an isotopy F, through max_weight.
MultiplicationFamily transport(const CategoryPresentation& cat, const MultiplicationFamily& m, const Cofunctor& f,
                               int max_weight);

/// Largest arity at which a nonzero m_i is possible at all: bounded when the
/// object graph has no cycles (chains are short) or the degree window rules
/// out degree 2 - i maps. nullopt when unbounded.
std::optional<int> degree_arity_bound(const CategoryPresentation& cat);

struct ValidityReport {
  bool valid = false;
  int max_arity = 0;        // highest nonzero m_i
  int checked_through = 0;  // relations verified for n <= checked_through
  /// All relations hold: m is finitely defined and every relation of
  /// weight > 2W - 1 is vacuous.
  bool weight_complete = false;
  std::vector<RelationViolation> violations;
};

/// Checks relations through max(max_weight, 2W - 1) where W is the highest
/// nonzero arity.
ValidityReport check_structure(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight);

}  // namespace ainf
