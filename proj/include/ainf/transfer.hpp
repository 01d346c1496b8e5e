#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ainf/acat.hpp"

namespace ainf {

/// Minimal structure on cohomology with the quasi-isomorphism F : H -> C.
struct MinimalModel {
  AInfCategory h;        // m_1 = 0
  AInfFunctor f;         // F_1 is the chosen inclusion of cohomology
  ContractionData contraction;
  /// One line per arity: number of input words and nonzero outputs.
  std::vector<std::string> provenance;
};

/// Splitting C = H ⊕ B ⊕ d(B) per hom space, h = -d^{-1} on d(B) and zero on
/// H ⊕ B. Requires m supported in arities {1, 2}.
ContractionData contraction_from_dg(const CategoryPresentation& cat, const MultiplicationFamily& m);

/// Tree transfer through max_weight. On the bar side, with h~ = -h,
///   F~_n = h~ d~_2 Φ_n,  m~_n = G~ d~_2 Φ_n,  Φ_n(w) = Σ_i F~_i(w[0..i)) ⊗ F~_{n-i}(w[i..)),
/// which is the sum over planar binary trees with h on internal edges.
MinimalModel transfer(const CategoryPresentation& cat, const MultiplicationFamily& m,
                      const ContractionData& contraction, int max_weight);
/// contraction_from_dg followed by transfer.
MinimalModel minimal_model(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight);

/// The inductive formulas on the unshifted side:
///   F_i = Σ_{r>1} Σ (-1)^{s(i_1..i_r)} h_1 m_r (F_{i_1} ⊗ ... ⊗ F_{i_r}),
///   m_i = Σ_{r>1} Σ (-1)^{s(i_1..i_r)} G_1 m_r (F_{i_1} ⊗ ... ⊗ F_{i_r}),
/// evaluated with Koszul signs. Used to cross-check transfer.
MinimalModel transfer_inductive(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                const ContractionData& contraction, int max_weight);

/// Triple product ⟨a, b, c⟩ of cohomology classes (vectors in the basis of H).
struct MasseyProduct {
  bool defined = false;
  std::string reason;        // when undefined
  Vec representative;        // cocycle in C
  Vec value;                 // its class in H
  std::vector<Vec> indeterminacy;  // spanning set in H: a·H + H·c
};

/// With ā = (-1)^{1+|a|} a, choose u = -h(ā b), v = -h(b̄ c), so d u = ā b and
/// d v = b̄ c, and return [ā v + ū c]. Undefined unless [a][b] = 0 = [b][c].
/// The classes must compose: c then b then a.
MasseyProduct massey_oracle(const CategoryPresentation& cat, const MultiplicationFamily& m,
                            const ContractionData& contraction, const Vec& a, const Vec& b, const Vec& c);

/// Whether x - y lies in the span of `span` (all vectors in H).
bool equal_modulo(const Vec& x, const Vec& y, const std::vector<Vec>& span, int dim);

}  // namespace ainf
