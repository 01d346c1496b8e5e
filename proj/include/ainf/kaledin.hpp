#pragma once

#include <optional>
#include <vector>

#include "ainf/hochschild.hpp"

namespace ainf {

/// k = d_3 + 2 d_4 + ... + (W-2) d_W, truncated at weight W.
struct KaledinClass {
  Coderivation cochain;  // degree 1
  int truncation = 0;
  bool closed = false;  // [d, k] = 0 through the truncation
  bool in_w2 = false;   // vanishes on weight 1
  coeff::ModuleInvariants ambient;  // HH² through the truncation
  /// Whether k = [d, τ] for some degree 0 τ vanishing on weight 1, in
  /// CC / W_{>W}.
  bool vanishes = false;
  std::optional<Coderivation> primitive;
  std::optional<coeff::UnsolvableCertificate> certificate;
};

/// Requires m_1 = 0 and a ring containing the rationals.
KaledinClass kaledin_cochain(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight,
                             bool with_ambient = true);
/// Just the cochain Σ (n-2) d_n of a bar codifferential, through max_weight.
Coderivation kaledin_components(const Coderivation& d, int max_weight);

/// The linear problem [d_2, ψ] = d_{n+1} between pure-weight slices.
struct SliceEquation {
  int weight = 0;  // n + 1
  std::vector<CochainCell> unknowns;  // degree 0, weight n
  std::vector<CochainCell> equations;  // degree 1, weight n + 1
  coeff::ExactMatrix matrix;
  coeff::Column rhs;
};

struct ObstructionVerdict {
  SliceEquation equation;
  bool vanishes = false;
  std::optional<Coderivation> primitive;
  std::optional<coeff::UnsolvableCertificate> certificate;
  /// Solvable over the fraction field but not over the ring.
  bool denominator_only = false;
};

/// [m_{n+1}] in HH²(C, m_2) for a minimal structure with m_3 = ... = m_n = 0.
ObstructionVerdict obstruction_class(const CategoryPresentation& cat, const MultiplicationFamily& m, int n);

struct Gauge {
  int weight = 0;
  Coderivation tau;  // degree 0, pure weight
};

struct FormalityCertificate {
  std::vector<Gauge> gauges;  // in order of application
  /// exp(τ_last) ∘ ... ∘ exp(τ_first) : (C, m) -> (C, m_final).
  Cofunctor isotopy;
  MultiplicationFamily result;  // m_3 = ... = m_W = 0
  int checked_through = 0;
  /// The arity bound of the category is at most W, so no component beyond
  /// the truncation can appear.
  bool unconditional = false;
};

struct NonFormalityWitness {
  int weight = 0;  // n + 1: first weight that cannot be removed
  std::vector<Gauge> gauges;  // applied before the obstruction
  MapTable obstruction;       // m_{n+1} of the gauged structure
  ObstructionVerdict verdict;  // unsolvable slice with its certificate
};

struct FormalityVerdict {
  std::optional<FormalityCertificate> certificate;
  std::optional<NonFormalityWitness> witness;
  bool formal() const { return certificate.has_value(); }
};

/// For n = 2 .. W-1: solve [d_2, τ] = d_{n+1}, then d <- exp(τ) d exp(-τ),
/// which removes the weight n+1 component.
FormalityVerdict certify_formality(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight);

/// Checks the certificate independently: transports m along the isotopy and
/// compares with the claimed result, which must have m_3 .. m_W = 0.
bool verify_certificate(const CategoryPresentation& cat, const MultiplicationFamily& m,
                        const FormalityCertificate& cert);
/// Checks the witness functional against the slice matrix and right side,
/// rebuilt from the witness' obstruction.
bool verify_witness(const CategoryPresentation& cat, const MultiplicationFamily& m, const NonFormalityWitness& w);

/// ∂F: components (n - 1) F_n.
Cofunctor functor_derivative(const Cofunctor& f);

struct GaugeInvarianceReport {
  Coderivation transported;  // CC(F)(k_m) = F∘k_m∘F^{-1}
  Coderivation target;       // k_{m'}
  Coderivation correction;   // [d_{m'}, ∂F∘F^{-1}]
  MapTable residue;          // transported - target - correction
  bool holds() const { return residue.empty(); }
};

/// For an isotopy F : (C, m) -> (C, m'), through max_weight.
GaugeInvarianceReport gauge_invariance_check(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                             const MultiplicationFamily& m_target, const Cofunctor& f,
                                             int max_weight);

}  // namespace ainf
