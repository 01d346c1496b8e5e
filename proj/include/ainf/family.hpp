#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ainf/catalogue.hpp"
#include "ainf/kaledin.hpp"

namespace ainf {

/// Entrywise base change of every m_i.
MultiplicationFamily induce(const MultiplicationFamily& m, const coeff::RingMap& map);
AInfCategory induce(const AInfCategory& a, const coeff::RingMap& map);
/// Fibres of a family over poly(ħ).
AInfCategory fiber_at_zero(const AInfCategory& a);
AInfCategory generic_fiber(const AInfCategory& a);

struct TorsionReport {
  std::string module;
  coeff::ModuleInvariants invariants;
  /// Only divisors vanishing at ħ = 0 count (the module localised at ħ).
  bool localized = false;
  bool is_free() const;
};

struct BaseChangeReport {
  bool flat = false;
  bool chain_level_equal = false;
  std::vector<int> mismatched_degrees;
  /// HH^n over the source ring and after base change.
  std::map<int, std::pair<coeff::ModuleInvariants, coeff::ModuleInvariants>> invariants;
  /// For flat maps: the target invariants are the base change of the source
  /// invariants (free rank kept, divisors that become units dropped).
  bool invariants_match = false;
};

/// Compares the compact cochain complex of Ind_φ(C) with the base-changed
/// matrices of the compact complex of C, degree by degree in
/// [min_degree, max_degree], and the HH invariants of the inner degrees.
BaseChangeReport base_change_commutation_check(const AInfCategory& a, const coeff::RingMap& map, int min_degree,
                                               int max_degree, int max_weight);

enum class PipelineVerdict { formal, not_formal, abstain, disagreement };
std::string to_string(PipelineVerdict v);

struct PipelineReport {
  PipelineVerdict verdict = PipelineVerdict::abstain;
  std::string reason;
  std::optional<FormalityVerdict> generic;  // over the fraction field
  std::vector<TorsionReport> hypotheses;
  std::optional<FormalityVerdict> direct;   // over the base ring
};

/// Generic-fibre criterion for a minimal or dg structure over poly(ħ):
/// certify the generic fibre, check HH²_c(C, m_2) for torsion, and when both
/// pass certify directly over the base ring.
PipelineReport generic_formality_pipeline(const AInfCategory& a, int max_weight);

/// Per ordered object pair (x, y): rows index hom(x, y), columns hom(y, x),
/// both in CategoryPresentation::hom order; entries ⟨a, b⟩.
struct CYDatum {
  int degree = 0;
  std::map<std::pair<int, int>, coeff::ExactMatrix> pairings;
};

struct CYReport {
  bool unimodular = true;
  bool symmetric = true;   // ⟨a, b⟩ = (-1)^{|a||b|} ⟨b, a⟩
  bool invariant = true;   // ⟨m_2(a, b), c⟩ = ⟨a, m_2(b, c)⟩
  bool degree_ok = true;   // ⟨a, b⟩ = 0 unless |a| + |b| = n
  std::vector<std::string> failures;
  bool valid() const { return unimodular && symmetric && invariant && degree_ok; }
};

/// Requires a graded category (only m_2).
CYReport cy_pairing_check(const AInfCategory& h, const CYDatum& datum);
/// ⟨a, b⟩ = trace_y(m_2(a, b)) for a : x -> y, b : y -> x; traces[y] is a
/// functional on the basis of hom(y, y).
CYDatum trace_pairing(const AInfCategory& h, int degree, const std::map<int, Vec>& traces);

/// Finite complex of free modules: ranks by degree, differential k -> k+1.
struct FreeComplex {
  std::map<int, int> ranks;
  std::map<int, coeff::ExactMatrix> differential;
};

struct FiberDims {
  int at_zero = 0;
  int generic = 0;
  coeff::ModuleInvariants snf;  // H^k over poly(ħ)
};

struct FreenessReport {
  std::map<int, FiberDims> degrees;
  bool fibers_agree = false;
  /// SNF: no elementary divisor vanishes at ħ = 0 (freeness after
  /// localising at ħ, the setting of the fibre criterion).
  bool snf_free_at_origin = false;
  bool snf_free = false;  // no non-unit divisor at all
  std::vector<int> jump_degrees;
  std::vector<Scalar> torsion;  // divisors vanishing at 0
  bool consistent() const { return fibers_agree == snf_free_at_origin; }
};

FreenessReport freeness_from_fiber_dims(const FreeComplex& c);

/// Gauging a graded family m_ħ = m_0 + Σ m_r ħ^r back to m_0 by strict
/// automorphisms id - ψ^{(r)} ħ^r, working modulo ħ^{max_order+1}.
struct TrivializationStep {
  int order = 0;
  MapTable psi;  // degree 0 linear map, letter -> vector
};

struct TrivializationResult {
  bool trivialized = false;
  std::string reason;
  int max_order = 0;
  MultiplicationFamily m0;
  std::vector<TrivializationStep> steps;
  /// ψ_ħ = (id - ψ^{(r)} ħ^r) ∘ (id - ψ^{(r')} ħ^{r'}) ∘ ..., letter -> vector.
  MapTable gauge;
  std::vector<TorsionReport> hypotheses;
  std::optional<int> obstruction_order;
  MapTable obstruction;  // m_r at the failing order
  std::optional<coeff::UnsolvableCertificate> certificate;
};

TrivializationResult deformation_trivialize(const AInfCategory& family, int max_order = 8);
/// ψ^{-1} m(ψ, ψ) modulo ħ^{max_order+1}, for a strict gauge ψ.
MultiplicationFamily strict_gauge_action(const AInfCategory& a, const MapTable& psi, int max_order);

/// m_ħ = φ^{-1} m_0(φ, φ) mod ħ^{max_order+1} with φ = id + Σ_k A_k ħ^k for
/// seeded degree 0 maps A_k, k <= 3, on a graded category over the rationals.
struct GaugedFamily {
  AInfCategory family;  // over poly(ħ)
  MapTable phi;
};
GaugedFamily gauged_family(const CatalogueEntry& base, uint64_t seed, int max_order = 8);

/// exp(c)-twist of a formal minimal entry over poly(ħ), with c having
/// coefficients c_i ħ^{k_i} for seeded k_i in 0..2.
TwistedEntry hbar_twisted_family(const CatalogueEntry& base, uint64_t seed, int max_weight);

}  // namespace ainf
