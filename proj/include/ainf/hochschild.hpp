#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ainf/acat.hpp"

namespace ainf {

/// Basis element of a cochain slice: the component taking `word` to `out`.
struct CochainCell {
  Word word;
  int out = 0;
  friend bool operator==(const CochainCell& a, const CochainCell& b) { return a.word == b.word && a.out == b.out; }
};

/// The truncated Hochschild cochain complex CC / W_{>max_weight}. Cochain
/// degree is the shifted degree of the coderivation; HH^n = H^{n-1}.
struct CochainSliceSpec {
  int min_degree = 0;
  int max_degree = -1;
  int max_weight = 0;
  bool compact = false;
  std::map<int, std::vector<CochainCell>> bases;      // cochain degree -> cells
  std::map<int, coeff::ExactMatrix> differential;     // degree k -> k+1
};

/// Cochain degrees with a nonempty slice through max_weight.
std::pair<int, int> cochain_degree_range(const CategoryPresentation& cat, int max_weight);

/// Cells of degree `degree` on words of weight 1..max_weight, ordered by
/// weight, then word, then output index.
std::vector<CochainCell> cochain_basis(const CategoryPresentation& cat, int degree, int max_weight);

/// Matrix of c -> [d, c] from the cells `from` (degree `degree`) to the cells
/// `to`. Throws if an image leaves `to`.
coeff::ExactMatrix hochschild_matrix(const GradedBasis& basis, const Coderivation& d,
                                     const std::vector<CochainCell>& from, const std::vector<CochainCell>& to,
                                     int degree, int max_weight);

/// Matrices of d_Hoch = [d, -] between consecutive degrees of
/// [min_degree, max_degree].
CochainSliceSpec cochain_complex(const CategoryPresentation& cat, const MultiplicationFamily& m, int min_degree,
                                 int max_degree, int max_weight);
/// Direct-sum version for a finitely defined minimal structure. On a finite
/// category it has the same cells and matrices as cochain_complex.
CochainSliceSpec compact_cochain_complex(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                         int min_degree, int max_degree, int max_weight);

/// Column vector of a slice as a coderivation and back.
Coderivation cochain_from_column(const std::vector<CochainCell>& basis, int degree, const coeff::Column& v);
coeff::Column column_from_cochain(const std::vector<CochainCell>& basis, const Coderivation& c);

struct HochschildClass {
  Coderivation representative;
  int degree = 0;        // HH degree
  int weight_level = 0;  // largest k with the class in W_k HH
};

struct HochschildResult {
  int degree = 0;  // HH degree n, computed as H^{n-1}(CC / W_{>max_weight})
  int max_weight = 0;
  coeff::ModuleInvariants invariants;
  /// Representatives over the fraction field, adapted to the weight
  /// filtration: chosen from W_max first, then extended downwards, with
  /// reduced-echelon kernel vectors.
  std::vector<HochschildClass> classes;
  std::map<int, int> weight_dims;  // k -> rank of W_k HH
};

HochschildResult hochschild_cohomology(const CategoryPresentation& cat, const MultiplicationFamily& m, int degree,
                                       int max_weight);
/// Same computation on a prebuilt complex containing degrees n-2 .. n.
HochschildResult hochschild_cohomology(const CochainSliceSpec& spec, const coeff::RingDescriptor& ring, int degree);

/// Bigraded cohomology of a graded category (m = m_2 only): p = arity,
/// q = internal degree, total degree p + q = HH degree. Entries with
/// p = max_weight are truncated (their differential leaves the slice).
struct BigradedTable {
  int max_weight = 0;
  std::map<std::pair<int, int>, coeff::ModuleInvariants> cells;  // (p, q)
};
/// Differentials into and out of one (p, q) cell of the bigraded complex.
struct BigradedCell {
  coeff::ExactMatrix in;   // from (p - 1, q)
  coeff::ExactMatrix out;  // to (p + 1, q)
  int dim = 0;
};
std::optional<BigradedCell> bigraded_cell(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                          int max_weight, int p, int q);
BigradedTable bigraded_cohomology(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight);

/// Chains f_0 ⊗ f_1 ⊗ ... ⊗ f_n of C ⊗ B(C) with cyclically composable
/// letters, graded by total shifted degree, with at most max_letters letters.
struct HomologySlice {
  int max_letters = 0;
  std::map<int, std::vector<Word>> chains;         // degree -> chains
  std::map<int, coeff::ExactMatrix> boundary;      // degree k -> k+1
};

/// ∂ on a single chain, with
///   first sum: (-1)^{ε_k} d_j(f_{n-k+1} .. f_n, f_0, f_1 .. f_{j-k-1}) ⊗ f_{j-k} .. f_{n-k},
///              1 <= j <= n+1, 0 <= k <= j-1,
///   second sum: (-1)^{λ_k} f_0 .. f_k ⊗ d_j(f_{k+1} .. f_{k+j}) ⊗ ..., j >= 1, k >= 0, j + k <= n,
/// ε_k = Σ_{l<=k-1} |f_{n-l}| (s_n - |f_{n-l}|), λ_k = Σ_{l<=k} |f_l|, s_n = Σ_l |f_l|,
/// all degrees shifted.
TensorVec homology_boundary(const GradedBasis& basis, const Coderivation& d, const Word& chain);
/// The printed first-sum range j + k <= n instead of j <= n + 1.
TensorVec homology_boundary_printed_range(const GradedBasis& basis, const Coderivation& d, const Word& chain);

std::vector<Word> cyclic_chains(const CategoryPresentation& cat, int letters);
HomologySlice homology_complex(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_letters);
/// Homology invariants of every degree of the slice whose neighbours are
/// present.
std::map<int, coeff::ModuleInvariants> hochschild_homology(const HomologySlice& slice,
                                                           const coeff::RingDescriptor& ring);

}  // namespace ainf
