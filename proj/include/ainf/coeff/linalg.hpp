#pragma once

#include <optional>
#include <vector>

#include "ainf/coeff/matrix.hpp"
#include "ainf/coeff/ring.hpp"

namespace ainf::coeff {

/// Reduced row echelon form over a field: transform * A = reduced.
/// Pivots are chosen column by column, taking the first remaining row with a
/// nonzero entry.
struct RowEchelon {
  ExactMatrix reduced;
  ExactMatrix transform;  // empty (0x0) unless requested
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

RowEchelon rref(const ExactMatrix& a, bool with_transform = false);

/// left * A * right = diag(diagonal), padded with zeros. right_inverse is the
/// inverse of right. Each nonzero diagonal entry divides the next and is the
/// canonical associate.
struct SmithForm {
  ExactMatrix left;
  ExactMatrix right;
  ExactMatrix right_inverse;
  std::vector<Scalar> diagonal;  // nonzero entries only
  int rank() const { return static_cast<int>(diagonal.size()); }
};

SmithForm smith_normal_form(const ExactMatrix& a, const RingDescriptor& ring);
/// Invariant factors only (nonzero, in divisibility order).
std::vector<Scalar> smith_diagonal(const ExactMatrix& a, const RingDescriptor& ring);

/// Rank over the fraction field.
int rank(const ExactMatrix& a);
/// Determinant over the fraction field (square matrices).
Scalar determinant(const ExactMatrix& a);

/// A functional y with y*A = 0 (or = 0 modulo `modulus`) and y*b != 0 (not
/// divisible by `modulus`).
struct UnsolvableCertificate {
  Column functional;
  std::optional<Scalar> modulus;
};

struct SolveResult {
  std::optional<Column> solution;
  std::optional<UnsolvableCertificate> certificate;
  bool solvable() const { return solution.has_value(); }
};

SolveResult solve_linear(const ExactMatrix& a, const Column& b, const RingDescriptor& ring);
/// Verifies a certificate against A and b directly.
bool verify_certificate(const ExactMatrix& a, const Column& b, const UnsolvableCertificate& cert,
                        const RingDescriptor& ring);

/// Basis of the kernel (over a PID: a basis of the free kernel module).
std::vector<Column> kernel_basis(const ExactMatrix& a, const RingDescriptor& ring);

/// Isomorphism type of a finitely generated module: free part plus
/// non-unit elementary divisors.
struct ModuleInvariants {
  int free_rank = 0;
  std::vector<Scalar> divisors;
  bool is_free() const { return divisors.empty(); }
  friend bool operator==(const ModuleInvariants& a, const ModuleInvariants& b) {
    return a.free_rank == b.free_rank && a.divisors == b.divisors;
  }
};

/// Invariants of the cokernel of A.
ModuleInvariants image_presentation(const ExactMatrix& a, const RingDescriptor& ring);

/// Invariants of ker(out) / im(in) where out * in = 0.
ModuleInvariants homology_invariants(const ExactMatrix& in, const ExactMatrix& out, int dim,
                                     const RingDescriptor& ring);

/// Over poly(ħ) localised at ħ and modulo ħ^precision: ħ-adic valuations
/// (below precision) of the nonzero invariant factors, ascending.
std::vector<int> local_smith_valuations(const ExactMatrix& a, int precision);
/// Homology of C --in--> (rank dim) --out--> over the same ring; divisors are
/// ħ^v, v >= 1. Factors of valuation >= precision are read as zero.
ModuleInvariants local_homology_invariants(const ExactMatrix& in, const ExactMatrix& out, int dim, int precision);

ExactMatrix base_change_matrix(const ExactMatrix& a, const RingMap& map);

}  // namespace ainf::coeff
