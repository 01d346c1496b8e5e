#pragma once

// Oracles shared by the unit tests and the acceptance gate. They use only
// plain elimination and seeded constructions, never the library's Smith form.

#include <string>
#include <tuple>

#include "ainf/family.hpp"
#include "support/random.hpp"

namespace testsupport {

using ainf::FreeComplex;
using ainf::coeff::RingDescriptor;

inline Scalar hbar(int k = 1) { return Scalar(Poly::monomial(1, k)); }

inline ainf::AInfCategory lift(const ainf::AInfCategory& a) {
  ainf::AInfCategory r = a;
  r.cat.ring = RingDescriptor::polynomials();
  return r;
}

// Dense elimination kept separate from the library code path.
inline int dense_rank(std::vector<std::vector<Scalar>> m) {
  int rk = 0;
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (size_t c = 0; c < cols && static_cast<size_t>(rk) < rows; ++c) {
    size_t p = rows;
    for (size_t r = static_cast<size_t>(rk); r < rows; ++r)
      if (!m[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p == rows) continue;
    std::swap(m[p], m[static_cast<size_t>(rk)]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == static_cast<size_t>(rk) || m[r][c].is_zero()) continue;
      Scalar f = m[r][c] / m[static_cast<size_t>(rk)][c];
      for (size_t k = 0; k < cols; ++k) m[r][k] -= f * m[static_cast<size_t>(rk)][k];
    }
    ++rk;
  }
  return rk;
}

inline ExactMatrix diagonal_matrix(int rows, int cols, const std::vector<Scalar>& d) {
  ExactMatrix m(rows, cols);
  for (size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), d[i]);
  return m;
}

/// Failed properties of the Smith form of a: U·A·V = D, V·V⁻¹ = 1,
/// divisibility chain, normalised diagonal, unit determinants, and the rank
/// against dense elimination over the fraction field.
inline std::vector<std::string> smith_failures(const ExactMatrix& a, const RingDescriptor& ring) {
  using namespace ainf::coeff;
  std::vector<std::string> f;
  SmithForm s = smith_normal_form(a, ring);
  if (s.left * a * s.right != diagonal_matrix(a.rows(), a.cols(), s.diagonal)) f.push_back("U A V != D");
  if (s.right * s.right_inverse != ExactMatrix::identity(a.cols())) f.push_back("V V^-1 != 1");
  for (size_t i = 0; i + 1 < s.diagonal.size(); ++i)
    if (!exact_quotient(ring, s.diagonal[i + 1], s.diagonal[i])) f.push_back("divisibility chain");
  for (const auto& d : s.diagonal)
    if (!normalizing_unit(ring, d).is_one()) f.push_back("diagonal not normalised");
  if (!is_unit(ring, determinant(s.left))) f.push_back("det U not a unit");
  if (!is_unit(ring, determinant(s.right))) f.push_back("det V not a unit");
  if (s.rank() != dense_rank(a.to_dense())) f.push_back("rank differs from elimination");
  if (smith_diagonal(a, ring) != s.diagonal) f.push_back("smith_diagonal differs");
  return f;
}

// Direct sum of elementary pieces 0, R -> R (multiplication by f), conjugated
// degree by degree with unimodular elementary matrices. Returns the complex
// and the divisors vanishing at 0 that H must have.
struct SeededComplex {
  FreeComplex complex;
  std::vector<Scalar> torsion_at_origin;
};

inline ExactMatrix elementary_product(Rng& rng, int n, bool inverse, std::vector<std::tuple<int, int, Scalar>>& ops) {
  if (!inverse) {
    ops.clear();
    int count = n > 1 ? rng.uniform(0, 2 * n) : 0;
    for (int k = 0; k < count; ++k) {
      int i = rng.uniform(0, n - 1), j = rng.uniform(0, n - 1);
      if (i != j) ops.emplace_back(i, j, rng.small_poly(1, 2));
    }
  }
  ExactMatrix u = ExactMatrix::identity(n);
  // u = E_1 E_2 ... (or the inverse, applied in reverse with negated entries)
  auto apply = [&](int i, int j, const Scalar& c) {
    ExactMatrix e = ExactMatrix::identity(n);
    e.set(i, j, c);
    u = u * e;
  };
  if (!inverse)
    for (const auto& [i, j, c] : ops) apply(i, j, c);
  else
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) apply(std::get<0>(*it), std::get<1>(*it), -std::get<2>(*it));
  return u;
}

inline SeededComplex random_complex(uint64_t seed) {
  Rng rng(seed);
  const std::vector<Scalar> factors{Scalar(1), hbar(), hbar(2), hbar() - Scalar(1), hbar() * (hbar() + Scalar(1)),
                                    Scalar(2)};
  SeededComplex s;
  const int top = rng.uniform(1, 3);
  std::map<int, int> ranks;
  std::vector<std::tuple<int, int, int, Scalar>> pieces;  // degree, source index, target index, f
  for (int k = 0; k <= top; ++k) ranks[k] = 0;
  for (int k = 0; k <= top; ++k) {
    int free = rng.uniform(0, 2);
    ranks[k] += free;
    if (k < top) {
      int arrows = rng.uniform(0, 2);
      for (int a = 0; a < arrows; ++a) {
        const Scalar& f = factors[static_cast<size_t>(rng.uniform(0, static_cast<int>(factors.size()) - 1))];
        pieces.emplace_back(k, ranks[k]++, ranks[k + 1]++, f);
        if (f.numerator().coeff(0) == 0) s.torsion_at_origin.push_back(f);
      }
    }
  }
  s.complex.ranks = ranks;
  for (int k = 0; k < top; ++k) s.complex.differential[k] = ExactMatrix(ranks[k + 1], ranks[k]);
  for (const auto& [k, i, j, f] : pieces) s.complex.differential[k].set(j, i, f);
  // d'_k = U_{k+1} d_k U_k^{-1}
  std::map<int, std::vector<std::tuple<int, int, Scalar>>> ops;
  std::map<int, ExactMatrix> u, u_inv;
  for (int k = 0; k <= top; ++k) {
    u[k] = elementary_product(rng, ranks[k], false, ops[k]);
    u_inv[k] = elementary_product(rng, ranks[k], true, ops[k]);
  }
  for (int k = 0; k < top; ++k) s.complex.differential[k] = u[k + 1] * s.complex.differential[k] * u_inv[k];
  return s;
}

}  // namespace testsupport
