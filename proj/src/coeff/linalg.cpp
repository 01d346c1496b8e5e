#include "ainf/coeff/linalg.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "ainf/error.hpp"

namespace ainf::coeff {

namespace {

// row_dst += f * row_src
void axpy(SparseRow& dst, const SparseRow& src, const Scalar& f) {
  if (f.is_zero()) return;
  for (const auto& [c, v] : src) {
    auto [it, inserted] = dst.try_emplace(c, f * v);
    if (!inserted) {
      it->second += f * v;
      if (it->second.is_zero()) dst.erase(it);
    }
  }
}

void scale(SparseRow& row, const Scalar& f) {
  for (auto& [c, v] : row) v *= f;
}

using Dense = std::vector<std::vector<Scalar>>;

void dense_row_axpy(Dense& m, size_t dst, size_t src, const Scalar& f) {
  if (f.is_zero()) return;
  for (size_t j = 0; j < m[dst].size(); ++j)
    if (!m[src][j].is_zero()) m[dst][j] += f * m[src][j];
}

void dense_col_axpy(Dense& m, size_t dst, size_t src, const Scalar& f) {
  if (f.is_zero()) return;
  for (auto& row : m)
    if (!row[src].is_zero()) row[dst] += f * row[src];
}

void dense_col_swap(Dense& m, size_t a, size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

Dense dense_identity(size_t n) {
  Dense d(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i) d[i][i] = Scalar(1);
  return d;
}

void require_euclidean(const RingDescriptor& ring) {
  if (!ring.is_euclidean()) throw UnsupportedRing("ring " + ring.name() + " is not Euclidean");
}

}  // namespace

RowEchelon rref(const ExactMatrix& a, bool with_transform) {
  ExactMatrix m = a;
  ExactMatrix t = with_transform ? ExactMatrix::identity(a.rows()) : ExactMatrix();
  std::vector<int> pivots;
  int pr = 0;
  for (int c = 0; c < m.cols() && pr < m.rows(); ++c) {
    int found = -1;
    for (int r = pr; r < m.rows(); ++r) {
      if (m.row(r).count(c)) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    if (found != pr) {
      std::swap(m.row_mut(found), m.row_mut(pr));
      if (with_transform) std::swap(t.row_mut(found), t.row_mut(pr));
    }
    Scalar inv = Scalar(1) / m.row(pr).at(c);
    scale(m.row_mut(pr), inv);
    if (with_transform) scale(t.row_mut(pr), inv);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == pr) continue;
      auto it = m.row(r).find(c);
      if (it == m.row(r).end()) continue;
      Scalar f = -it->second;
      axpy(m.row_mut(r), m.row(pr), f);
      if (with_transform) axpy(t.row_mut(r), t.row(pr), f);
    }
    pivots.push_back(c);
    ++pr;
  }
  return {std::move(m), std::move(t), std::move(pivots)};
}

int rank(const ExactMatrix& a) {
  // forward elimination only
  std::vector<SparseRow> rows;
  rows.reserve(static_cast<size_t>(a.rows()));
  for (int r = 0; r < a.rows(); ++r)
    if (!a.row(r).empty()) rows.push_back(a.row(r));
  int rk = 0;
  size_t pr = 0;
  for (int c = 0; c < a.cols() && pr < rows.size(); ++c) {
    size_t found = rows.size();
    for (size_t r = pr; r < rows.size(); ++r) {
      if (!rows[r].empty() && rows[r].begin()->first == c) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) continue;
    std::swap(rows[found], rows[pr]);
    const Scalar inv = Scalar(1) / rows[pr].begin()->second;
    for (size_t r = pr + 1; r < rows.size(); ++r) {
      if (rows[r].empty() || rows[r].begin()->first != c) continue;
      axpy(rows[r], rows[pr], -(rows[r].begin()->second * inv));
    }
    ++pr;
    ++rk;
  }
  return rk;
}

Scalar determinant(const ExactMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  std::vector<SparseRow> rows(static_cast<size_t>(a.rows()));
  for (int r = 0; r < a.rows(); ++r) rows[static_cast<size_t>(r)] = a.row(r);
  Scalar det(1);
  for (int c = 0; c < a.cols(); ++c) {
    size_t pc = static_cast<size_t>(c);
    size_t found = rows.size();
    for (size_t r = pc; r < rows.size(); ++r) {
      if (rows[r].count(c)) {
        found = r;
        break;
      }
    }
    if (found == rows.size()) return Scalar();
    if (found != pc) {
      std::swap(rows[found], rows[pc]);
      det = -det;
    }
    const Scalar p = rows[pc].at(c);
    det *= p;
    for (size_t r = pc + 1; r < rows.size(); ++r) {
      auto it = rows[r].find(c);
      if (it == rows[r].end()) continue;
      axpy(rows[r], rows[pc], -(it->second / p));
    }
  }
  return det;
}

SmithForm smith_normal_form(const ExactMatrix& a, const RingDescriptor& ring) {
  require_euclidean(ring);
  const size_t m = static_cast<size_t>(a.rows()), n = static_cast<size_t>(a.cols());
  Dense d = a.to_dense();
  Dense left = dense_identity(m), right = dense_identity(n), right_inv = dense_identity(n);
  std::vector<Scalar> diag;

  auto swap_rows = [&](size_t i, size_t j) {
    std::swap(d[i], d[j]);
    std::swap(left[i], left[j]);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    dense_col_swap(d, i, j);
    dense_col_swap(right, i, j);
    std::swap(right_inv[i], right_inv[j]);
  };
  // col_j += f * col_k
  auto col_op = [&](size_t j, size_t k, const Scalar& f) {
    dense_col_axpy(d, j, k, f);
    dense_col_axpy(right, j, k, f);
    dense_row_axpy(right_inv, k, j, -f);
  };
  auto row_op = [&](size_t i, size_t k, const Scalar& f) {
    dense_row_axpy(d, i, k, f);
    dense_row_axpy(left, i, k, f);
  };

  for (size_t k = 0; k < std::min(m, n); ++k) {
    // smallest pivot in the trailing block
    size_t bi = m, bj = n;
    int best = -1;
    for (size_t i = k; i < m; ++i)
      for (size_t j = k; j < n; ++j) {
        if (d[i][j].is_zero()) continue;
        int s = euclidean_size(ring, d[i][j]);
        if (best < 0 || s < best) {
          best = s;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) break;
    if (bi != k) swap_rows(bi, k);
    if (bj != k) swap_cols(bj, k);

    for (;;) {
      bool clean = true;
      for (size_t i = k + 1; i < m; ++i) {
        if (d[i][k].is_zero()) continue;
        auto [q, r] = euclidean_divmod(ring, d[i][k], d[k][k]);
        row_op(i, k, -q);
        if (!d[i][k].is_zero()) {
          swap_rows(i, k);
          clean = false;
        }
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (d[k][j].is_zero()) continue;
        auto [q, r] = euclidean_divmod(ring, d[k][j], d[k][k]);
        col_op(j, k, -q);
        if (!d[k][j].is_zero()) {
          swap_cols(j, k);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility of the trailing block by the pivot
      bool divides = true;
      for (size_t i = k + 1; i < m && divides; ++i)
        for (size_t j = k + 1; j < n; ++j) {
          if (d[i][j].is_zero()) continue;
          if (!exact_quotient(ring, d[i][j], d[k][k])) {
            row_op(k, i, Scalar(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    Scalar u = normalizing_unit(ring, d[k][k]);
    for (auto& x : d[k]) x *= u;
    for (auto& x : left[k]) x *= u;
    diag.push_back(d[k][k]);
  }
  return {ExactMatrix::from_dense(left), ExactMatrix::from_dense(right), ExactMatrix::from_dense(right_inv),
          std::move(diag)};
}

namespace {

SolveResult solve_block(const ExactMatrix& a, const Column& b, const RingDescriptor& ring) {
  SolveResult res;
  const size_t n = static_cast<size_t>(a.cols());
  if (ring.is_field()) {
    RowEchelon e = rref(a, true);
    Column tb = e.transform.apply(b);
    for (int r = e.rank(); r < a.rows(); ++r) {
      if (!tb[static_cast<size_t>(r)].is_zero()) {
        Column y(static_cast<size_t>(a.rows()));
        for (const auto& [c, v] : e.transform.row(r)) y[static_cast<size_t>(c)] = v;
        res.certificate = UnsolvableCertificate{std::move(y), std::nullopt};
        return res;
      }
    }
    Column x(n);
    for (int i = 0; i < e.rank(); ++i) x[static_cast<size_t>(e.pivot_cols[static_cast<size_t>(i)])] = tb[static_cast<size_t>(i)];
    res.solution = std::move(x);
    return res;
  }
  SmithForm s = smith_normal_form(a, ring);
  Column lb = s.left.apply(b);
  Column y(n);
  auto left_row = [&](int r) {
    Column f(static_cast<size_t>(a.rows()));
    for (const auto& [c, v] : s.left.row(r)) f[static_cast<size_t>(c)] = v;
    return f;
  };
  for (int i = 0; i < a.rows(); ++i) {
    const Scalar& ci = lb[static_cast<size_t>(i)];
    if (i >= s.rank()) {
      if (!ci.is_zero()) {
        res.certificate = UnsolvableCertificate{left_row(i), std::nullopt};
        return res;
      }
      continue;
    }
    auto q = exact_quotient(ring, ci, s.diagonal[static_cast<size_t>(i)]);
    if (!q) {
      res.certificate = UnsolvableCertificate{left_row(i), s.diagonal[static_cast<size_t>(i)]};
      return res;
    }
    y[static_cast<size_t>(i)] = *q;
  }
  res.solution = s.right.apply(y);
  return res;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<size_t>(x)] != x) {
    parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    x = parent[static_cast<size_t>(x)];
  }
  return x;
}

}  // namespace

SolveResult solve_linear(const ExactMatrix& a, const Column& b, const RingDescriptor& ring) {
  if (static_cast<int>(b.size()) != a.rows()) throw DimensionError("right-hand side length mismatch");
  // Split into connected components of the row/column incidence graph and
  // solve each block with a nonzero right side separately.
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> parent(static_cast<size_t>(rows + cols));
  for (int i = 0; i < rows + cols; ++i) parent[static_cast<size_t>(i)] = i;
  for (int r = 0; r < rows; ++r)
    for (const auto& [c, v] : a.row(r)) {
      int x = find_root(parent, r), y = find_root(parent, rows + c);
      if (x != y) parent[static_cast<size_t>(std::max(x, y))] = std::min(x, y);
    }
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> blocks;  // root -> (rows, cols)
  for (int r = 0; r < rows; ++r)
    if (!b[static_cast<size_t>(r)].is_zero()) blocks[find_root(parent, r)];
  for (int r = 0; r < rows; ++r) {
    auto it = blocks.find(find_root(parent, r));
    if (it != blocks.end()) it->second.first.push_back(r);
  }
  for (int c = 0; c < cols; ++c) {
    auto it = blocks.find(find_root(parent, rows + c));
    if (it != blocks.end()) it->second.second.push_back(c);
  }

  SolveResult res;
  Column x(static_cast<size_t>(cols));
  for (const auto& [root, rc] : blocks) {
    const auto& [br, bc] = rc;
    std::map<int, int> col_pos;
    for (size_t j = 0; j < bc.size(); ++j) col_pos[bc[j]] = static_cast<int>(j);
    ExactMatrix sub(static_cast<int>(br.size()), static_cast<int>(bc.size()));
    Column sb(br.size());
    for (size_t i = 0; i < br.size(); ++i) {
      for (const auto& [c, v] : a.row(br[i])) sub.set(static_cast<int>(i), col_pos.at(c), v);
      sb[i] = b[static_cast<size_t>(br[i])];
    }
    SolveResult part = solve_block(sub, sb, ring);
    if (part.certificate) {
      Column y(static_cast<size_t>(rows));
      for (size_t i = 0; i < br.size(); ++i) y[static_cast<size_t>(br[i])] = part.certificate->functional[i];
      res.certificate = UnsolvableCertificate{std::move(y), part.certificate->modulus};
      return res;
    }
    for (size_t j = 0; j < bc.size(); ++j) x[static_cast<size_t>(bc[j])] = (*part.solution)[j];
  }
  res.solution = std::move(x);
  return res;
}

bool verify_certificate(const ExactMatrix& a, const Column& b, const UnsolvableCertificate& cert,
                        const RingDescriptor& ring) {
  if (static_cast<int>(cert.functional.size()) != a.rows()) return false;
  Column ya = a.left_apply(cert.functional);
  Scalar yb;
  for (size_t i = 0; i < b.size(); ++i) yb += cert.functional[i] * b[i];
  if (!cert.modulus) {
    for (const auto& v : ya)
      if (!v.is_zero()) return false;
    return !yb.is_zero();
  }
  for (const auto& v : ya)
    if (!exact_quotient(ring, v, *cert.modulus)) return false;
  return !exact_quotient(ring, yb, *cert.modulus).has_value();
}

std::vector<Column> kernel_basis(const ExactMatrix& a, const RingDescriptor& ring) {
  std::vector<Column> out;
  const size_t n = static_cast<size_t>(a.cols());
  if (ring.is_field()) {
    RowEchelon e = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (int c : e.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
    for (size_t f = 0; f < n; ++f) {
      if (is_pivot[f]) continue;
      Column v(n);
      v[f] = Scalar(1);
      for (int i = 0; i < e.rank(); ++i) {
        Scalar x = e.reduced.get(i, static_cast<int>(f));
        if (!x.is_zero()) v[static_cast<size_t>(e.pivot_cols[static_cast<size_t>(i)])] = -x;
      }
      out.push_back(std::move(v));
    }
    return out;
  }
  SmithForm s = smith_normal_form(a, ring);
  for (int j = s.rank(); j < a.cols(); ++j) {
    Column v(n);
    for (size_t i = 0; i < n; ++i) v[i] = s.right.get(static_cast<int>(i), j);
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

// Rational content of some polynomials: gcd of numerators over lcm of
// denominators. Dividing by it is a unit scaling in Q[ħ].
mpq_class rational_content(const std::vector<const Scalar*>& xs) {
  mpz_class num = 0, den = 1;
  for (const Scalar* x : xs) {
    Poly p = x->numerator();
    for (const auto& c : p.coeffs()) {
      if (c == 0) continue;
      num = gcd(num, mpz_class(c.get_num()));
      den = lcm(den, mpz_class(c.get_den()));
    }
  }
  return num == 0 ? mpq_class(1) : mpq_class(num, den);
}

// Keeps coefficient growth in Euclidean elimination over Q[ħ] in check.
void primitive_row(Dense& d, size_t i, const RingDescriptor& ring) {
  if (ring.kind != RingKind::polynomials) return;
  std::vector<const Scalar*> xs;
  for (const auto& x : d[i])
    if (!x.is_zero()) xs.push_back(&x);
  mpq_class c = rational_content(xs);
  if (c == 1) return;
  Scalar inv(mpq_class(1) / c);
  for (auto& x : d[i])
    if (!x.is_zero()) x = x * inv;
}

void primitive_col(Dense& d, size_t j, const RingDescriptor& ring) {
  if (ring.kind != RingKind::polynomials) return;
  std::vector<const Scalar*> xs;
  for (const auto& row : d)
    if (!row[j].is_zero()) xs.push_back(&row[j]);
  mpq_class c = rational_content(xs);
  if (c == 1) return;
  Scalar inv(mpq_class(1) / c);
  for (auto& row : d)
    if (!row[j].is_zero()) row[j] = row[j] * inv;
}

// Rank and a nonzero maximal minor of d[k..][k..] over Q[ħ], by fraction-free
// elimination (every intermediate entry is a minor, so degrees stay bounded).
std::pair<size_t, Scalar> rank_and_minor(Dense d, size_t k0, const RingDescriptor& ring) {
  const size_t m = d.size(), n = m ? d[0].size() : 0;
  Scalar prev(1);
  size_t rank = 0;
  for (size_t k = k0; k < std::min(m, n); ++k) {
    size_t bi = m, bj = n;
    int best = -1;
    for (size_t i = k; i < m; ++i)
      for (size_t j = k; j < n; ++j)
        if (!d[i][j].is_zero() && (best < 0 || euclidean_size(ring, d[i][j]) < best)) {
          best = euclidean_size(ring, d[i][j]);
          bi = i;
          bj = j;
        }
    if (best < 0) break;
    std::swap(d[bi], d[k]);
    if (bj != k) dense_col_swap(d, bj, k);
    for (size_t i = k + 1; i < m; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Scalar v = d[k][k] * d[i][j] - d[i][k] * d[k][j];
        d[i][j] = v.is_zero() ? v : *exact_quotient(ring, v, prev);
      }
      d[i][k] = Scalar();
    }
    prev = d[k][k];
    ++rank;
  }
  return {rank, prev};
}

Scalar reduce_mod(const Scalar& x, const Scalar& modulus, const RingDescriptor& ring) {
  if (modulus.is_zero() || x.is_zero()) return x;
  return euclidean_divmod(ring, x, modulus).second;
}

Scalar gcd_with(const Scalar& x, const Scalar& modulus) {
  return Scalar(gcd(x.numerator(), modulus.numerator()));
}

// Invariant factors of one connected block, without transforms. Pivots are
// chosen by Euclidean size, ties broken by Markowitz fill-in. Over Q[ħ], once
// no unit pivot is left, the rest is reduced modulo N = ħ·M for a nonzero
// maximal minor M of the remaining block: every invariant factor divides M,
// so the Smith form of [A; N·I] has the same first rank(A) factors as A.
std::vector<Scalar> block_diagonal(Dense d, const RingDescriptor& ring) {
  const size_t m = d.size(), n = m ? d[0].size() : 0;
  for (size_t i = 0; i < m; ++i) primitive_row(d, i, ring);
  std::vector<Scalar> diag;
  Scalar modulus;
  auto reduce_row = [&](size_t i) {
    if (!modulus.is_zero())
      for (size_t j = 0; j < n; ++j) d[i][j] = reduce_mod(d[i][j], modulus, ring);
    primitive_row(d, i, ring);
  };
  auto reduce_col = [&](size_t j) {
    if (!modulus.is_zero())
      for (size_t i = 0; i < m; ++i) d[i][j] = reduce_mod(d[i][j], modulus, ring);
    primitive_col(d, j, ring);
  };
  for (size_t k = 0; k < std::min(m, n); ++k) {
    std::vector<long> row_count(m, 0), col_count(n, 0);
    for (size_t i = k; i < m; ++i)
      for (size_t j = k; j < n; ++j)
        if (!d[i][j].is_zero()) {
          ++row_count[i];
          ++col_count[j];
        }
    size_t bi = m, bj = n;
    int best = -1;
    long best_fill = 0;
    for (size_t i = k; i < m; ++i)
      for (size_t j = k; j < n; ++j) {
        if (d[i][j].is_zero()) continue;
        int s = euclidean_size(ring, d[i][j]);
        long fill = (row_count[i] - 1) * (col_count[j] - 1);
        if (best < 0 || s < best || (s == best && fill < best_fill)) {
          best = s;
          best_fill = fill;
          bi = i;
          bj = j;
        }
      }
    if (best < 0) break;
    if (best > 0 && modulus.is_zero() && ring.kind == RingKind::polynomials) {
      auto [rank, minor] = rank_and_minor(d, k, ring);
      if (is_unit(ring, minor)) {
        // the remaining factors are all units
        diag.insert(diag.end(), rank, Scalar(1));
        return diag;
      }
      modulus = minor * Scalar::variable();
      for (size_t i = k; i < m; ++i) reduce_row(i);
      --k;
      continue;
    }
    std::swap(d[bi], d[k]);
    if (bj != k) dense_col_swap(d, bj, k);
    for (;;) {
      bool clean = true;
      for (size_t i = k + 1; i < m; ++i) {
        if (d[i][k].is_zero()) continue;
        auto [q, r] = euclidean_divmod(ring, d[i][k], d[k][k]);
        dense_row_axpy(d, i, k, -q);
        reduce_row(i);
        if (!d[i][k].is_zero()) {
          std::swap(d[i], d[k]);
          clean = false;
        }
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (d[k][j].is_zero()) continue;
        auto [q, r] = euclidean_divmod(ring, d[k][j], d[k][k]);
        dense_col_axpy(d, j, k, -q);
        reduce_col(j);
        if (!d[k][j].is_zero()) {
          dense_col_swap(d, j, k);
          clean = false;
        }
      }
      if (!clean) continue;
      // N·e_k is in the row module, so the pivot may be replaced by gcd(p, N)
      if (!modulus.is_zero()) d[k][k] = gcd_with(d[k][k], modulus);
      bool divides = true;
      if (!is_unit(ring, d[k][k]))
        for (size_t i = k + 1; i < m && divides; ++i)
          for (size_t j = k + 1; j < n; ++j) {
            if (d[i][j].is_zero()) continue;
            if (!exact_quotient(ring, d[i][j], d[k][k])) {
              dense_row_axpy(d, k, i, Scalar(1));
              reduce_row(k);
              divides = false;
              break;
            }
          }
      if (divides) break;
    }
    diag.push_back(d[k][k] * normalizing_unit(ring, d[k][k]));
  }
  return diag;
}

}  // namespace

std::vector<Scalar> smith_diagonal(const ExactMatrix& a, const RingDescriptor& ring) {
  require_euclidean(ring);
  const int rows = a.rows(), cols = a.cols();
  std::vector<int> parent(static_cast<size_t>(rows + cols));
  for (int i = 0; i < rows + cols; ++i) parent[static_cast<size_t>(i)] = i;
  for (int r = 0; r < rows; ++r)
    for (const auto& [c, v] : a.row(r)) {
      int x = find_root(parent, r), y = find_root(parent, rows + c);
      if (x != y) parent[static_cast<size_t>(std::max(x, y))] = std::min(x, y);
    }
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> blocks;
  for (int r = 0; r < rows; ++r)
    if (!a.row(r).empty()) blocks[find_root(parent, r)].first.push_back(r);
  for (int c = 0; c < cols; ++c) {
    auto it = blocks.find(find_root(parent, rows + c));
    if (it != blocks.end()) it->second.second.push_back(c);
  }
  int units = 0;
  std::vector<Scalar> torsion;
  for (const auto& [root, rc] : blocks) {
    const auto& [br, bc] = rc;
    std::map<int, size_t> col_pos;
    for (size_t j = 0; j < bc.size(); ++j) col_pos[bc[j]] = j;
    Dense d(br.size(), std::vector<Scalar>(bc.size()));
    for (size_t i = 0; i < br.size(); ++i)
      for (const auto& [c, v] : a.row(br[i])) d[i][col_pos.at(c)] = v;
    for (auto& x : block_diagonal(std::move(d), ring)) {
      if (is_unit(ring, x))
        ++units;
      else
        torsion.push_back(std::move(x));
    }
  }
  if (torsion.size() > 1) {
    // recombine the cyclic summands of all blocks into invariant factors
    Dense d(torsion.size(), std::vector<Scalar>(torsion.size()));
    for (size_t i = 0; i < torsion.size(); ++i) d[i][i] = torsion[i];
    torsion.clear();
    for (auto& x : block_diagonal(std::move(d), ring)) {
      if (is_unit(ring, x))
        ++units;
      else
        torsion.push_back(std::move(x));
    }
  }
  std::vector<Scalar> diag(static_cast<size_t>(units), Scalar(1));
  for (auto& x : torsion) diag.push_back(std::move(x));
  return diag;
}

ModuleInvariants image_presentation(const ExactMatrix& a, const RingDescriptor& ring) {
  ModuleInvariants inv;
  if (ring.is_field()) {
    inv.free_rank = a.rows() - rank(a);
    return inv;
  }
  auto diag = smith_diagonal(a, ring);
  inv.free_rank = a.rows() - static_cast<int>(diag.size());
  for (auto& d : diag)
    if (!is_unit(ring, d)) inv.divisors.push_back(std::move(d));
  return inv;
}

ModuleInvariants homology_invariants(const ExactMatrix& in, const ExactMatrix& out, int dim,
                                     const RingDescriptor& ring) {
  if (in.rows() != dim || out.cols() != dim) throw DimensionError("homology_invariants dimension mismatch");
  ModuleInvariants inv;
  if (ring.is_field()) {
    inv.free_rank = dim - rank(in) - rank(out);
    return inv;
  }
  // ker(out) is saturated in the free module, so the torsion of H is the
  // torsion of coker(in)
  const int r = static_cast<int>(smith_diagonal(out, ring).size());
  ModuleInvariants c = image_presentation(in, ring);
  inv.free_rank = c.free_rank - r;
  inv.divisors = std::move(c.divisors);
  return inv;
}

ExactMatrix base_change_matrix(const ExactMatrix& a, const RingMap& map) {
  ExactMatrix out(a.rows(), a.cols());
  for (const auto& [r, c, v] : a.entries()) out.set(r, c, map.apply(v));
  return out;
}

namespace {

// Truncated power series: coefficients of 1, ħ, ..., ħ^{K-1}.
using Series = std::vector<mpq_class>;

int valuation(const Series& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0) return static_cast<int>(i);
  return static_cast<int>(s.size());
}

Series series_mul(const Series& a, const Series& b, int va, int vb) {
  const size_t k = a.size();
  Series out(k);
  for (size_t i = static_cast<size_t>(va); i < k; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = static_cast<size_t>(vb); i + j < k; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series series_inverse(const Series& u) {
  const size_t k = u.size();
  Series inv(k);
  inv[0] = 1 / u[0];
  for (size_t n = 1; n < k; ++n) {
    mpq_class acc = 0;
    for (size_t i = 1; i <= n; ++i)
      if (u[i] != 0) acc += u[i] * inv[n - i];
    inv[n] = -acc * inv[0];
  }
  return inv;
}

Series shifted(const Series& s, int v) {
  Series out(s.size());
  for (size_t i = static_cast<size_t>(v); i < s.size(); ++i) out[i - static_cast<size_t>(v)] = s[i];
  return out;
}

}  // namespace

std::vector<int> local_smith_valuations(const ExactMatrix& a, int precision) {
  if (precision < 1) throw Error("local Smith form needs precision >= 1");
  const size_t K = static_cast<size_t>(precision);
  const size_t m = static_cast<size_t>(a.rows()), n = static_cast<size_t>(a.cols());
  std::vector<std::vector<Series>> d(m, std::vector<Series>(n, Series(K)));
  std::vector<std::vector<int>> val(m, std::vector<int>(n, precision));
  for (size_t r = 0; r < m; ++r)
    for (const auto& [c, x] : a.row(static_cast<int>(r))) {
      if (!x.is_polynomial()) throw UnsupportedRing("local Smith form needs polynomial entries");
      Poly p = x.numerator();
      for (size_t i = 0; i < K && i < p.coeffs().size(); ++i) d[r][static_cast<size_t>(c)][i] = p.coeffs()[i];
      val[r][static_cast<size_t>(c)] = valuation(d[r][static_cast<size_t>(c)]);
    }
  std::vector<int> out;
  for (size_t k = 0; k < std::min(m, n); ++k) {
    size_t bi = m, bj = n;
    int best = precision;
    for (size_t i = k; i < m && best > 0; ++i)
      for (size_t j = k; j < n; ++j)
        if (val[i][j] < best) {
          best = val[i][j];
          bi = i;
          bj = j;
          if (best == 0) break;
        }
    if (best == precision) break;
    std::swap(d[bi], d[k]);
    std::swap(val[bi], val[k]);
    if (bj != k)
      for (size_t i = 0; i < m; ++i) {
        std::swap(d[i][bj], d[i][k]);
        std::swap(val[i][bj], val[i][k]);
      }
    // pivot ħ^v·u with u a unit; it divides every remaining entry
    Series uinv = series_inverse(shifted(d[k][k], best));
    for (size_t i = k + 1; i < m; ++i) {
      if (val[i][k] == precision) continue;
      Series f = series_mul(shifted(d[i][k], best), uinv, val[i][k] - best, 0);
      int vf = valuation(f);
      for (size_t j = k + 1; j < n; ++j) {
        if (val[k][j] == precision) continue;
        Series t = series_mul(f, d[k][j], vf, val[k][j]);
        for (size_t e = 0; e < K; ++e) d[i][j][e] -= t[e];
        val[i][j] = valuation(d[i][j]);
      }
      d[i][k].assign(K, 0);
      val[i][k] = precision;
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModuleInvariants local_homology_invariants(const ExactMatrix& in, const ExactMatrix& out, int dim, int precision) {
  ModuleInvariants r;
  // ker(out) is saturated, so the torsion is that of im(in) in the cochains
  auto vin = local_smith_valuations(in, precision);
  int rank_out = static_cast<int>(local_smith_valuations(out, precision).size());
  r.free_rank = dim - rank_out - static_cast<int>(vin.size());
  for (int v : vin)
    if (v > 0) r.divisors.push_back(Scalar(Poly::monomial(1, v)));
  return r;
}

}  // namespace ainf::coeff
