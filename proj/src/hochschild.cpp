#include "ainf/hochschild.hpp"

#include <algorithm>
#include <climits>

#include "ainf/error.hpp"
#include "ainf/parallel.hpp"

namespace ainf {

using coeff::Column;
using coeff::ExactMatrix;
using coeff::RingDescriptor;

std::pair<int, int> cochain_degree_range(const CategoryPresentation& cat, int max_weight) {
  int lo = INT_MAX, hi = INT_MIN;
  for (int n = 1; n <= max_weight; ++n)
    for (const auto& w : cat.composable_words(n)) {
      int sd = cat.basis.word_shifted_degree(w);
      for (int o : cat.hom(cat.basis.word_source(w), cat.basis.word_target(w))) {
        lo = std::min(lo, cat.basis.shifted_degree(o) - sd);
        hi = std::max(hi, cat.basis.shifted_degree(o) - sd);
      }
    }
  if (lo > hi) return {0, -1};
  return {lo, hi};
}

std::vector<CochainCell> cochain_basis(const CategoryPresentation& cat, int degree, int max_weight) {
  std::vector<CochainCell> out;
  for (int n = 1; n <= max_weight; ++n)
    for (const auto& w : cat.composable_words(n)) {
      int sd = cat.basis.word_shifted_degree(w) + degree;
      for (int o : cat.hom(cat.basis.word_source(w), cat.basis.word_target(w)))
        if (cat.basis.shifted_degree(o) == sd) out.push_back({w, o});
    }
  return out;
}

namespace {

std::map<std::pair<Word, int>, int> cell_index(const std::vector<CochainCell>& basis) {
  std::map<std::pair<Word, int>, int> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[{basis[i].word, basis[i].out}] = static_cast<int>(i);
  return idx;
}

}  // namespace

ExactMatrix hochschild_matrix(const GradedBasis& basis, const Coderivation& d, const std::vector<CochainCell>& from,
                              const std::vector<CochainCell>& to, int degree, int max_weight) {
  ExactMatrix a(static_cast<int>(to.size()), static_cast<int>(from.size()));
  auto idx = cell_index(to);
  std::vector<Coderivation> images(from.size());
  parallel_for(from.size(), [&](size_t c) {
    Coderivation e{degree, {{from[c].word, Vec{{from[c].out, Scalar(1)}}}}};
    images[c] = coderivation_bracket(basis, d, e, max_weight);
  });
  for (size_t c = 0; c < from.size(); ++c) {
    for (const auto& [w, row] : images[c].comps)
      for (const auto& [o, v] : row) {
        auto it = idx.find({w, o});
        if (it == idx.end()) throw Error("Hochschild differential leaves the slice at " + basis.word_name(w));
        a.set(it->second, static_cast<int>(c), v);
      }
  }
  return a;
}

CochainSliceSpec cochain_complex(const CategoryPresentation& cat, const MultiplicationFamily& m, int min_degree,
                                 int max_degree, int max_weight) {
  CochainSliceSpec spec;
  spec.min_degree = min_degree;
  spec.max_degree = max_degree;
  spec.max_weight = max_weight;
  for (int k = min_degree; k <= max_degree; ++k) spec.bases[k] = cochain_basis(cat, k, max_weight);
  Coderivation d = bar_codifferential(cat.basis, m);
  for (int k = min_degree; k < max_degree; ++k)
    spec.differential[k] = hochschild_matrix(cat.basis, d, spec.bases[k], spec.bases[k + 1], k, max_weight);
  return spec;
}

CochainSliceSpec compact_cochain_complex(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                         int min_degree, int max_degree, int max_weight) {
  if (m.has(1)) throw PreconditionFailed("compactly supported cochains need a minimal structure (m_1 = 0)");
  CochainSliceSpec spec = cochain_complex(cat, m, min_degree, max_degree, max_weight);
  spec.compact = true;
  return spec;
}

Coderivation cochain_from_column(const std::vector<CochainCell>& basis, int degree, const Column& v) {
  Coderivation c{degree, {}};
  for (size_t i = 0; i < basis.size(); ++i)
    if (!v[i].is_zero()) add_to(c.comps, basis[i].word, basis[i].out, v[i]);
  c.normalize();
  return c;
}

Column column_from_cochain(const std::vector<CochainCell>& basis, const Coderivation& c) {
  Column v(basis.size());
  auto idx = cell_index(basis);
  for (const auto& [w, row] : c.comps)
    for (const auto& [o, x] : row) {
      auto it = idx.find({w, o});
      if (it == idx.end()) throw Error("cochain component outside the slice at output " + std::to_string(o));
      v[static_cast<size_t>(it->second)] = x;
    }
  return v;
}

namespace {

// Incremental echelon basis: rows keyed by pivot column, each reduced
// against the earlier pivots.
class EchelonSpan {
 public:
  size_t size() const { return rows_.size(); }
  // Adds v if it is independent of the span; returns whether it was.
  bool extend(const Column& v) {
    std::map<int, Scalar> r;
    for (size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) r.emplace(static_cast<int>(i), v[i]);
    while (!r.empty()) {
      auto lead = r.begin();
      auto it = rows_.find(lead->first);
      if (it == rows_.end()) {
        Scalar inv = Scalar(1) / lead->second;
        for (auto& [c, x] : r) x *= inv;
        rows_.emplace(lead->first, std::move(r));
        return true;
      }
      Scalar f = lead->second;
      for (const auto& [c, x] : it->second) {
        auto [jt, ins] = r.try_emplace(c, -(f * x));
        if (!ins) {
          jt->second -= f * x;
          if (jt->second.is_zero()) r.erase(jt);
        }
      }
    }
    return false;
  }

 private:
  std::map<int, std::map<int, Scalar>> rows_;  // pivot -> row with leading 1
};

}  // namespace

HochschildResult hochschild_cohomology(const CochainSliceSpec& spec, const RingDescriptor& ring, int degree) {
  const int k = degree - 1;
  if (k < spec.min_degree || k > spec.max_degree) throw PreconditionFailed("degree outside the cochain slice");
  const auto& basis = spec.bases.at(k);
  const int dim = static_cast<int>(basis.size());
  auto in_it = spec.differential.find(k - 1);
  auto out_it = spec.differential.find(k);
  int prev = spec.bases.count(k - 1) ? static_cast<int>(spec.bases.at(k - 1).size()) : 0;
  int next = spec.bases.count(k + 1) ? static_cast<int>(spec.bases.at(k + 1).size()) : 0;
  if ((in_it == spec.differential.end() && prev > 0) || (out_it == spec.differential.end() && next > 0) ||
      (prev > 0 && k - 1 < spec.min_degree) || (next > 0 && k + 1 > spec.max_degree))
    throw PreconditionFailed("cochain slice lacks the neighbouring degrees of HH^" + std::to_string(degree));
  ExactMatrix in = in_it != spec.differential.end() ? in_it->second : ExactMatrix(dim, 0);
  ExactMatrix out = out_it != spec.differential.end() ? out_it->second : ExactMatrix(0, dim);

  HochschildResult r;
  r.degree = degree;
  r.max_weight = spec.max_weight;
  r.invariants = coeff::homology_invariants(in, out, dim, ring);

  // Representatives over the fraction field, adapted to the weight filtration.
  RingDescriptor field = ring.fraction_field();
  EchelonSpan chosen;
  const ExactMatrix in_t = in.transpose();
  for (int c = 0; c < in.cols(); ++c) {
    Column v(static_cast<size_t>(dim));
    for (const auto& [row, x] : in_t.row(c)) v[static_cast<size_t>(row)] = x;
    chosen.extend(v);
  }
  const size_t boundaries = chosen.size();
  for (int level = spec.max_weight; level >= 1; --level) {
    std::vector<int> cols;
    for (int i = 0; i < dim; ++i)
      if (static_cast<int>(basis[static_cast<size_t>(i)].word.size()) >= level) cols.push_back(i);
    ExactMatrix sub(out.rows(), static_cast<int>(cols.size()));
    for (int row = 0; row < out.rows(); ++row)
      for (const auto& [c, x] : out.row(row)) {
        auto it = std::lower_bound(cols.begin(), cols.end(), c);
        if (it != cols.end() && *it == c) sub.set(row, static_cast<int>(it - cols.begin()), x);
      }
    for (const Column& z : coeff::kernel_basis(sub, field)) {
      Column full(static_cast<size_t>(dim));
      for (size_t i = 0; i < cols.size(); ++i) full[static_cast<size_t>(cols[i])] = z[i];
      if (chosen.extend(full))
        r.classes.push_back({cochain_from_column(basis, k, full), degree, level});
    }
    r.weight_dims[level] = static_cast<int>(chosen.size() - boundaries);
  }
  return r;
}

HochschildResult hochschild_cohomology(const CategoryPresentation& cat, const MultiplicationFamily& m, int degree,
                                       int max_weight) {
  CochainSliceSpec spec = cochain_complex(cat, m, degree - 2, degree, max_weight);
  return hochschild_cohomology(spec, cat.ring, degree);
}

namespace {

void require_graded(const MultiplicationFamily& m) {
  for (const auto& [arity, table] : m.components)
    if (arity != 2 && !table.empty())
      throw PreconditionFailed("bigraded cohomology needs a graded category (only m_2), found m_" +
                               std::to_string(arity));
}

// The (p, q) cell of a complex built through cochain degree k + 1.
std::optional<BigradedCell> cell_of(const CochainSliceSpec& spec, int p, int q, int max_weight) {
  const int k = p + q - 1;
  auto block = [&](int deg, int arity) {
    std::vector<int> idx;
    auto it = spec.bases.find(deg);
    if (it == spec.bases.end()) return idx;
    for (size_t i = 0; i < it->second.size(); ++i)
      if (static_cast<int>(it->second[i].word.size()) == arity) idx.push_back(static_cast<int>(i));
    return idx;
  };
  auto restrict = [&](int deg, const std::vector<int>& rows, const std::vector<int>& cols) {
    ExactMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    if (rows.empty() || cols.empty()) return s;
    const ExactMatrix& a = spec.differential.at(deg);
    for (size_t r = 0; r < rows.size(); ++r)
      for (size_t c = 0; c < cols.size(); ++c) {
        Scalar x = a.get(rows[r], cols[c]);
        if (!x.is_zero()) s.set(static_cast<int>(r), static_cast<int>(c), x);
      }
    return s;
  };
  std::vector<int> here = block(k, p);
  if (here.empty()) return std::nullopt;
  std::vector<int> before = p > 1 ? block(k - 1, p - 1) : std::vector<int>{};
  std::vector<int> after = p < max_weight ? block(k + 1, p + 1) : std::vector<int>{};
  BigradedCell c;
  c.dim = static_cast<int>(here.size());
  c.in = restrict(k - 1, here, before);
  c.out = restrict(k, after, here);
  return c;
}

}  // namespace

std::optional<BigradedCell> bigraded_cell(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                          int max_weight, int p, int q) {
  require_graded(m);
  if (p < 1 || p > max_weight) return std::nullopt;
  const int k = p + q - 1;
  CochainSliceSpec spec = cochain_complex(cat, m, k - 1, k + 1, max_weight);
  return cell_of(spec, p, q, max_weight);
}

BigradedTable bigraded_cohomology(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight) {
  require_graded(m);
  auto [lo, hi] = cochain_degree_range(cat, max_weight);
  CochainSliceSpec spec = cochain_complex(cat, m, lo - 1, hi + 1, max_weight);
  BigradedTable t;
  t.max_weight = max_weight;
  for (int k = lo; k <= hi; ++k)
    for (int p = 1; p <= max_weight; ++p) {
      auto c = cell_of(spec, p, k + 1 - p, max_weight);
      if (c) t.cells[{p, k + 1 - p}] = coeff::homology_invariants(c->in, c->out, c->dim, cat.ring);
    }
  return t;
}

std::vector<Word> cyclic_chains(const CategoryPresentation& cat, int letters) {
  std::vector<Word> out;
  for (const auto& w : cat.composable_words(letters))
    if (cat.basis.word_source(w) == cat.basis.word_target(w)) out.push_back(w);
  return out;
}

namespace {

TensorVec boundary(const GradedBasis& basis, const Coderivation& d, const Word& f, bool printed_range) {
  TensorVec out;
  const int n = static_cast<int>(f.size()) - 1;
  auto sd = [&](int i) { return basis.shifted_degree(f[static_cast<size_t>(i)]); };
  int total = 0;
  for (int i = 0; i <= n; ++i) total += sd(i);

  auto emit = [&](const Word& input, const Word& before, const Word& after, int parity) {
    auto it = d.comps.find(input);
    if (it == d.comps.end()) return;
    for (const auto& [o, c] : it->second) {
      Word w = before;
      w.push_back(o);
      w.insert(w.end(), after.begin(), after.end());
      add_to(out, w, c * coeff::sign(parity));
    }
  };

  // first sum: d_j on f_{n-k+1} .. f_n, f_0, .. f_{j-k-1}
  for (int j = 1; j <= n + 1; ++j)
    for (int k = 0; k <= j - 1; ++k) {
      if (printed_range && j + k > n) continue;
      Word rotated;
      for (int i = n - k + 1; i <= n; ++i) rotated.push_back(f[static_cast<size_t>(i)]);
      for (int i = 0; i <= n - k; ++i) rotated.push_back(f[static_cast<size_t>(i)]);
      int eps = 0;
      for (int l = 0; l <= k - 1; ++l) eps += sd(n - l) * (total - sd(n - l));
      Word input(rotated.begin(), rotated.begin() + j);
      Word rest(rotated.begin() + j, rotated.end());
      emit(input, {}, rest, eps);
    }
  // second sum: f_0 .. f_k ⊗ d_j(f_{k+1} .. f_{k+j}) ⊗ ...
  int lambda = 0;
  for (int k = 0; k < n; ++k) {
    lambda += sd(k);
    for (int j = 1; j + k <= n; ++j) {
      Word before(f.begin(), f.begin() + k + 1);
      Word input(f.begin() + k + 1, f.begin() + k + 1 + j);
      Word after(f.begin() + k + 1 + j, f.end());
      emit(input, before, after, lambda);
    }
  }
  return out;
}

}  // namespace

TensorVec homology_boundary(const GradedBasis& basis, const Coderivation& d, const Word& chain) {
  return boundary(basis, d, chain, false);
}

TensorVec homology_boundary_printed_range(const GradedBasis& basis, const Coderivation& d, const Word& chain) {
  return boundary(basis, d, chain, true);
}

HomologySlice homology_complex(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_letters) {
  HomologySlice s;
  s.max_letters = max_letters;
  for (int l = 1; l <= max_letters; ++l)
    for (auto& w : cyclic_chains(cat, l)) s.chains[cat.basis.word_shifted_degree(w)].push_back(std::move(w));
  for (auto& [deg, chains] : s.chains) std::sort(chains.begin(), chains.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  Coderivation d = bar_codifferential(cat.basis, m);
  for (const auto& [deg, chains] : s.chains) {
    auto next = s.chains.find(deg + 1);
    std::map<Word, int> idx;
    if (next != s.chains.end())
      for (size_t i = 0; i < next->second.size(); ++i) idx[next->second[i]] = static_cast<int>(i);
    ExactMatrix a(static_cast<int>(idx.size()), static_cast<int>(chains.size()));
    for (size_t c = 0; c < chains.size(); ++c)
      for (const auto& [w, v] : homology_boundary(cat.basis, d, chains[c])) {
        auto it = idx.find(w);
        if (it == idx.end()) throw Error("homology boundary leaves the slice");
        a.set(it->second, static_cast<int>(c), v);
      }
    s.boundary[deg] = std::move(a);
  }
  return s;
}

std::map<int, coeff::ModuleInvariants> hochschild_homology(const HomologySlice& slice, const RingDescriptor& ring) {
  std::map<int, coeff::ModuleInvariants> out;
  for (const auto& [deg, chains] : slice.chains) {
    int dim = static_cast<int>(chains.size());
    auto in_it = slice.boundary.find(deg - 1);
    ExactMatrix in = in_it != slice.boundary.end() ? in_it->second : ExactMatrix(dim, 0);
    ExactMatrix out_m = slice.boundary.at(deg);
    out[deg] = coeff::homology_invariants(in, out_m, dim, ring);
  }
  return out;
}

}  // namespace ainf
