#include "ainf/acat.hpp"

#include <algorithm>
#include <functional>

#include "ainf/error.hpp"

namespace ainf {

using coeff::sign;

namespace {

// Calls fn(arities) for every composition of n into positive parts.
void for_each_composition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      fn(parts);
      return;
    }
    for (int k = 1; k <= left; ++k) {
      parts.push_back(k);
      rec(left - k);
      parts.pop_back();
    }
  };
  rec(n);
}

std::map<int, GradedMap> graded_components(const std::map<int, MapTable>& comps, int degree_offset) {
  std::map<int, GradedMap> out;
  for (const auto& [arity, table] : comps)
    if (!table.empty()) out[arity] = GradedMap{degree_offset - arity, table};
  return out;
}

// Σ_{j+k+l=n} (-1)^{jk+l} outer_{j+1+l}(id^j ⊗ m_k ⊗ id^l)(w)
Vec insertion_sum(const GradedBasis& basis, const std::map<int, GradedMap>& outer,
                  const std::map<int, GradedMap>& m, const Word& w) {
  const int n = static_cast<int>(w.size());
  Vec acc;
  for (const auto& [k, mk] : m) {
    if (k > n) break;
    for (int j = 0; j + k <= n; ++j) {
      const int l = n - j - k;
      auto ot = outer.find(j + 1 + l);
      if (ot == outer.end()) continue;
      Word block(w.begin() + j, w.begin() + j + k);
      if (!mk.table.count(block)) continue;
      std::vector<Factor> factors;
      if (j) factors.push_back({j, nullptr});
      factors.push_back({k, &mk});
      if (l) factors.push_back({l, nullptr});
      TensorVec inner = koszul_evaluate(basis, factors, w, false);
      add_scaled(acc, apply_components(ot->second.table, inner), sign(j * k + l));
    }
  }
  return acc;
}

// Σ_r Σ_{i_1+...+i_r=n} (-1)^{s(i)} outer_r(f_{i_1} ⊗ ... ⊗ f_{i_r})(w)
Vec composition_sum(const GradedBasis& basis, const std::map<int, GradedMap>& outer,
                    const std::map<int, GradedMap>& f, const Word& w) {
  Vec acc;
  const int n = static_cast<int>(w.size());
  for_each_composition(n, [&](const std::vector<int>& parts) {
    auto ot = outer.find(static_cast<int>(parts.size()));
    if (ot == outer.end()) return;
    std::vector<Factor> factors;
    int pos = 0;
    for (int i : parts) {
      auto ft = f.find(i);
      if (ft == f.end()) return;
      if (!ft->second.table.count(Word(w.begin() + pos, w.begin() + pos + i))) return;
      factors.push_back({i, &ft->second});
      pos += i;
    }
    TensorVec inner = koszul_evaluate(basis, factors, w, false);
    add_scaled(acc, apply_components(ot->second.table, inner), sign(functor_sign(parts)));
  });
  return acc;
}

}  // namespace

std::vector<RelationViolation> check_relations(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                               int max_weight) {
  std::vector<RelationViolation> out;
  auto gm = graded_components(m.components, 2);
  for (int n = 1; n <= max_weight; ++n)
    for (const auto& w : cat.composable_words(n)) {
      Vec r = insertion_sum(cat.basis, gm, gm, w);
      if (!r.empty()) out.push_back({n, w, std::move(r)});
    }
  return out;
}

int functor_sign(const std::vector<int>& arities) {
  int s = 0, prefix = 0;
  for (size_t u = 0; u < arities.size(); ++u) {
    if (u > 0) s += (1 - arities[u]) * prefix;
    prefix += arities[u];
  }
  return s & 1;
}

std::vector<RelationViolation> check_functor(const CategoryPresentation& source, const CategoryPresentation& target,
                                             const AInfFunctor& f, const MultiplicationFamily& m,
                                             const MultiplicationFamily& m_target, int max_weight) {
  (void)target;
  std::vector<RelationViolation> out;
  auto gm = graded_components(m.components, 2);
  auto gt = graded_components(m_target.components, 2);
  auto gf = graded_components(f.components, 1);
  for (int n = 1; n <= max_weight; ++n)
    for (const auto& w : source.composable_words(n)) {
      Vec r = insertion_sum(source.basis, gf, gm, w);
      add_scaled(r, composition_sum(source.basis, gt, gf, w), Scalar(-1));
      if (!r.empty()) out.push_back({n, w, std::move(r)});
    }
  return out;
}

std::vector<RelationViolation> check_functor_bar(const CategoryPresentation& source,
                                                 const CategoryPresentation& target, const AInfFunctor& f,
                                                 const MultiplicationFamily& m,
                                                 const MultiplicationFamily& m_target, int max_weight) {
  Cofunctor bf = suspend_functor(source.basis, f);
  MapTable defect = cofunctor_defect(source.basis, target.basis, bf, bar_codifferential(source.basis, m),
                                     bar_codifferential(target.basis, m_target), max_weight);
  std::vector<RelationViolation> out;
  for (auto& [w, row] : defect)
    if (!row.empty()) out.push_back({static_cast<int>(w.size()), w, std::move(row)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.arity < b.arity; });
  return out;
}

AInfFunctor compose_functors(const CategoryPresentation& source, const CategoryPresentation& middle,
                             const AInfFunctor& g, const AInfFunctor& f, int max_weight) {
  (void)middle;
  AInfFunctor out;
  for (int o : f.object_map) {
    if (o < 0 || o >= static_cast<int>(g.object_map.size())) throw Error("functor object maps do not compose");
    out.object_map.push_back(g.object_map[static_cast<size_t>(o)]);
  }
  auto gg = graded_components(g.components, 1);
  auto gf = graded_components(f.components, 1);
  for (int n = 1; n <= max_weight; ++n)
    for (const auto& w : source.composable_words(n)) {
      Vec r = composition_sum(source.basis, gg, gf, w);
      if (!r.empty()) out.components[n][w] = std::move(r);
    }
  return out;
}

AInfCategory opposite_category(const CategoryPresentation& cat, const MultiplicationFamily& m) {
  AInfCategory op;
  op.cat = cat;
  for (auto& e : op.cat.basis.elements) std::swap(e.source, e.target);
  Coderivation d = bar_codifferential(cat.basis, m);
  Coderivation dop{1, {}};
  for (const auto& [w, row] : d.comps) {
    if (row.empty()) continue;
    const int n = static_cast<int>(w.size());
    int parity = n - 1;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) parity += cat.basis.shifted_degree(w[static_cast<size_t>(p)]) * cat.basis.shifted_degree(w[static_cast<size_t>(q)]);
    Word rev(w.rbegin(), w.rend());
    Vec v;
    add_scaled(v, row, sign(parity));
    dop.comps[rev] = std::move(v);
  }
  op.m = multiplications_from_bar(op.cat.basis, dop);
  return op;
}

}  // namespace ainf
