#include "ainf/bar.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "ainf/error.hpp"

namespace ainf {

using coeff::sign;

bool Coderivation::is_zero() const {
  for (const auto& [w, row] : comps)
    if (!row.empty()) return false;
  return true;
}

MapTable Coderivation::weight_part(int weight) const {
  MapTable out;
  for (const auto& [w, row] : comps)
    if (static_cast<int>(w.size()) == weight && !row.empty()) out[w] = row;
  return out;
}

int Coderivation::min_weight() const {
  int best = 0;
  for (const auto& [w, row] : comps)
    if (!row.empty() && (best == 0 || static_cast<int>(w.size()) < best)) best = static_cast<int>(w.size());
  return best;
}

int Coderivation::max_weight() const {
  int best = 0;
  for (const auto& [w, row] : comps)
    if (!row.empty()) best = std::max(best, static_cast<int>(w.size()));
  return best;
}

Coderivation Coderivation::truncated(int max_weight) const {
  Coderivation out{degree, {}};
  for (const auto& [w, row] : comps)
    if (static_cast<int>(w.size()) <= max_weight && !row.empty()) out.comps[w] = row;
  return out;
}

Coderivation operator+(const Coderivation& a, const Coderivation& b) {
  if (!a.is_zero() && !b.is_zero() && a.degree != b.degree) throw Error("adding coderivations of different degrees");
  Coderivation out{a.is_zero() ? b.degree : a.degree, a.comps};
  add_scaled(out.comps, b.comps, Scalar(1));
  return out;
}

Coderivation operator-(const Coderivation& a, const Coderivation& b) { return a + Scalar(-1) * b; }

Coderivation operator*(const Scalar& c, const Coderivation& a) { return Coderivation{a.degree, scaled(a.comps, c)}; }

bool operator==(const Coderivation& a, const Coderivation& b) {
  MapTable x = a.comps, y = b.comps;
  prune(x);
  prune(y);
  if (x.empty() && y.empty()) return true;
  return a.degree == b.degree && x == y;
}

Cofunctor Cofunctor::identity(const CategoryPresentation& cat) {
  Cofunctor f;
  for (int i = 0; i < cat.object_count(); ++i) f.object_map.push_back(i);
  for (int i = 0; i < cat.dim(); ++i) f.comps[Word{i}] = Vec{{i, Scalar(1)}};
  return f;
}

Cofunctor Cofunctor::truncated(int max_weight) const {
  Cofunctor out{object_map, {}};
  for (const auto& [w, row] : comps)
    if (static_cast<int>(w.size()) <= max_weight && !row.empty()) out.comps[w] = row;
  return out;
}

bool operator==(const Cofunctor& a, const Cofunctor& b) {
  MapTable x = a.comps, y = b.comps;
  prune(x);
  prune(y);
  return a.object_map == b.object_map && x == y;
}

std::vector<std::pair<Word, Word>> comultiplication_split(const Word& w) {
  std::vector<std::pair<Word, Word>> out;
  for (size_t i = 1; i < w.size(); ++i)
    out.emplace_back(Word(w.begin(), w.begin() + static_cast<long>(i)), Word(w.begin() + static_cast<long>(i), w.end()));
  return out;
}

TensorVec extend_coderivation(const GradedBasis& basis, const Coderivation& d, const Word& w) {
  TensorVec out;
  const size_t n = w.size();
  int prefix_deg = 0;
  for (size_t j = 0; j < n; ++j) {
    Scalar s = sign(d.degree * prefix_deg);
    for (size_t k = 1; j + k <= n; ++k) {
      Word block(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(j + k));
      auto it = d.comps.find(block);
      if (it == d.comps.end()) continue;
      for (const auto& [out_letter, c] : it->second) {
        Word nw(w.begin(), w.begin() + static_cast<long>(j));
        nw.push_back(out_letter);
        nw.insert(nw.end(), w.begin() + static_cast<long>(j + k), w.end());
        add_to(out, nw, c * s);
      }
    }
    prefix_deg += basis.shifted_degree(w[j]);
  }
  return out;
}

TensorVec extend_coderivation(const GradedBasis& basis, const Coderivation& d, const TensorVec& v) {
  TensorVec out;
  for (const auto& [w, c] : v) add_scaled(out, extend_coderivation(basis, d, w), c);
  return out;
}

TensorVec extend_cofunctor(const Cofunctor& f, const Word& w) {
  const size_t n = w.size();
  // tail[p] = action on w[p..n)
  std::vector<TensorVec> tail(n + 1);
  tail[n] = TensorVec{{Word{}, Scalar(1)}};
  for (size_t p = n; p-- > 0;) {
    for (size_t k = 1; p + k <= n; ++k) {
      if (tail[p + k].empty()) continue;
      auto it = f.comps.find(Word(w.begin() + static_cast<long>(p), w.begin() + static_cast<long>(p + k)));
      if (it == f.comps.end()) continue;
      for (const auto& [letter, c] : it->second) {
        for (const auto& [rest, r] : tail[p + k]) {
          Word nw;
          nw.reserve(rest.size() + 1);
          nw.push_back(letter);
          nw.insert(nw.end(), rest.begin(), rest.end());
          add_to(tail[p], nw, c * r);
        }
      }
    }
  }
  return tail[0];
}

TensorVec extend_cofunctor(const Cofunctor& f, const TensorVec& v) {
  TensorVec out;
  for (const auto& [w, c] : v) add_scaled(out, extend_cofunctor(f, w), c);
  return out;
}

Vec project(const TensorVec& v) {
  Vec out;
  for (const auto& [w, c] : v)
    if (w.size() == 1) add_to(out, w[0], c);
  return out;
}

Vec apply_components(const MapTable& comps, const TensorVec& v) {
  Vec out;
  for (const auto& [w, c] : v) {
    auto it = comps.find(w);
    if (it != comps.end()) add_scaled(out, it->second, c);
  }
  return out;
}

Coderivation bar_codifferential(const GradedBasis& basis, const MultiplicationFamily& m) {
  Coderivation d{1, {}};
  for (const auto& [arity, table] : m.components) {
    GradedMap di = suspend_multiplication(basis, GradedMap{2 - arity, table}, arity);
    for (auto& [w, row] : di.table) d.comps[w] = std::move(row);
  }
  return d;
}

MultiplicationFamily multiplications_from_bar(const GradedBasis& basis, const Coderivation& d) {
  if (!d.is_zero() && d.degree != 1) throw Error("bar codifferential must have degree 1");
  std::map<int, MapTable> by_weight;
  for (const auto& [w, row] : d.comps)
    if (!row.empty()) by_weight[static_cast<int>(w.size())][w] = row;
  MultiplicationFamily m;
  for (const auto& [arity, table] : by_weight)
    m.components[arity] = desuspend_multiplication(basis, GradedMap{1, table}, arity).table;
  return m;
}

namespace {

using Preimage = std::vector<std::pair<Word, Scalar>>;
using PreimageIndex = std::map<int, Preimage>;

PreimageIndex index_preimages(const MapTable& comps) {
  PreimageIndex idx;
  for (const auto& [w, row] : comps)
    for (const auto& [letter, c] : row) idx[letter].emplace_back(w, c);
  return idx;
}

}  // namespace

MapTable compose_support(const GradedBasis& basis, const MapTable& outer, const MapTable* inner, int inner_degree,
                         const MapTable* along, int max_weight) {
  PreimageIndex inner_idx, along_idx;
  if (inner) inner_idx = index_preimages(*inner);
  if (along) along_idx = index_preimages(*along);
  static const Preimage kNone;
  auto along_pre = [&](int letter, Preimage& scratch) -> const Preimage& {
    if (!along) {
      scratch.assign(1, {Word{letter}, Scalar(1)});
      return scratch;
    }
    auto it = along_idx.find(letter);
    return it == along_idx.end() ? kNone : it->second;
  };

  MapTable result;
  for (const auto& [u, row] : outer) {
    if (row.empty()) continue;
    const int r = static_cast<int>(u.size());
    if (r > max_weight) continue;
    Word v;
    std::function<void(int, int, const Scalar&, bool)> rec = [&](int pos, int prefix_deg, const Scalar& coef,
                                                                 bool used) {
      if (pos == r) {
        if (inner && !used) return;
        Vec& dst = result[v];
        add_scaled(dst, row, coef);
        if (dst.empty()) result.erase(v);
        return;
      }
      const int letter = u[static_cast<size_t>(pos)];
      const int remaining = r - pos - 1;
      const int next_deg = prefix_deg + basis.shifted_degree(letter);
      Preimage scratch;
      for (const auto& [block, c] : along_pre(letter, scratch)) {
        if (static_cast<int>(v.size() + block.size()) + remaining > max_weight) continue;
        v.insert(v.end(), block.begin(), block.end());
        rec(pos + 1, next_deg, coef * c, used);
        v.resize(v.size() - block.size());
      }
      if (inner && !used) {
        auto it = inner_idx.find(letter);
        if (it != inner_idx.end()) {
          Scalar s = sign(inner_degree * prefix_deg);
          for (const auto& [block, c] : it->second) {
            if (static_cast<int>(v.size() + block.size()) + remaining > max_weight) continue;
            v.insert(v.end(), block.begin(), block.end());
            rec(pos + 1, next_deg, coef * c * s, true);
            v.resize(v.size() - block.size());
          }
        }
      }
    };
    rec(0, 0, Scalar(1), false);
  }
  return result;
}

MapTable compose_components(const GradedBasis& basis, const Coderivation& a, const Coderivation& b,
                            int max_weight) {
  return compose_support(basis, a.comps, &b.comps, b.degree, nullptr, max_weight);
}

Coderivation coderivation_bracket(const GradedBasis& basis, const Coderivation& a, const Coderivation& b,
                                  int max_weight) {
  Coderivation out{a.degree + b.degree, compose_components(basis, a, b, max_weight)};
  add_scaled(out.comps, compose_components(basis, b, a, max_weight), -sign(a.degree * b.degree));
  return out;
}

Coderivation coderivation_bracket_bruteforce(const CategoryPresentation& cat, const Coderivation& a,
                                             const Coderivation& b, int max_weight) {
  Coderivation out{a.degree + b.degree, {}};
  const Scalar s = -sign(a.degree * b.degree);
  for (int n = 1; n <= max_weight; ++n) {
    for (const auto& w : cat.composable_words(n)) {
      Vec v = apply_components(a.comps, extend_coderivation(cat.basis, b, w));
      add_scaled(v, apply_components(b.comps, extend_coderivation(cat.basis, a, w)), s);
      if (!v.empty()) out.comps[w] = std::move(v);
    }
  }
  return out;
}

std::vector<Word> square_violations(const CategoryPresentation& cat, const Coderivation& d, int max_weight) {
  std::vector<Word> bad;
  for (int n = 1; n <= max_weight; ++n)
    for (const auto& w : cat.composable_words(n)) {
      TensorVec once = extend_coderivation(cat.basis, d, w);
      if (!extend_coderivation(cat.basis, d, once).empty()) bad.push_back(w);
    }
  return bad;
}

}  // namespace ainf

namespace ainf {

namespace {

// Words obtained from single letters by repeatedly replacing one letter with
// a preimage block of weight >= 2; sorted by weight.
std::vector<Word> reduction_closure(int dim, const MapTable& comps, int max_weight) {
  PreimageIndex idx;
  for (const auto& [w, row] : comps)
    if (w.size() >= 2)
      for (const auto& [letter, c] : row) idx[letter].emplace_back(w, c);
  std::set<Word> seen;
  std::deque<Word> queue;
  for (int i = 0; i < dim; ++i) {
    seen.insert(Word{i});
    queue.push_back(Word{i});
  }
  while (!queue.empty()) {
    Word u = std::move(queue.front());
    queue.pop_front();
    for (size_t p = 0; p < u.size(); ++p) {
      auto it = idx.find(u[p]);
      if (it == idx.end()) continue;
      for (const auto& [block, c] : it->second) {
        if (static_cast<int>(u.size() + block.size()) - 1 > max_weight) continue;
        Word v(u.begin(), u.begin() + static_cast<long>(p));
        v.insert(v.end(), block.begin(), block.end());
        v.insert(v.end(), u.begin() + static_cast<long>(p + 1), u.end());
        if (seen.insert(v).second) queue.push_back(std::move(v));
      }
    }
  }
  std::vector<Word> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace

Cofunctor compose_cofunctors(const GradedBasis& middle, const Cofunctor& g, const Cofunctor& f, int max_weight) {
  Cofunctor out;
  for (int o : f.object_map) {
    if (o < 0 || o >= static_cast<int>(g.object_map.size())) throw Error("cofunctor object maps do not compose");
    out.object_map.push_back(g.object_map[static_cast<size_t>(o)]);
  }
  out.comps = compose_support(middle, g.comps, nullptr, 0, &f.comps, max_weight);
  return out;
}

Cofunctor inverse_isotopy(const CategoryPresentation& cat, const Cofunctor& f, int max_weight) {
  for (int i = 0; i < cat.dim(); ++i) {
    auto it = f.comps.find(Word{i});
    if (it == f.comps.end() || it->second != Vec{{i, Scalar(1)}}) throw PreconditionFailed("not an isotopy: weight-1 part is not the identity");
  }
  for (const auto& [w, row] : f.comps)
    if (w.size() == 1 && !row.empty() && row != Vec{{w[0], Scalar(1)}}) throw PreconditionFailed("not an isotopy: weight-1 part is not the identity");
  Cofunctor g{f.object_map, {}};
  for (const auto& w : reduction_closure(cat.dim(), f.comps, max_weight)) {
    if (w.size() == 1) {
      g.comps[w] = Vec{{w[0], Scalar(1)}};
      continue;
    }
    TensorVec rest = extend_cofunctor(f, w);
    add_to(rest, w, Scalar(-1));
    Vec v = apply_components(g.comps, rest);
    if (v.empty()) continue;
    for (auto& [k, c] : v) c = -c;
    g.comps[w] = std::move(v);
  }
  return g;
}

Cofunctor exp_cofunctor(const CategoryPresentation& cat, const Coderivation& c, int max_weight) {
  if (!c.is_zero() && c.degree != 0) throw PreconditionFailed("exponential needs a degree 0 coderivation");
  for (const auto& [w, row] : c.comps)
    if (w.size() == 1 && !row.empty()) throw PreconditionFailed("exponential needs a coderivation vanishing on weight 1");
  if (!cat.ring.contains_rationals()) throw UnsupportedRing("exponentials need rational coefficients, ring is " + cat.ring.name());
  std::map<Word, std::vector<Vec>> q;  // q[w][k] = proj(c^k(w))
  Cofunctor e;
  for (int i = 0; i < cat.object_count(); ++i) e.object_map.push_back(i);
  for (const auto& w : reduction_closure(cat.dim(), c.comps, max_weight)) {
    std::vector<Vec> qs(w.size());
    if (w.size() == 1) {
      qs[0] = Vec{{w[0], Scalar(1)}};
    } else {
      TensorVec cw = extend_coderivation(cat.basis, c, w);
      for (size_t k = 1; k < w.size(); ++k) {
        for (const auto& [u, a] : cw) {
          auto it = q.find(u);
          if (it == q.end() || k - 1 >= it->second.size()) continue;
          add_scaled(qs[k], it->second[k - 1], a);
        }
      }
    }
    Vec total;
    Scalar fact(1);
    for (size_t k = 0; k < qs.size(); ++k) {
      if (k > 0) fact *= Scalar(static_cast<long>(k));
      add_scaled(total, qs[k], Scalar(1) / fact);
    }
    if (!total.empty()) e.comps[w] = std::move(total);
    q.emplace(w, std::move(qs));
  }
  return e;
}

Coderivation conjugate(const CategoryPresentation& cat, const Cofunctor& f, const Coderivation& d,
                       const Cofunctor& g, int max_weight) {
  MapTable dg = compose_support(cat.basis, d.comps, nullptr, 0, &g.comps, max_weight);
  return Coderivation{d.degree, compose_support(cat.basis, f.comps, &dg, d.degree, &g.comps, max_weight)};
}

MapTable cofunctor_defect(const GradedBasis& source, const GradedBasis& target, const Cofunctor& f,
                          const Coderivation& d_source, const Coderivation& d_target, int max_weight) {
  MapTable out = compose_support(source, f.comps, &d_source.comps, d_source.degree, nullptr, max_weight);
  add_scaled(out, compose_support(target, d_target.comps, nullptr, 0, &f.comps, max_weight), Scalar(-1));
  return out;
}

Cofunctor suspend_functor(const GradedBasis& source, const AInfFunctor& f) {
  Cofunctor out{f.object_map, {}};
  for (const auto& [arity, table] : f.components)
    for (const auto& [w, row] : table) {
      if (row.empty()) continue;
      if (static_cast<int>(w.size()) != arity) throw Error("functor entry arity differs from its component");
      out.comps[w] = scaled(MapTable{{w, row}}, sign(desuspension_parity(source, w)))[w];
    }
  return out;
}

AInfFunctor desuspend_functor(const GradedBasis& source, const Cofunctor& f) {
  AInfFunctor out;
  out.object_map = f.object_map;
  for (const auto& [w, row] : f.comps) {
    if (row.empty()) continue;
    Vec v;
    add_scaled(v, row, sign(desuspension_parity(source, w)));
    out.components[static_cast<int>(w.size())][w] = std::move(v);
  }
  return out;
}

}  // namespace ainf
