#include "ainf/transfer.hpp"

#include <sstream>

#include "ainf/error.hpp"

namespace ainf {

using coeff::sign;

namespace {

Vec apply1(const MapTable& t, const Vec& v) {
  Vec out;
  for (const auto& [i, c] : v) {
    auto it = t.find(Word{i});
    if (it != t.end()) add_scaled(out, it->second, c);
  }
  return out;
}

// Bilinear extension of a two-letter table to a pair of vectors.
Vec apply2(const MapTable& t, const Vec& a, const Vec& b) {
  Vec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = t.find(Word{i, j});
      if (it != t.end()) add_scaled(out, it->second, x * y);
    }
  return out;
}

void require_dg(const MultiplicationFamily& m) {
  for (const auto& [arity, table] : m.components)
    if (arity > 2 && !table.empty())
      throw PreconditionFailed("transfer needs a dg input (m_n = 0 for n > 2), found m_" + std::to_string(arity));
}

int homogeneous_degree(const GradedBasis& basis, const Vec& v, const char* what) {
  if (v.empty()) throw PreconditionFailed(std::string("Massey product: class ") + what + " is zero");
  int d = basis.degree(v.begin()->first);
  for (const auto& [i, c] : v)
    if (basis.degree(i) != d) throw PreconditionFailed(std::string("Massey product: class ") + what + " is not homogeneous");
  return d;
}

MinimalModel assemble(const CategoryPresentation& cat, const ContractionData& con, MapTable mt, MapTable ft,
                      std::vector<std::string> provenance, bool shifted) {
  MinimalModel out;
  out.contraction = con;
  out.h.cat = con.cohomology;
  out.h.cat.ring = cat.ring;
  out.provenance = std::move(provenance);
  std::vector<int> id(static_cast<size_t>(cat.object_count()));
  for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  prune(mt);
  prune(ft);
  if (shifted) {
    out.h.m = multiplications_from_bar(out.h.cat.basis, Coderivation{1, std::move(mt)});
    out.f = desuspend_functor(out.h.cat.basis, Cofunctor{id, std::move(ft)});
  } else {
    for (auto& [w, row] : mt) out.h.m.components[static_cast<int>(w.size())][w] = row;
    out.f.object_map = id;
    for (auto& [w, row] : ft) out.f.components[static_cast<int>(w.size())][w] = row;
  }
  out.h.m.normalize();
  out.f.normalize();
  return out;
}

}  // namespace

ContractionData contraction_from_dg(const CategoryPresentation& cat, const MultiplicationFamily& m) {
  require_dg(m);
  return cohomology_category(cat, m).contraction;
}

MinimalModel transfer(const CategoryPresentation& cat, const MultiplicationFamily& m, const ContractionData& con,
                      int max_weight) {
  require_dg(m);
  const GradedBasis& hb = con.cohomology.basis;
  const MapTable d2 = suspend_multiplication(cat.basis, GradedMap{0, m.get(2)}, 2).table;
  const MapTable ht = scaled(con.h1, Scalar(-1));

  MapTable ft;  // F~ on words of H
  MapTable mt;  // m~ on words of H, weight >= 2
  std::vector<std::string> provenance;
  for (int e = 0; e < hb.size(); ++e) {
    auto it = con.f1.find(Word{e});
    ft[Word{e}] = it == con.f1.end() ? Vec{} : it->second;
  }
  for (int n = 2; n <= max_weight; ++n) {
    auto words = con.cohomology.composable_words(n);
    int nonzero = 0;
    for (const auto& w : words) {
      Vec y;
      for (int i = 1; i < n; ++i) {
        auto left = ft.find(Word(w.begin(), w.begin() + i));
        auto right = ft.find(Word(w.begin() + i, w.end()));
        if (left == ft.end() || right == ft.end()) continue;
        add_scaled(y, apply2(d2, left->second, right->second), Scalar(1));
      }
      Vec f = apply1(ht, y);
      Vec g = apply1(con.g1, y);
      if (!g.empty()) {
        ++nonzero;
        mt[w] = std::move(g);
      }
      if (!f.empty()) ft[w] = std::move(f);
    }
    std::ostringstream os;
    os << "arity " << n << ": " << words.size() << " words, " << nonzero << " nonzero outputs";
    provenance.push_back(os.str());
  }
  return assemble(cat, con, std::move(mt), std::move(ft), std::move(provenance), true);
}

MinimalModel minimal_model(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight) {
  return transfer(cat, m, contraction_from_dg(cat, m), max_weight);
}

MinimalModel transfer_inductive(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                const ContractionData& con, int max_weight) {
  require_dg(m);
  const GradedBasis& hb = con.cohomology.basis;
  const MapTable& m2 = m.get(2);
  MapTable ft, mt;
  for (int e = 0; e < hb.size(); ++e) {
    auto it = con.f1.find(Word{e});
    ft[Word{e}] = it == con.f1.end() ? Vec{} : it->second;
  }
  for (int n = 2; n <= max_weight; ++n)
    for (const auto& w : con.cohomology.composable_words(n)) {
      Vec y;
      for (int i = 1; i < n; ++i) {
        Word pre(w.begin(), w.begin() + i), suf(w.begin() + i, w.end());
        auto left = ft.find(pre);
        auto right = ft.find(suf);
        if (left == ft.end() || right == ft.end()) continue;
        // (-1)^{s(i, n-i)} and the Koszul sign of F_{n-i} passing the prefix
        int parity = functor_sign({i, n - i}) + (1 - (n - i)) * hb.word_degree(pre);
        add_scaled(y, apply2(m2, left->second, right->second), sign(parity));
      }
      Vec f = apply1(con.h1, y);
      Vec g = apply1(con.g1, y);
      if (!g.empty()) mt[w] = std::move(g);
      if (!f.empty()) ft[w] = std::move(f);
    }
  return assemble(cat, con, std::move(mt), std::move(ft), {}, false);
}

MasseyProduct massey_oracle(const CategoryPresentation&, const MultiplicationFamily& m,
                            const ContractionData& con, const Vec& a, const Vec& b, const Vec& c) {
  require_dg(m);
  const GradedBasis& hb = con.cohomology.basis;
  const MapTable& m1 = m.get(1);
  const MapTable& m2 = m.get(2);
  MasseyProduct out;
  int da = homogeneous_degree(hb, a, "a");
  int db = homogeneous_degree(hb, b, "b");
  int dc = homogeneous_degree(hb, c, "c");
  Vec alpha = apply1(con.f1, a), beta = apply1(con.f1, b), gamma = apply1(con.f1, c);
  Vec abar, bbar;
  add_scaled(abar, alpha, sign(1 + da));
  add_scaled(bbar, beta, sign(1 + db));

  Vec ab = apply2(m2, abar, beta);
  Vec bc = apply2(m2, bbar, gamma);
  if (!apply1(con.g1, ab).empty()) {
    out.reason = "[a][b] != 0";
    return out;
  }
  if (!apply1(con.g1, bc).empty()) {
    out.reason = "[b][c] != 0";
    return out;
  }
  Vec u, v;
  add_scaled(u, apply1(con.h1, ab), Scalar(-1));
  add_scaled(v, apply1(con.h1, bc), Scalar(-1));
  int du = da + db - 1;
  Vec ubar;
  add_scaled(ubar, u, sign(1 + du));
  Vec rep = apply2(m2, abar, v);
  add_scaled(rep, apply2(m2, ubar, gamma), Scalar(1));
  if (!apply1(m1, rep).empty()) throw Error("Massey representative is not a cocycle");
  out.defined = true;
  out.representative = rep;
  out.value = apply1(con.g1, rep);

  // a·H^{|b|+|c|-1} + H^{|a|+|b|-1}·c
  for (int x = 0; x < hb.size(); ++x) {
    Vec fx = apply1(con.f1, Vec{{x, Scalar(1)}});
    if (hb.degree(x) == db + dc - 1) {
      Vec p = apply1(con.g1, apply2(m2, alpha, fx));
      if (!p.empty()) out.indeterminacy.push_back(std::move(p));
    }
    if (hb.degree(x) == da + db - 1) {
      Vec p = apply1(con.g1, apply2(m2, fx, gamma));
      if (!p.empty()) out.indeterminacy.push_back(std::move(p));
    }
  }
  return out;
}

bool equal_modulo(const Vec& x, const Vec& y, const std::vector<Vec>& span, int dim) {
  coeff::ExactMatrix with(static_cast<int>(span.size()) + 1, dim), without(static_cast<int>(span.size()), dim);
  for (size_t r = 0; r < span.size(); ++r)
    for (const auto& [i, c] : span[r]) {
      with.set(static_cast<int>(r), i, c);
      without.set(static_cast<int>(r), i, c);
    }
  Vec diff = x;
  add_scaled(diff, y, Scalar(-1));
  if (diff.empty()) return true;
  for (const auto& [i, c] : diff) with.set(static_cast<int>(span.size()), i, c);
  return coeff::rank(with) == coeff::rank(without);
}

}  // namespace ainf
