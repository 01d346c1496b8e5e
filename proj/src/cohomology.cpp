#include <algorithm>
#include <sstream>

#include "ainf/acat.hpp"
#include "ainf/error.hpp"

namespace ainf {

using coeff::Column;
using coeff::ExactMatrix;

namespace {

struct DegreeSplit {
  std::vector<int> elems;  // global indices of this degree
  std::vector<Column> b, h, w;
  ExactMatrix inverse;  // coordinates in [b | h | w]
};

Column unit(size_t n, size_t i) {
  Column c(n);
  c[i] = Scalar(1);
  return c;
}

// Appends v to rows if it is independent of them; returns whether it was.
bool extend_if_independent(std::vector<Column>& chosen, const Column& v) {
  ExactMatrix m(static_cast<int>(chosen.size()) + 1, static_cast<int>(v.size()));
  for (size_t r = 0; r < chosen.size(); ++r)
    for (size_t c = 0; c < v.size(); ++c) m.set(static_cast<int>(r), static_cast<int>(c), chosen[r][c]);
  for (size_t c = 0; c < v.size(); ++c) m.set(static_cast<int>(chosen.size()), static_cast<int>(c), v[c]);
  if (coeff::rank(m) <= static_cast<int>(chosen.size())) return false;
  chosen.push_back(v);
  return true;
}

std::string combination_name(const GradedBasis& basis, const std::vector<int>& elems, const Column& v) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Scalar c = v[i];
    bool neg = c.is_constant() && c.constant() < 0;
    if (neg) c = -c;
    if (!first || neg) os << (neg ? "-" : "+");
    first = false;
    if (!c.is_one()) os << c.to_string() << "*";
    os << basis[elems[i]].name;
  }
  return "[" + os.str() + "]";
}

Vec apply_table(const MapTable& t, const Vec& v) {
  Vec out;
  for (const auto& [i, c] : v) {
    auto it = t.find(Word{i});
    if (it != t.end()) add_scaled(out, it->second, c);
  }
  return out;
}

}  // namespace

CohomologyCategory cohomology_category(const CategoryPresentation& cat, const MultiplicationFamily& m) {
  const RingDescriptor& ring = cat.ring;
  const MapTable& m1 = m.get(1);
  CohomologyCategory out;
  CategoryPresentation& H = out.h.cat;
  H.ring = ring;
  H.objects = cat.objects;
  ContractionData& con = out.contraction;

  for (int x = 0; x < cat.object_count(); ++x)
    for (int y = 0; y < cat.object_count(); ++y) {
      std::vector<int> hom = cat.hom(x, y);
      if (hom.empty()) continue;
      std::map<int, DegreeSplit> by_deg;
      for (int i : hom) by_deg[cat.basis.degree(i)].elems.push_back(i);
      auto local = [&](int deg, int global) -> int {
        const auto& e = by_deg[deg].elems;
        auto it = std::find(e.begin(), e.end(), global);
        return it == e.end() ? -1 : static_cast<int>(it - e.begin());
      };
      // d_k : degree k -> degree k+1 in local coordinates
      auto diff = [&](int k) {
        const auto& src = by_deg[k].elems;
        const auto& tgt = by_deg[k + 1].elems;
        ExactMatrix d(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        for (size_t c = 0; c < src.size(); ++c) {
          auto it = m1.find(Word{src[c]});
          if (it == m1.end()) continue;
          for (const auto& [o, v] : it->second) {
            int r = local(k + 1, o);
            if (r < 0) throw Error("m_1 does not preserve hom spaces or has the wrong degree");
            d.set(r, static_cast<int>(c), v);
          }
        }
        return d;
      };
      std::vector<int> degrees;
      for (const auto& [k, s] : by_deg) degrees.push_back(k);
      for (int k : degrees) by_deg[k - 1], by_deg[k + 1];  // make neighbours exist

      if (!ring.is_field()) {
        for (int k : degrees) {
          auto inv = coeff::homology_invariants(diff(k - 1), diff(k), static_cast<int>(by_deg[k].elems.size()), ring);
          if (!inv.is_free()) {
            std::ostringstream os;
            os << "cohomology of hom(" << cat.objects[static_cast<size_t>(x)] << "," << cat.objects[static_cast<size_t>(y)]
               << ") in degree " << k << " has torsion, divisors:";
            for (const auto& dv : inv.divisors) os << " (" << ring.format(dv) << ")";
            throw PreconditionFailed(os.str());
          }
        }
      }

      for (int k : degrees) {
        DegreeSplit& s = by_deg[k];
        const size_t n = s.elems.size();
        ExactMatrix dprev = diff(k - 1);
        coeff::RowEchelon img = coeff::rref(dprev.transpose());
        for (int r = 0; r < img.rank(); ++r) {
          Column v(n);
          for (const auto& [c, val] : img.reduced.row(r)) v[static_cast<size_t>(c)] = val;
          s.b.push_back(std::move(v));
        }
        std::vector<Column> span = s.b;
        for (auto& z : coeff::kernel_basis(diff(k), ring.fraction_field()))
          if (extend_if_independent(span, z)) s.h.push_back(z);
        for (size_t i = 0; i < n; ++i)
          if (extend_if_independent(span, unit(n, i))) s.w.push_back(unit(n, i));
        if (span.size() != n) throw Error("internal: splitting does not span");
        ExactMatrix basis_mat(static_cast<int>(n), static_cast<int>(n));
        for (size_t c = 0; c < n; ++c)
          for (size_t r = 0; r < n; ++r) basis_mat.set(static_cast<int>(r), static_cast<int>(c), span[c][r]);
        s.inverse = coeff::rref(basis_mat, true).transform;
      }

      // H basis, F_1
      std::map<int, std::vector<int>> h_index;  // degree -> H indices
      for (int k : degrees) {
        DegreeSplit& s = by_deg[k];
        for (const auto& v : s.h) {
          std::string name = combination_name(cat.basis, s.elems, v);
          int count = 0;
          for (const auto& c : v) count += c.is_zero() ? 0 : 1;
          if (count == 1) {
            for (size_t i = 0; i < v.size(); ++i)
              if (v[i].is_one()) name = "[" + cat.basis[s.elems[i]].name + "]";
          }
          int t = H.add_element(name, k, x, y);
          h_index[k].push_back(t);
          Vec rep;
          for (size_t i = 0; i < v.size(); ++i) add_to(rep, s.elems[i], v[i]);
          con.f1[Word{t}] = rep;
        }
      }
      // G_1 and h_1
      for (int k : degrees) {
        DegreeSplit& s = by_deg[k];
        DegreeSplit& below = by_deg[k - 1];
        const size_t nb = s.b.size(), nh = s.h.size();
        // D: W_{k-1} -> B_k in coordinates
        ExactMatrix dmat(static_cast<int>(nb), static_cast<int>(below.w.size()));
        ExactMatrix dk1 = diff(k - 1);
        for (size_t j = 0; j < below.w.size(); ++j) {
          Column coords = s.inverse.apply(dk1.apply(below.w[j]));
          for (size_t i = 0; i < nb; ++i) dmat.set(static_cast<int>(i), static_cast<int>(j), coords[i]);
        }
        ExactMatrix dinv = nb ? coeff::rref(dmat, true).transform : ExactMatrix(0, 0);
        for (size_t e = 0; e < s.elems.size(); ++e) {
          Column coords = s.inverse.apply(unit(s.elems.size(), e));
          Vec g;
          for (size_t i = 0; i < nh; ++i) add_to(g, h_index[k][i], coords[nb + i]);
          if (!g.empty()) con.g1[Word{s.elems[e]}] = g;
          Vec hv;
          for (size_t i = 0; i < nb; ++i) {
            if (coords[i].is_zero()) continue;
            for (size_t j = 0; j < below.w.size(); ++j) {
              Scalar c = dinv.get(static_cast<int>(j), static_cast<int>(i));
              if (c.is_zero()) continue;
              for (size_t q = 0; q < below.w[j].size(); ++q)
                add_to(hv, below.elems[q], -coords[i] * c * below.w[j][q]);
            }
          }
          if (!hv.empty()) con.h1[Word{s.elems[e]}] = hv;
        }
      }
    }

  if (!ring.is_field()) {
    for (const MapTable* t : {&con.f1, &con.g1, &con.h1})
      for (const auto& [w, row] : *t)
        for (const auto& [i, c] : row)
          if (!ring.contains(c))
            throw PreconditionFailed("the echelon splitting is not defined over " + ring.name() + " (coefficient " +
                                     ring.format(c) + ")");
  }

  // induced composition G_1 m_2 (F_1 ⊗ F_1)
  con.cohomology = H;
  const MapTable& m2 = m.get(2);
  MapTable& hm2 = out.h.m.components[2];
  for (const auto& w : H.composable_words(2)) {
    const Vec& fa = con.f1.at(Word{w[0]});
    const Vec& fb = con.f1.at(Word{w[1]});
    Vec prod;
    for (const auto& [i, a] : fa)
      for (const auto& [j, b] : fb) {
        auto it = m2.find(Word{i, j});
        if (it != m2.end()) add_scaled(prod, it->second, a * b);
      }
    Vec g = apply_table(con.g1, prod);
    if (!g.empty()) hm2[w] = std::move(g);
  }
  out.h.m.normalize();
  return out;
}

MapTable contraction_defect(const CategoryPresentation& cat, const MultiplicationFamily& m,
                            const ContractionData& c) {
  const MapTable& m1 = m.get(1);
  MapTable out;
  for (int e = 0; e < cat.dim(); ++e) {
    Vec unit_e{{e, Scalar(1)}};
    Vec r = apply_table(m1, apply_table(c.h1, unit_e));
    add_scaled(r, apply_table(c.h1, apply_table(m1, unit_e)), Scalar(1));
    add_scaled(r, apply_table(c.f1, apply_table(c.g1, unit_e)), Scalar(-1));
    add_to(r, e, Scalar(1));
    if (!r.empty()) out[Word{e}] = std::move(r);
  }
  return out;
}

ExpIsotopy exp_coderivation(const CategoryPresentation& cat, const MultiplicationFamily& m, const Coderivation& c,
                            int max_weight) {
  ExpIsotopy out;
  out.bar = exp_cofunctor(cat, c, max_weight);
  out.functor = desuspend_functor(cat.basis, out.bar);
  Coderivation d = bar_codifferential(cat.basis, m);
  out.valid = coderivation_bracket(cat.basis, d, c, max_weight).is_zero();
  return out;
}

MultiplicationFamily transport(const CategoryPresentation& cat, const MultiplicationFamily& m, const Cofunctor& f,
                               int max_weight) {
  Coderivation d = bar_codifferential(cat.basis, m);
  Cofunctor inv = inverse_isotopy(cat, f, max_weight);
  MultiplicationFamily out = multiplications_from_bar(cat.basis, conjugate(cat, f, d, inv, max_weight));
  out.normalize();
  return out;
}

std::optional<int> degree_arity_bound(const CategoryPresentation& cat) {
  std::optional<int> bound;
  auto tighten = [&](int b) { bound = bound ? std::min(*bound, b) : b; };
  if (!cat.has_cycles()) {
    // longest composable chain = longest path in the object graph
    const int k = cat.object_count();
    std::vector<int> longest(static_cast<size_t>(k), 0);
    for (int iter = 0; iter < k; ++iter)
      for (int i = 0; i < cat.dim(); ++i) {
        int s = cat.basis.source(i), t = cat.basis.target(i);
        longest[static_cast<size_t>(t)] = std::max(longest[static_cast<size_t>(t)], longest[static_cast<size_t>(s)] + 1);
      }
    tighten(k ? *std::max_element(longest.begin(), longest.end()) : 0);
  }
  if (cat.dim() > 0) {
    const int a = cat.min_degree(), b = cat.max_degree();
    // a nonzero m_i needs a <= i*b + 2 - i and i*a + 2 - i <= b
    if (b <= 0) tighten((2 - a) / (1 - b));
    if (a >= 2) tighten((b - 2) / (a - 1));
  } else {
    tighten(0);
  }
  return bound;
}

ValidityReport check_structure(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight) {
  ValidityReport r;
  r.max_arity = m.max_arity();
  r.checked_through = max_weight;
  r.violations = check_relations(cat, m, max_weight);
  r.valid = r.violations.empty();
  r.weight_complete = r.valid && max_weight >= 2 * r.max_arity - 1;
  return r;
}

}  // namespace ainf
