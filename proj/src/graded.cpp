#include "ainf/graded.hpp"

#include "ainf/error.hpp"

namespace ainf {

int GradedBasis::word_degree(const Word& w) const {
  int d = 0;
  for (int x : w) d += degree(x);
  return d;
}

int GradedBasis::word_shifted_degree(const Word& w) const {
  int d = 0;
  for (int x : w) d += shifted_degree(x);
  return d;
}

bool GradedBasis::composable(const Word& w) const {
  if (w.empty()) return false;
  for (size_t p = 0; p + 1 < w.size(); ++p)
    if (source(w[p]) != target(w[p + 1])) return false;
  return true;
}

std::string GradedBasis::word_name(const Word& w) const {
  std::string s;
  for (size_t p = 0; p < w.size(); ++p) {
    if (p) s += "⊗";
    s += elements[static_cast<size_t>(w[p])].name;
  }
  return s;
}

void add_to(Vec& v, int index, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

void add_scaled(Vec& v, const Vec& w, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [i, x] : w) add_to(v, i, x * c);
}

void add_to(TensorVec& v, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

void add_scaled(TensorVec& v, const TensorVec& w, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [x, y] : w) add_to(v, x, y * c);
}

void add_to(MapTable& t, const Word& w, int out, const Scalar& c) {
  if (c.is_zero()) return;
  Vec& row = t[w];
  add_to(row, out, c);
  if (row.empty()) t.erase(w);
}

void add_scaled(MapTable& t, const MapTable& u, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [w, row] : u) {
    Vec& dst = t[w];
    add_scaled(dst, row, c);
    if (dst.empty()) t.erase(w);
  }
}

MapTable scaled(const MapTable& t, const Scalar& c) {
  MapTable out;
  add_scaled(out, t, c);
  return out;
}

void prune(MapTable& t) {
  for (auto it = t.begin(); it != t.end();) {
    if (it->second.empty()) it = t.erase(it);
    else ++it;
  }
}

std::vector<Word> degree_violations(const GradedBasis& basis, const GradedMap& m, bool shifted) {
  std::vector<Word> bad;
  for (const auto& [w, row] : m.table) {
    int in = shifted ? basis.word_shifted_degree(w) : basis.word_degree(w);
    for (const auto& [out, c] : row) {
      int od = shifted ? basis.shifted_degree(out) : basis.degree(out);
      if (od - in != m.degree) {
        bad.push_back(w);
        break;
      }
    }
  }
  return bad;
}

int desuspension_parity(const GradedBasis& basis, const Word& w) {
  int n = static_cast<int>(w.size());
  int parity = 0;
  for (int p = 0; p < n; ++p) parity += (n - 1 - p) * basis.shifted_degree(w[static_cast<size_t>(p)]);
  return parity & 1;
}

namespace {

GradedMap resuspend(const GradedBasis& basis, const GradedMap& m, int arity, int new_degree) {
  GradedMap out{new_degree, {}};
  for (const auto& [w, row] : m.table) {
    if (static_cast<int>(w.size()) != arity) throw Error("map entry arity differs from declared arity");
    if (row.empty()) continue;
    Scalar s = coeff::sign(1 + desuspension_parity(basis, w));
    Vec& dst = out.table[w];
    add_scaled(dst, row, s);
    if (dst.empty()) out.table.erase(w);
  }
  return out;
}

}  // namespace

GradedMap suspend_multiplication(const GradedBasis& basis, const GradedMap& m, int arity) {
  if (arity < 1) throw Error("arity must be positive");
  if (m.degree != 2 - arity) throw Error("m_" + std::to_string(arity) + " must have degree " + std::to_string(2 - arity));
  return resuspend(basis, m, arity, 1);
}

GradedMap desuspend_multiplication(const GradedBasis& basis, const GradedMap& d, int arity) {
  if (arity < 1) throw Error("arity must be positive");
  if (d.degree != 1) throw Error("bar components have degree 1");
  // the sign is an involution
  return resuspend(basis, d, arity, 2 - arity);
}

TensorVec koszul_evaluate(const GradedBasis& basis, const std::vector<Factor>& factors, const Word& w,
                          bool shifted) {
  size_t total = 0;
  for (const auto& f : factors) total += static_cast<size_t>(f.arity);
  if (total != w.size()) throw Error("factor arities do not match word length");
  TensorVec acc{{Word{}, Scalar(1)}};
  size_t pos = 0;
  int passed = 0;  // degree of the letters already passed
  for (const auto& f : factors) {
    Word block(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos + static_cast<size_t>(f.arity)));
    pos += static_cast<size_t>(f.arity);
    TensorVec next;
    if (!f.map) {
      for (auto& [prefix, c] : acc) {
        Word nw = prefix;
        nw.insert(nw.end(), block.begin(), block.end());
        add_to(next, nw, c);
      }
    } else {
      auto it = f.map->table.find(block);
      if (it == f.map->table.end()) return {};
      Scalar s = coeff::sign(f.map->degree * passed);
      for (auto& [prefix, c] : acc) {
        for (const auto& [out, x] : it->second) {
          Word nw = prefix;
          nw.push_back(out);
          add_to(next, nw, c * x * s);
        }
      }
    }
    acc = std::move(next);
    for (int x : block) passed += shifted ? basis.shifted_degree(x) : basis.degree(x);
  }
  return acc;
}

TensorVec koszul_evaluate(const GradedBasis& basis, const std::vector<Factor>& factors, const TensorVec& v,
                          bool shifted) {
  TensorVec out;
  for (const auto& [w, c] : v) add_scaled(out, koszul_evaluate(basis, factors, w, shifted), c);
  return out;
}

}  // namespace ainf
