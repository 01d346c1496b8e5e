#include "ainf/category.hpp"

#include <algorithm>
#include <functional>

#include "ainf/error.hpp"

namespace ainf {

int CategoryPresentation::add_object(const std::string& name) {
  if (object_index(name)) throw SchemaError("duplicate object name '" + name + "'");
  objects.push_back(name);
  return static_cast<int>(objects.size()) - 1;
}

int CategoryPresentation::add_element(const std::string& name, int degree, int source, int target) {
  if (element_index(name)) throw SchemaError("duplicate basis element name '" + name + "'");
  if (source < 0 || source >= object_count() || target < 0 || target >= object_count())
    throw SchemaError("basis element '" + name + "' refers to an unknown object");
  basis.elements.push_back({name, degree, source, target});
  return basis.size() - 1;
}

std::optional<int> CategoryPresentation::object_index(const std::string& name) const {
  for (size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> CategoryPresentation::element_index(const std::string& name) const {
  for (int i = 0; i < basis.size(); ++i)
    if (basis[i].name == name) return i;
  return std::nullopt;
}

std::vector<int> CategoryPresentation::hom(int source, int target) const {
  std::vector<int> out;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.source(i) == source && basis.target(i) == target) out.push_back(i);
  return out;
}

int CategoryPresentation::min_degree() const {
  int d = 0;
  for (int i = 0; i < basis.size(); ++i) d = i ? std::min(d, basis.degree(i)) : basis.degree(i);
  return d;
}

int CategoryPresentation::max_degree() const {
  int d = 0;
  for (int i = 0; i < basis.size(); ++i) d = i ? std::max(d, basis.degree(i)) : basis.degree(i);
  return d;
}

std::vector<Word> CategoryPresentation::composable_words(int n) const {
  std::vector<Word> out;
  if (n <= 0) return out;
  // by_target[o] = elements whose target is o
  std::vector<std::vector<int>> by_target(objects.size());
  for (int i = 0; i < basis.size(); ++i) by_target[static_cast<size_t>(basis.target(i))].push_back(i);
  Word w;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(w.size()) == n) {
      out.push_back(w);
      return;
    }
    if (w.empty()) {
      for (int i = 0; i < basis.size(); ++i) {
        w.push_back(i);
        rec();
        w.pop_back();
      }
      return;
    }
    for (int i : by_target[static_cast<size_t>(basis.source(w.back()))]) {
      w.push_back(i);
      rec();
      w.pop_back();
    }
  };
  rec();
  return out;
}

std::vector<Word> CategoryPresentation::composable_words(int n, int source, int target) const {
  std::vector<Word> out;
  for (auto& w : composable_words(n))
    if (basis.word_source(w) == source && basis.word_target(w) == target) out.push_back(std::move(w));
  return out;
}

bool CategoryPresentation::has_cycles() const {
  size_t k = objects.size();
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (int i = 0; i < basis.size(); ++i)
    reach[static_cast<size_t>(basis.source(i))][static_cast<size_t>(basis.target(i))] = true;
  for (size_t m = 0; m < k; ++m)
    for (size_t a = 0; a < k; ++a)
      for (size_t b = 0; b < k; ++b)
        if (reach[a][m] && reach[m][b]) reach[a][b] = true;
  for (size_t a = 0; a < k; ++a)
    if (reach[a][a]) return true;
  return false;
}

bool operator==(const CategoryPresentation& a, const CategoryPresentation& b) {
  if (!(a.ring == b.ring) || a.objects != b.objects || a.basis.size() != b.basis.size()) return false;
  for (int i = 0; i < a.basis.size(); ++i) {
    const auto &x = a.basis[i], &y = b.basis[i];
    if (x.name != y.name || x.degree != y.degree || x.source != y.source || x.target != y.target) return false;
  }
  return true;
}

namespace {
const MapTable kEmpty;

int max_key(const std::map<int, MapTable>& comps) {
  int best = 0;
  for (const auto& [k, t] : comps)
    if (!t.empty()) best = std::max(best, k);
  return best;
}

void normalize_components(std::map<int, MapTable>& comps) {
  for (auto it = comps.begin(); it != comps.end();) {
    prune(it->second);
    if (it->second.empty()) it = comps.erase(it);
    else ++it;
  }
}
}  // namespace

const MapTable& MultiplicationFamily::get(int arity) const {
  auto it = components.find(arity);
  return it == components.end() ? kEmpty : it->second;
}

int MultiplicationFamily::max_arity() const { return max_key(components); }

bool MultiplicationFamily::has(int arity) const { return !get(arity).empty(); }

bool MultiplicationFamily::is_dg() const {
  for (const auto& [k, t] : components)
    if (k > 2 && !t.empty()) return false;
  return true;
}

void MultiplicationFamily::normalize() { normalize_components(components); }

bool operator==(const MultiplicationFamily& a, const MultiplicationFamily& b) {
  MultiplicationFamily x = a, y = b;
  x.normalize();
  y.normalize();
  return x.components == y.components;
}

const MapTable& AInfFunctor::get(int arity) const {
  auto it = components.find(arity);
  return it == components.end() ? kEmpty : it->second;
}

int AInfFunctor::max_arity() const { return max_key(components); }

void AInfFunctor::normalize() { normalize_components(components); }

AInfFunctor AInfFunctor::identity(const CategoryPresentation& cat) {
  AInfFunctor f;
  for (int i = 0; i < cat.object_count(); ++i) f.object_map.push_back(i);
  for (int i = 0; i < cat.dim(); ++i) f.components[1][Word{i}] = Vec{{i, Scalar(1)}};
  return f;
}

bool AInfFunctor::is_isotopy(const CategoryPresentation& cat) const {
  if (static_cast<int>(object_map.size()) != cat.object_count()) return false;
  for (int i = 0; i < cat.object_count(); ++i)
    if (object_map[static_cast<size_t>(i)] != i) return false;
  MapTable f1 = get(1);
  prune(f1);
  if (cat.dim() == 0) return f1.empty();
  return f1 == identity(cat).components.at(1);
}

bool operator==(const AInfFunctor& a, const AInfFunctor& b) {
  AInfFunctor x = a, y = b;
  x.normalize();
  y.normalize();
  return x.object_map == y.object_map && x.components == y.components;
}

}  // namespace ainf
