#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ainf/coeff/ring.hpp"
#include "ainf/graded.hpp"

namespace ainf {

using coeff::RingDescriptor;

/// Finite set of objects with free graded hom modules given by bases.
struct CategoryPresentation {
  RingDescriptor ring;
  std::vector<std::string> objects;
  GradedBasis basis;

  int add_object(const std::string& name);
  int add_element(const std::string& name, int degree, int source, int target);
  std::optional<int> object_index(const std::string& name) const;
  std::optional<int> element_index(const std::string& name) const;
  int object_count() const { return static_cast<int>(objects.size()); }
  int dim() const { return basis.size(); }
  /// Basis indices of hom(source, target), in index order.
  std::vector<int> hom(int source, int target) const;
  int min_degree() const;
  int max_degree() const;
  /// All composable words of length n, in lexicographic order.
  std::vector<Word> composable_words(int n) const;
  /// Composable words of length n from `source` to `target`.
  std::vector<Word> composable_words(int n, int source, int target) const;
  /// Whether the "source -> target" relation on objects has a cycle (loops
  /// included).
  bool has_cycles() const;

  friend bool operator==(const CategoryPresentation& a, const CategoryPresentation& b);
};

/// The multiplications m_i, keyed by arity. m_i has degree 2 - i.
struct MultiplicationFamily {
  std::map<int, MapTable> components;

  const MapTable& get(int arity) const;
  MapTable& at(int arity) { return components[arity]; }
  /// Arity of the highest nonzero component, 0 if none.
  int max_arity() const;
  bool has(int arity) const;
  bool is_minimal() const { return !has(1); }
  /// Only m_1 and m_2 may be nonzero.
  bool is_dg() const;
  /// Drops empty entries and empty components.
  void normalize();
  GradedMap graded(int arity) const { return GradedMap{2 - arity, get(arity)}; }

  friend bool operator==(const MultiplicationFamily& a, const MultiplicationFamily& b);
};

/// An A∞-functor: object map plus components F_i of degree 1 - i.
struct AInfFunctor {
  std::vector<int> object_map;
  std::map<int, MapTable> components;

  const MapTable& get(int arity) const;
  int max_arity() const;
  void normalize();
  static AInfFunctor identity(const CategoryPresentation& cat);
  /// F = id on objects and F_1 = id.
  bool is_isotopy(const CategoryPresentation& cat) const;

  friend bool operator==(const AInfFunctor& a, const AInfFunctor& b);
};

/// A category together with an A∞-structure.
struct AInfCategory {
  CategoryPresentation cat;
  MultiplicationFamily m;
};

}  // namespace ainf
