#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ainf/acat.hpp"

namespace ainf {

struct CatalogueEntry {
  std::string name;
  std::string description;
  AInfCategory structure;
  bool minimal = false;
  std::optional<bool> formal;
  std::optional<int> cy_degree;
  /// Weight at which certification fails, for non-formal entries.
  std::optional<int> witness_weight;
};

/// Free graded-commutative algebra on g odd generators of degree 1 with
/// zero differential (basis: subsets, names from x, y, z, u, v, w).
CatalogueEntry exterior_algebra(int g);
/// Exterior algebra on x, y, z with d z = x·y.
CatalogueEntry heisenberg_dg();
/// Minimal model of heisenberg_dg, transferred through max_weight.
CatalogueEntry heisenberg_minimal(int max_weight = 4);
/// k objects 0 < 1 < ... < k-1, hom(i, j) = A for i < j where A is a small
/// seeded dg algebra (seed 0: A = ground ring, i.e. a path category).
CatalogueEntry quiver_dg_category(int k, uint64_t seed);

/// Bounds for random structures.
struct RandomBounds {
  int max_generators = 3;  // odd generators of the random Sullivan algebra
  int max_objects = 3;      // k = 1: an algebra; k > 1: hom(i, j) = A for i < j
  int max_weight = 6;      // transfer truncation
};
/// A valid A∞-structure, produced by transfer from a random dg structure.
CatalogueEntry random_structure(uint64_t seed, const RandomBounds& bounds = {});
/// A random degree 0 coderivation of pure weights 2..max_weight on a minimal
/// structure; closedness is not required.
Coderivation random_gauge(const CategoryPresentation& cat, uint64_t seed, int max_weight, int min_weight = 2);

struct TwistedEntry {
  CatalogueEntry entry;  // transported structure
  Cofunctor isotopy;     // exp(c)
  Coderivation gauge;    // c
};
/// exp(c)-conjugate of `entry` by a seeded c, through max_weight.
TwistedEntry random_isotopy_twist(const CatalogueEntry& entry, uint64_t seed, int max_weight);

/// Family over poly(ħ) whose HH² slice has (ħ)-torsion: one generator a of
/// degree 0 with m_2(a, a) = ħ a.
CatalogueEntry torsion_family();

std::vector<std::string> catalogue_names();
/// Looks up "exterior_algebra(2)", "heisenberg_dg", "quiver_dg_category(3,0)"...
CatalogueEntry catalogue_lookup(const std::string& name);
/// Re-checks the claims of an entry: relations through max_weight, the
/// minimality flag, and no higher products on entries claimed formal as given.
std::vector<std::string> verify_entry(const CatalogueEntry& e, int max_weight = 4);

}  // namespace ainf
