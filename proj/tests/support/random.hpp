#pragma once

#include <random>

#include "ainf/coeff/linalg.hpp"

namespace testsupport {

using ainf::coeff::ExactMatrix;
using ainf::coeff::Poly;
using ainf::coeff::Scalar;

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
  std::mt19937_64& engine() { return gen_; }

  Scalar small_integer(int bound = 3) { return Scalar(uniform(-bound, bound)); }
  Scalar small_rational(int bound = 3) {
    return Scalar(mpq_class(uniform(-bound, bound), uniform(1, bound)));
  }
  Scalar small_poly(int max_deg = 2, int bound = 2) {
    std::vector<mpq_class> c;
    int deg = uniform(0, max_deg);
    for (int i = 0; i <= deg; ++i) c.emplace_back(uniform(-bound, bound));
    return Scalar(Poly(std::move(c)));
  }

  ExactMatrix integer_matrix(int rows, int cols, double density = 0.6, int bound = 4) {
    ExactMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (coin(density)) m.set(r, c, small_integer(bound));
    return m;
  }
  ExactMatrix poly_matrix(int rows, int cols, double density = 0.5) {
    ExactMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (coin(density)) m.set(r, c, small_poly());
    return m;
  }
  ExactMatrix rational_matrix(int rows, int cols, double density = 0.5) {
    ExactMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (coin(density)) m.set(r, c, small_rational());
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testsupport

#include "ainf/bar.hpp"

namespace testsupport {

/// Random components of a coderivation of the given shifted degree on input
/// weights [min_w, max_w], respecting chain endpoints.
inline ainf::Coderivation random_coderivation(Rng& rng, const ainf::CategoryPresentation& cat, int degree, int min_w,
                                              int max_w, double density = 0.3) {
  ainf::Coderivation c{degree, {}};
  for (int n = min_w; n <= max_w; ++n)
    for (const auto& w : cat.composable_words(n)) {
      int target_deg = cat.basis.word_shifted_degree(w) + degree;
      for (int o : cat.hom(cat.basis.word_source(w), cat.basis.word_target(w))) {
        if (cat.basis.shifted_degree(o) != target_deg || !rng.coin(density)) continue;
        Scalar v = rng.small_integer(2);
        if (!v.is_zero()) c.comps[w][o] = v;
      }
    }
  return c;
}

}  // namespace testsupport
