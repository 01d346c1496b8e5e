#include "ainf/kaledin.hpp"

#include "ainf/error.hpp"

namespace ainf {

using coeff::Column;
using coeff::ExactMatrix;

namespace {

void require_minimal(const CategoryPresentation& cat, const MultiplicationFamily& m, bool rationals) {
  if (m.has(1)) throw PreconditionFailed("structure is not minimal (m_1 != 0)");
  if (rationals && !cat.ring.contains_rationals())
    throw UnsupportedRing("exponentials of coderivations need the rationals; ring is " + cat.ring.name());
}

std::vector<CochainCell> cells_of_weight(const CategoryPresentation& cat, int degree, int weight) {
  std::vector<CochainCell> out;
  for (auto& c : cochain_basis(cat, degree, weight))
    if (static_cast<int>(c.word.size()) == weight) out.push_back(std::move(c));
  return out;
}

MultiplicationFamily only(const MultiplicationFamily& m, int arity) {
  MultiplicationFamily r;
  if (m.has(arity)) r.components[arity] = m.get(arity);
  return r;
}

}  // namespace

Coderivation kaledin_components(const Coderivation& d, int max_weight) {
  Coderivation k{1, {}};
  for (const auto& [w, row] : d.comps) {
    int n = static_cast<int>(w.size());
    if (n < 3 || n > max_weight) continue;
    add_scaled(k.comps, MapTable{{w, row}}, Scalar(n - 2));
  }
  k.normalize();
  return k;
}

KaledinClass kaledin_cochain(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight,
                             bool with_ambient) {
  require_minimal(cat, m, true);
  KaledinClass r;
  r.truncation = max_weight;
  Coderivation d = bar_codifferential(cat.basis, m).truncated(max_weight);
  r.cochain = kaledin_components(d, max_weight);
  r.closed = coderivation_bracket(cat.basis, d, r.cochain, max_weight).is_zero();
  r.in_w2 = r.cochain.is_zero() || r.cochain.min_weight() >= 2;
  if (with_ambient) r.ambient = hochschild_cohomology(cat, m, 2, max_weight).invariants;

  // τ ranges over degree 0 cells of weight 2..W
  std::vector<CochainCell> from;
  for (auto& c : cochain_basis(cat, 0, max_weight))
    if (c.word.size() >= 2) from.push_back(std::move(c));
  std::vector<CochainCell> to = cochain_basis(cat, 1, max_weight);
  ExactMatrix a = hochschild_matrix(cat.basis, d, from, to, 0, max_weight);
  auto sol = coeff::solve_linear(a, column_from_cochain(to, r.cochain), cat.ring);
  r.vanishes = sol.solvable();
  if (sol.solution) r.primitive = cochain_from_column(from, 0, *sol.solution);
  r.certificate = sol.certificate;
  return r;
}

ObstructionVerdict obstruction_class(const CategoryPresentation& cat, const MultiplicationFamily& m, int n) {
  require_minimal(cat, m, false);
  if (n < 2) throw PreconditionFailed("obstruction stages start at n = 2");
  for (int i = 3; i <= n; ++i)
    if (m.has(i)) throw PreconditionFailed("m_" + std::to_string(i) + " != 0: the obstruction at weight " +
                                           std::to_string(n + 1) + " is not defined");
  ObstructionVerdict v;
  SliceEquation& eq = v.equation;
  eq.weight = n + 1;
  eq.unknowns = cells_of_weight(cat, 0, n);
  eq.equations = cells_of_weight(cat, 1, n + 1);
  Coderivation d2 = bar_codifferential(cat.basis, only(m, 2));
  Coderivation top = bar_codifferential(cat.basis, only(m, n + 1));
  eq.matrix = hochschild_matrix(cat.basis, d2, eq.unknowns, eq.equations, 0, n + 1);
  eq.rhs = column_from_cochain(eq.equations, top);

  auto sol = coeff::solve_linear(eq.matrix, eq.rhs, cat.ring);
  v.vanishes = sol.solvable();
  if (sol.solution) {
    v.primitive = cochain_from_column(eq.unknowns, 0, *sol.solution);
    return v;
  }
  v.certificate = sol.certificate;
  if (!cat.ring.is_field())
    v.denominator_only = coeff::solve_linear(eq.matrix, eq.rhs, cat.ring.fraction_field()).solvable();
  return v;
}

FormalityVerdict certify_formality(const CategoryPresentation& cat, const MultiplicationFamily& m, int max_weight) {
  require_minimal(cat, m, true);
  Coderivation d = bar_codifferential(cat.basis, m).truncated(max_weight);
  Cofunctor f = Cofunctor::identity(cat);
  std::vector<Gauge> gauges;
  for (int n = 2; n < max_weight; ++n) {
    if (d.weight_part(n + 1).empty()) continue;
    MultiplicationFamily current = multiplications_from_bar(cat.basis, d);
    ObstructionVerdict v = obstruction_class(cat, current, n);
    if (!v.vanishes) {
      NonFormalityWitness w;
      w.weight = n + 1;
      w.gauges = gauges;
      w.obstruction = current.get(n + 1);
      w.verdict = std::move(v);
      return {std::nullopt, std::move(w)};
    }
    const Coderivation& tau = *v.primitive;
    // exp(τ) d exp(-τ) = d - [d, τ] + ..., whose weight n+1 part is d_{n+1} - [d_2, τ]
    Cofunctor e = exp_cofunctor(cat, tau, max_weight);
    Cofunctor e_inv = exp_cofunctor(cat, Scalar(-1) * tau, max_weight);
    d = conjugate(cat, e, d, e_inv, max_weight);
    d.normalize();
    if (!d.weight_part(n + 1).empty())
      throw Error("gauge at weight " + std::to_string(n) + " left a weight " + std::to_string(n + 1) + " component");
    f = compose_cofunctors(cat.basis, e, f, max_weight);
    gauges.push_back({n, tau});
  }
  FormalityCertificate c;
  c.gauges = std::move(gauges);
  c.isotopy = std::move(f);
  c.result = multiplications_from_bar(cat.basis, d);
  c.result.normalize();
  c.checked_through = max_weight;
  auto bound = degree_arity_bound(cat);
  c.unconditional = bound && *bound <= max_weight;
  return {std::move(c), std::nullopt};
}

bool verify_certificate(const CategoryPresentation& cat, const MultiplicationFamily& m,
                        const FormalityCertificate& cert) {
  const int w = cert.checked_through;
  for (int i = 3; i <= w; ++i)
    if (cert.result.has(i)) return false;
  if (cert.result.has(1)) return false;
  MultiplicationFamily moved = transport(cat, m, cert.isotopy, w);
  moved.normalize();
  if (!(moved == cert.result)) return false;
  return check_relations(cat, cert.result, w).empty();
}

bool verify_witness(const CategoryPresentation& cat, const MultiplicationFamily& m, const NonFormalityWitness& w) {
  if (!w.verdict.certificate) return false;
  const int n = w.weight - 1;
  // replay the gauges to recover the structure the obstruction belongs to
  Coderivation d = bar_codifferential(cat.basis, m).truncated(w.weight);
  for (const auto& g : w.gauges)
    d = conjugate(cat, exp_cofunctor(cat, g.tau, w.weight), d, exp_cofunctor(cat, Scalar(-1) * g.tau, w.weight),
                  w.weight);
  d.normalize();
  MultiplicationFamily gauged = multiplications_from_bar(cat.basis, d);
  gauged.normalize();
  for (int i = 3; i <= n; ++i)
    if (gauged.has(i)) return false;
  if (!(gauged.get(w.weight) == w.obstruction)) return false;
  ObstructionVerdict again = obstruction_class(cat, gauged, n);
  if (!(again.equation.matrix == w.verdict.equation.matrix) || again.equation.rhs != w.verdict.equation.rhs)
    return false;
  return coeff::verify_certificate(again.equation.matrix, again.equation.rhs, *w.verdict.certificate, cat.ring);
}

Cofunctor functor_derivative(const Cofunctor& f) {
  Cofunctor r;
  r.object_map = f.object_map;
  for (const auto& [w, row] : f.comps)
    if (w.size() >= 2) add_scaled(r.comps, MapTable{{w, row}}, Scalar(static_cast<long>(w.size()) - 1));
  prune(r.comps);
  return r;
}

GaugeInvarianceReport gauge_invariance_check(const CategoryPresentation& cat, const MultiplicationFamily& m,
                                             const MultiplicationFamily& m_target, const Cofunctor& f,
                                             int max_weight) {
  require_minimal(cat, m, false);
  require_minimal(cat, m_target, false);
  Coderivation d = bar_codifferential(cat.basis, m).truncated(max_weight);
  Coderivation d_target = bar_codifferential(cat.basis, m_target).truncated(max_weight);
  if (!cofunctor_defect(cat.basis, cat.basis, f, d, d_target, max_weight).empty())
    throw PreconditionFailed("the cofunctor does not intertwine the two codifferentials");
  Cofunctor f_inv = inverse_isotopy(cat, f, max_weight);

  GaugeInvarianceReport r;
  r.transported = conjugate(cat, f, kaledin_components(d, max_weight), f_inv, max_weight);
  r.target = kaledin_components(d_target, max_weight);
  Cofunctor df = functor_derivative(f);
  Coderivation df_f_inv{0, compose_support(cat.basis, df.comps, nullptr, 0, &f_inv.comps, max_weight)};
  df_f_inv.normalize();
  r.correction = coderivation_bracket(cat.basis, d_target, df_f_inv, max_weight);
  r.residue = (r.transported - r.target - r.correction).truncated(max_weight).comps;
  prune(r.residue);
  return r;
}

}  // namespace ainf
