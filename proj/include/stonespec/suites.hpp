#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stonespec/lattice.hpp"
#include "stonespec/measurable.hpp"
#include "stonespec/rational.hpp"
#include "stonespec/report.hpp"
#include "stonespec/spectral_family.hpp"
#include "stonespec/stone_spectrum.hpp"
#include "stonespec/topology.hpp"

/// Property suites over exhaustively generated (or seeded random) instances.
namespace stonespec::suites {

struct Options {
  int max_size = 4;
  std::uint64_t seed = 1;
};

/// Grid {0, 1/2, 1} used by the function sweeps.
inline std::vector<Rational> half_grid() { return {Rational(0), Rational(1, 2), Rational(1)}; }

inline std::string join_values(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

inline std::string topology_text(const FiniteTopSpace& t) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.opens().size(); ++i) out += (i ? ", " : "") + t.name(t.opens()[i]);
  return out + "}";
}

/// Random family with up to four jumps drawn from {0, 1/2, ..., 3}; the
/// values are running joins of random elements, ending at top.
inline StepSpectralFamily random_family(const Lattice& l, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> element(0, l.size() - 1);
  std::vector<int> halves(7);
  for (int i = 0; i < 7; ++i) halves[i] = i;
  std::shuffle(halves.begin(), halves.end(), rng);
  const int k = count(rng);
  std::vector<int> picked(halves.begin(), halves.begin() + k);
  std::sort(picked.begin(), picked.end());
  std::vector<Rational> thresholds;
  std::vector<ElementId> values;
  ElementId v = l.bottom();
  for (int i = 0; i < k; ++i) {
    thresholds.emplace_back(picked[i], 2);
    v = i + 1 == k ? l.top() : l.join(v, element(rng));
    values.push_back(v);
  }
  return {l, thresholds, values};
}

/// Random rational p/q with |p/q| <= 3 and q <= 6.
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 6);
  const int q = den(rng);
  std::uniform_int_distribution<int> num(-3 * q, 3 * q);
  return {num(rng), q};
}

/// f_E on every point of `s` for a family given by its values and thresholds.
inline std::string observable_text(const ObservableFunction& f, const StoneSpectrum& s) {
  std::string out;
  for (int i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s.point_name(i) + " -> " + to_string(f[i]);
  return out;
}

/// E^{f_E} = E and f_{E^f} = f on every field over at most max_size points.
inline SuiteReport bijection(const Options& o) {
  SuiteReport r;
  for (int n = 1; n <= o.max_size; ++n) {
    for (const auto& field : all_fields(n)) {
      auto sub = bijection_suite(field, half_grid());
      for (auto& f : sub.failures) f = "field with atoms " + [&] {
        std::string a;
        for (Mask m : field.atoms()) a += field.sets().name(m);
        return a;
      }() + ": " + f;
      r.merge(sub);
    }
  }
  return r;
}

/// Injectivity of E -> f_E for families with thresholds in {0, 1, 2} on
/// boolean(n), MO(k <= 3) and chain(n) up to the size bound.
inline void injectivity_on(const Lattice& l, const std::string& label, SuiteReport& r) {
  const auto s = enumerate_quasipoints(l);
  const auto families = enumerate_step_families(l, {Rational(0), Rational(1), Rational(2)});
  std::vector<ObservableFunction> images;
  for (const auto& e : families) images.push_back(observable_function(e, s));
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t j = i + 1; j < families.size(); ++j) {
      ++r.cases;
      if (images[i] == images[j]) {
        r.fail(label + ": distinct families " + to_string(families[i]) + " and " + to_string(families[j]) +
               " share f_E = [" + observable_text(images[i], s) + "]");
      }
    }
  }
}

inline SuiteReport injectivity(const Options& o) {
  SuiteReport r;
  for (int n = 1; n <= std::min(o.max_size, 4); ++n) injectivity_on(fixtures::boolean(n), "boolean(" + std::to_string(n) + ")", r);
  for (int k = 1; k <= std::min(o.max_size, 3); ++k) injectivity_on(fixtures::mo(k), "MO(" + std::to_string(k) + ")", r);
  for (int n = 1; n <= o.max_size + 1; ++n) injectivity_on(fixtures::chain(n), "chain(" + std::to_string(n) + ")", r);
  return r;
}

/// Preimages under f_E of every value-separating open interval are open.
inline void continuity_on(const Lattice& l, const std::string& label, int count, std::mt19937_64& rng,
                                 SuiteReport& r) {
  const auto s = enumerate_quasipoints(l);
  const auto opens = s.open_sets();
  for (int c = 0; c < count; ++c) {
    const auto e = random_family(l, rng);
    const auto f = observable_function(e, s);
    const auto values = distinct_sorted(f);
    for (std::size_t a = 0; a < values.size(); ++a) {
      for (std::size_t b = a; b < values.size(); ++b) {
        ++r.cases;
        Mask pre = 0;
        for (int i = 0; i < s.size(); ++i) {
          if (values[a] <= f[i] && f[i] <= values[b]) pre |= bit(i);
        }
        if (!std::binary_search(opens.begin(), opens.end(), pre)) {
          r.fail(label + ": preimage of the interval around [" + to_string(values[a]) + ", " + to_string(values[b]) +
                 "] is not open for E = " + to_string(e));
        }
      }
    }
  }
}

inline SuiteReport continuity(const Options& o) {
  SuiteReport r;
  std::mt19937_64 rng(o.seed);
  const int n = std::min(o.max_size, 4);
  continuity_on(fixtures::mo(std::min(o.max_size, 3)), "MO(" + std::to_string(std::min(o.max_size, 3)) + ")", 100,
                rng, r);
  continuity_on(fixtures::boolean(n), "boolean(" + std::to_string(n) + ")", 100, rng, r);
  return r;
}

/// Every valid 2-parameter family on boolean(2) over the grid {0,1} x {0,1}.
inline std::vector<TwoParamStepSpectralFamily> grid_two_param_families(const Lattice& l) {
  std::vector<TwoParamStepSpectralFamily> out;
  const std::vector<Rational> grid{Rational(0), Rational(1)};
  const int n = l.size();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        try {
          out.emplace_back(l, grid, grid, std::vector<std::vector<ElementId>>{{a, b}, {c, l.top()}});
        } catch (const InvalidFamily&) {
        }
      }
    }
  }
  return out;
}

inline SuiteReport decomposition(const Options&) {
  SuiteReport r;
  const Lattice l = fixtures::boolean(2);
  const auto s = enumerate_quasipoints(l);
  const auto singles = enumerate_step_families(l, {Rational(0), Rational(1)});
  for (const auto& e : grid_two_param_families(l)) {
    ++r.cases;
    const auto [e1, e2] = decompose(e);
    if (!(product_family(e1, e2) == e)) r.fail("recombination differs for decomposition " + to_string(e1) + ", " + to_string(e2));
    int found = 0;
    for (const auto& c1 : singles) {
      for (const auto& c2 : singles) {
        if (product_family(c1, c2) == e) ++found;
      }
    }
    if (found != 1) r.fail(std::to_string(found) + " decompositions of the family with parts " + to_string(e1) + ", " + to_string(e2));
    const auto f = observable_function_complex(e, s);
    const auto f1 = observable_function(e1, s);
    const auto f2 = observable_function(e2, s);
    for (int i = 0; i < s.size(); ++i) {
      if (!(f[i] == Complex(f1[i], f2[i]))) r.fail("f_E != f_E1 + i f_E2 at " + s.point_name(i));
    }
  }
  return r;
}

/// |phi - s| <= eps for the Riemann-Stieltjes sums of E^phi on the power
/// set of 6 points, and f_E recovered exactly on quasipoints.
inline SuiteReport spectral_theorem(const Options& o) {
  SuiteReport r;
  std::mt19937_64 rng(o.seed);
  const auto field = FiniteFieldOfSets::power_set(6);
  const auto q = enumerate_quasipoints(field.lattice());
  for (int c = 0; c < 50; ++c) {
    std::vector<Rational> v;
    for (int x = 0; x < 6; ++x) v.push_back(random_rational(rng));
    const MeasurableFunction phi(field, v);
    const auto e = spectral_family_of(phi);
    for (const Rational eps : {Rational(1, 2), Rational(1, 10)}) {
      const auto grid = uniform_grid(e, eps);
      for (const Tag tag : {Tag::left, Tag::right}) {
        ++r.cases;
        const auto s = riemann_stieltjes(e, field, grid, tag);
        for (int x = 0; x < 6; ++x) {
          if (abs(v[x] - s[x]) > eps) {
            r.fail("phi = " + join_values(v) + ", eps = " + to_string(eps) + ": |phi - s| = " +
                   to_string(abs(v[x] - s[x])) + " at point " + std::to_string(x + 1));
            break;
          }
        }
      }
    }
    ++r.cases;
    std::vector<Rational> exact{e.lower_bound() - 1};
    exact.insert(exact.end(), e.thresholds().begin(), e.thresholds().end());
    if (riemann_stieltjes(e, q, exact) != observable_function(e, q)) {
      r.fail("sum over the threshold grid differs from f_E for phi = " + join_values(v));
    }
  }
  return r;
}

/// Continuous f <-> strongly regular E on every topology over max_size
/// points (4 points: 355 topologies), functions and families into {0,1/2,1}.
inline SuiteReport continuous_correspondence(const Options& o, std::vector<std::string>* notes = nullptr) {
  SuiteReport r;
  const int n = std::min(o.max_size, 4);
  const auto grid = half_grid();
  bool regular_not_strong = false;
  for (const auto& t : enumerate_topologies(n)) {
    const std::string where = "topology " + topology_text(t);
    for (const auto& f : all_point_functions(n, grid)) {
      if (!is_continuous(f, t)) continue;
      ++r.cases;
      const auto e = spectral_family_of_function(f, t);
      if (!is_strongly_regular(e, t).holds) r.fail(where + ": continuous f = " + join_values(f) + " gives a family that is not strongly regular");
      if (admissible_domain(e, t) != t.ground()) r.fail(where + ": D(E^f) != M for f = " + join_values(f));
      if (induced_function(e, t) != f) r.fail(where + ": f_{E^f} != f for f = " + join_values(f));
    }
    for (const auto& e : enumerate_step_families(t.open_lattice().lattice(), grid)) {
      ++r.cases;
      const auto cls = classify(e, t);
      if (cls == FamilyClass::regular) regular_not_strong = true;
      const Mask d = admissible_domain(e, t);
      for (Mask u : t.opens()) {
        if (u != 0 && (u & d) == 0) r.fail(where + ": D(E) is not dense for E = " + to_string(e));
      }
      const auto f = induced_function(e, t);
      if (distinct_sorted(f) != spectrum(e).spectrum) r.fail(where + ": sp(E) differs from the image of f_E for E = " + to_string(e));
      if (cls != FamilyClass::strongly_regular) continue;
      if (!t.is_open(d)) r.fail(where + ": D(E) not open for E = " + to_string(e));
      if (!is_regular(e, t)) r.fail(where + ": strongly regular E = " + to_string(e) + " has a value that is not regular open");
      if (!is_continuous(f, t)) r.fail(where + ": f_E not continuous for strongly regular E = " + to_string(e));
      const auto back = spectral_family_of_function(f, t);
      for (const auto& lambda : grid) {
        const Mask want = t.open_lattice().set_of(e.eval(lambda)) & d;
        if (t.open_lattice().set_of(back.eval(lambda)) != want) {
          r.fail(where + ": E^{f_E} differs from E on D(E) at " + to_string(lambda) + " for E = " + to_string(e));
        }
      }
    }
  }
  if (notes) {
    notes->push_back(regular_not_strong ? "found a regular family that is not strongly regular"
                                        : "no regular but not strongly regular family at this scale");
  }
  return r;
}

/// Quotients of the power set of max_size points by each of its ideals.
inline SuiteReport quotient(const Options& o) {
  SuiteReport r;
  const int n = std::min(o.max_size, 4);
  const auto field = FiniteFieldOfSets::power_set(n);
  const auto grid = half_grid();
  const auto functions = all_functions(field, grid);
  for (const auto& ideal : all_ideals(field)) {
    const QuotientAlgebra q(ideal);
    const std::string where = "ideal below " + field.sets().name(ideal.carrier());
    const auto& base = q.base_spectrum();
    const Mask perp = ideal.perp_elements();
    ++r.cases;
    Mask meet = field.lattice().all();
    for_each_bit(q.embedded_points(), [&](int b) { meet &= base.point(b); });
    if (meet != perp) r.fail(where + ": the quasipoints containing I^perp do not intersect to I^perp");
    for (Mask a : ideal.perp()) {
      for (Mask b : ideal.perp()) {
        if (!has(perp, field.sets().element_of(a & b))) r.fail(where + ": I^perp is not closed under intersection");
      }
    }
    Mask image = 0;
    for (int b : q.embedding()) image |= bit(b);
    if (image != q.embedded_points() || count(image) != q.spectrum().size()) {
      r.fail(where + ": quotient quasipoints do not match {B : I^perp in B}");
    }
    for (const auto& phi : functions) {
      ++r.cases;
      const auto g = gamma_transform(phi, q);
      if (g != restricted_gelfand(phi, q)) r.fail(where + ": Gamma differs from the restricted transform for phi = " + join_values(phi.values()));
      const bool zero = std::all_of(g.begin(), g.end(), [](const Rational& x) { return x == 0; });
      if (zero != in_kernel(phi, ideal)) r.fail(where + ": kernel law fails for phi = " + join_values(phi.values()));
      // Changing phi on the carrier of I keeps its class.
      std::vector<Rational> moved = phi.values();
      for_each_bit(ideal.carrier(), [&](int x) { moved[x] += 7; });
      if (gamma_transform(MeasurableFunction(field, moved), q) != g) {
        r.fail(where + ": Gamma depends on the representative of phi = " + join_values(phi.values()));
      }
    }
    for (std::size_t i = 0; i < functions.size(); ++i) {
      for (std::size_t j = i; j < functions.size(); ++j) {
        ++r.cases;
        const auto& phi = functions[i];
        const auto& psi = functions[j];
        std::vector<Rational> sum;
        std::vector<Rational> product;
        for (int x = 0; x < n; ++x) {
          sum.push_back(phi(x) + psi(x));
          product.push_back(phi(x) * psi(x));
        }
        const auto gp = gamma_transform(phi, q);
        const auto gs = gamma_transform(psi, q);
        const auto g_sum = gamma_transform(MeasurableFunction(field, sum), q);
        const auto g_product = gamma_transform(MeasurableFunction(field, product), q);
        for (std::size_t k = 0; k < gp.size(); ++k) {
          if (g_sum[k] != gp[k] + gs[k] || g_product[k] != gp[k] * gs[k]) {
            r.fail(where + ": Gamma is not a ring homomorphism on " + join_values(phi.values()) + ", " + join_values(psi.values()));
            break;
          }
        }
      }
    }
    for (const auto& g : all_point_functions(q.spectrum().size(), grid)) {
      ++r.cases;
      if (gamma_transform(gamma_preimage(g, q), q) != g) r.fail(where + ": Gamma misses " + join_values(g));
    }
    for (const auto& e : enumerate_step_families(q.lattice(), grid)) {
      ++r.cases;
      const auto phi = lift_spectral_family(e, q);
      if (!(quotient_family(phi, q) == e)) r.fail(where + ": [E^phi] != E for the lift of " + to_string(e));
      if (gamma_transform(phi, q) != observable_function(e, q.spectrum())) r.fail(where + ": Gamma(lift E) != f_E for E = " + to_string(e));
      for (const auto& other : functions) {
        if (!(quotient_family(other, q) == e)) continue;
        std::vector<Rational> diff;
        for (int x = 0; x < n; ++x) diff.push_back(other(x) - phi(x));
        if (!in_kernel(MeasurableFunction(field, diff), ideal)) {
          r.fail(where + ": two lifts of " + to_string(e) + " differ outside I");
        }
      }
    }
  }
  return r;
}

/// Regular open algebras of all topologies on at most max_size points.
inline SuiteReport complete_increase(const Options& o) {
  SuiteReport r;
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<int> value(0, 4);
  for (int n = 1; n <= std::min(o.max_size, 4); ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      const std::string where = "topology " + topology_text(t);
      const auto s = enumerate_quasipoints(t.regular_open_lattice().lattice());
      ++r.cases;
      const auto cd = completely_distributive_scan(s);
      if (!cd.holds) r.fail(where + ": closure law fails in Q(T_r(M))");
      // Finite lattices are completely distributive exactly when distributive.
      ++r.cases;
      if (!s.lattice().is_distributive()) r.fail(where + ": T_r(M) is not distributive");
      for (int c = 0; c < 100; ++c) {
        ++r.cases;
        ObservableFunction g;
        for (int i = 0; i < s.size(); ++i) g.emplace_back(value(rng), 2);
        if (!completely_increasing_check(r_function(g, s), s.lattice())) {
          r.fail(where + ": r_g not completely increasing for g = " + join_values(g));
        }
      }
    }
    const auto d = FiniteTopSpace::discrete(n);
    const auto s = enumerate_quasipoints(d.regular_open_lattice().lattice());
    const auto p = pt_structure(d);
    for (const auto& g : all_point_functions(s.size(), half_grid())) {
      ++r.cases;
      // Q(T_r(M)) and Q(T(M)) coincide for discrete M.
      ComplexObservableFunction gc(g.begin(), g.end());
      if (star_condition_check(g, d, s).holds != cpt_membership(gc, p)) {
        r.fail("discrete space on " + std::to_string(n) + " points: condition (*) and C^pt membership differ for g = " + join_values(g));
      }
    }
  }
  return r;
}

/// f_* on discrete spaces up to 5 points.
inline SuiteReport pt_isomorphism(const Options& o) {
  SuiteReport r;
  std::mt19937_64 rng(o.seed);
  for (int n = 1; n <= std::min(o.max_size + 1, 5); ++n) {
    const auto t = FiniteTopSpace::discrete(n);
    const auto p = pt_structure(t);
    const auto& s = p.spectrum;
    const std::string where = "discrete space on " + std::to_string(n) + " points";
    ++r.cases;
    if (!p.pt || !p.compact || !*p.identification || s.size() != n) {
      r.fail(where + ": Q(T(M)) is not identified with M");
      continue;
    }
    std::vector<ComplexObservableFunction> images;
    for (const auto& re : all_point_functions(n, half_grid())) {
      ++r.cases;
      const ComplexPointFunction phi(re.begin(), re.end());
      const auto img = f_star(phi, t, s);
      for (int b = 0; b < s.size(); ++b) {
        if (!(img[b] == phi[(*p.pt)[b]])) r.fail(where + ": f_*(phi)(B_x) != phi(x) for phi = " + join_values(re));
      }
      if (!cpt_membership(img, p)) r.fail(where + ": f_*(phi) not in C^pt");
      images.push_back(img);
    }
    std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].re != b[k].re) return a[k].re < b[k].re;
      }
      return false;
    });
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) r.fail(where + ": f_* is not injective");
    for (const auto& g : all_point_functions(s.size(), half_grid())) {
      ++r.cases;
      ComplexPointFunction phi(n);
      for (int b = 0; b < s.size(); ++b) phi[(*p.pt)[b]] = g[b];
      const auto img = f_star(phi, t, s);
      for (int b = 0; b < s.size(); ++b) {
        if (!(img[b] == Complex(g[b]))) r.fail(where + ": f_* misses g = " + join_values(g));
      }
    }
    for (int c = 0; c < 40; ++c) {
      ++r.cases;
      ComplexPointFunction phi;
      ComplexPointFunction psi;
      for (int x = 0; x < n; ++x) {
        phi.emplace_back(random_rational(rng), random_rational(rng));
        psi.emplace_back(random_rational(rng), random_rational(rng));
      }
      ComplexPointFunction sum;
      ComplexPointFunction product;
      ComplexPointFunction conj;
      for (int x = 0; x < n; ++x) {
        sum.push_back(phi[x] + psi[x]);
        product.push_back(phi[x] * psi[x]);
        conj.push_back(phi[x].conj());
      }
      const auto fp = f_star(phi, t, s);
      const auto fs = f_star(psi, t, s);
      const auto f_sum = f_star(sum, t, s);
      const auto f_product = f_star(product, t, s);
      const auto f_conj = f_star(conj, t, s);
      Rational sup_phi = 0;
      Rational sup_img = 0;
      for (int x = 0; x < n; ++x) sup_phi = std::max(sup_phi, phi[x].norm_squared());
      for (int b = 0; b < s.size(); ++b) {
        sup_img = std::max(sup_img, fp[b].norm_squared());
        if (!(f_sum[b] == fp[b] + fs[b])) r.fail(where + ": f_* not additive");
        if (!(f_product[b] == fp[b] * fs[b])) r.fail(where + ": f_* not multiplicative");
        if (!(f_conj[b] == fp[b].conj())) r.fail(where + ": f_* does not commute with conjugation");
      }
      if (sup_phi != sup_img) r.fail(where + ": f_* does not preserve the sup norm");
    }
  }
  return r;
}

/// Named counterexamples; witnesses go to `notes`.
inline SuiteReport counterexamples(const Options&, std::vector<std::string>* notes = nullptr) {
  SuiteReport r;
  auto note = [&](const std::string& s) {
    if (notes) notes->push_back(s);
  };
  {
    ++r.cases;
    const auto t = FiniteTopSpace::sierpinski();
    const auto& tl = t.open_lattice();
    const StepSpectralFamily e(tl.lattice(), {Rational(0), Rational(1)}, {tl.element_of(0b01), tl.element_of(0b11)});
    const auto sr = is_strongly_regular(e, t);
    if (sr.holds || !sr.witness) {
      r.fail("Sierpinski family {0 : {1}, 1 : {1,2}} is reported strongly regular");
    } else {
      note("Sierpinski family {0 : {1}, 1 : {1,2}}: not strongly regular, witness (" + to_string(sr.witness->first) +
           ", " + to_string(sr.witness->second) + ")");
    }
    const auto f = induced_function(e, t);
    if (is_continuous(f, t)) r.fail("induced function of the Sierpinski family is continuous");
    else note("its induced function " + join_values(f) + " is not continuous");
  }
  {
    ++r.cases;
    const Lattice l = fixtures::mo(2);
    if (l.is_distributive()) r.fail("MO2 reported distributive");
    for (int a = 0; a < l.size(); ++a) {
      for (int b = 0; b < l.size(); ++b) {
        for (int c = 0; c < l.size(); ++c) {
          if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) {
            note("MO2 is not distributive: " + l.name(a) + " and (" + l.name(b) + " or " + l.name(c) + ")");
            a = b = c = l.size();
          }
        }
      }
    }
    const auto cd = is_completely_distributive(l);
    if (cd.holds) {
      r.fail("MO2 reported completely distributive");
    } else {
      std::string w;
      for (ElementId a : cd.witness) w += (w.empty() ? "" : ", ") + l.name(a);
      note("MO2 is not completely distributive: witness family {" + w + "}");
    }
  }
  {
    ++r.cases;
    const auto s = enumerate_quasipoints(fixtures::chain(3));
    if (s.size() != 1) r.fail("chain(3) has " + std::to_string(s.size()) + " quasipoints");
    else note("chain(3) has exactly one quasipoint, " + s.point_name(0));
  }
  return r;
}

struct Suite {
  const char* name;
  const char* summary;
  std::function<SuiteReport(const Options&, std::vector<std::string>*)> run;
};

inline const std::vector<Suite>& all() {
  static const std::vector<Suite> kSuites = {
      {"bijection", "E^{f_E} = E and f_{E^f} = f on all fields of sets",
       [](const Options& o, auto*) { return bijection(o); }},
      {"injectivity", "distinct families have distinct observable functions",
       [](const Options& o, auto*) { return injectivity(o); }},
      {"continuity", "observable functions are continuous on the Stone spectrum",
       [](const Options& o, auto*) { return continuity(o); }},
      {"decomposition", "2-parameter families decompose uniquely",
       [](const Options& o, auto*) { return decomposition(o); }},
      {"spectral-theorem", "Riemann-Stieltjes sums approximate measurable functions",
       [](const Options& o, auto*) { return spectral_theorem(o); }},
      {"continuous-correspondence", "continuous functions and strongly regular families",
       [](const Options& o, auto* n) { return continuous_correspondence(o, n); }},
      {"quotient", "quotients by ideals and the Gamma transform", [](const Options& o, auto*) { return quotient(o); }},
      {"complete-increase", "regular open algebras, r-functions and condition (*)",
       [](const Options& o, auto*) { return complete_increase(o); }},
      {"pt-isomorphism", "f_* onto C^pt on discrete spaces", [](const Options& o, auto*) { return pt_isomorphism(o); }},
      {"counterexamples", "Sierpinski, MO2 and chain(3) witnesses",
       [](const Options& o, auto* n) { return counterexamples(o, n); }},
  };
  return kSuites;
}

inline const Suite* find(std::string_view name) {
  for (const auto& s : all()) {
    if (name == s.name) return &s;
  }
  return nullptr;
}

}  // namespace stonespec::suites
