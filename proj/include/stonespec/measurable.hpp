#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stonespec/bits.hpp"
#include "stonespec/errors.hpp"
#include "stonespec/rational.hpp"
#include "stonespec/report.hpp"
#include "stonespec/set_lattice.hpp"
#include "stonespec/spectral_family.hpp"
#include "stonespec/stone_spectrum.hpp"

namespace stonespec {

/// A finite field of sets over M, stored as its atom partition.
class FiniteFieldOfSets {
 public:
  /// `atoms` must be nonempty, pairwise disjoint and cover M.
  static FiniteFieldOfSets from_atoms(std::vector<std::string> points, std::vector<Mask> atoms) {
    const Mask ground = full_mask(static_cast<int>(points.size()));
    if (points.empty()) throw InputError("a field of sets needs a nonempty ground set");
    if (points.size() > 6) throw InputError("fields of sets are capped at 6 points (64 members)");
    Mask seen = 0;
    for (Mask a : atoms) {
      if (a == 0) throw InputError("empty atom");
      if ((a & ~ground) != 0) throw InputError("atom leaves the ground set");
      if ((a & seen) != 0) throw InputError("atoms overlap");
      seen |= a;
    }
    if (seen != ground) throw InputError("atoms do not cover the ground set");
    std::sort(atoms.begin(), atoms.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
    std::vector<Mask> sets;
    const int k = static_cast<int>(atoms.size());
    for (Mask pick = 0; pick < (Mask{1} << k); ++pick) {
      Mask s = 0;
      for_each_bit(pick, [&](int i) { s |= atoms[i]; });
      sets.push_back(s);
    }
    FiniteFieldOfSets f;
    f.atoms_ = std::move(atoms);
    f.lattice_ = SetLattice::build(std::move(points), std::move(sets), [ground](Mask s) { return ground & ~s; });
    return f;
  }

  /// Smallest field containing the generators.
  static FiniteFieldOfSets generated_by(std::vector<std::string> points, const std::vector<Mask>& generators) {
    const int n = static_cast<int>(points.size());
    const Mask ground = full_mask(n);
    std::vector<Mask> atoms;
    Mask covered = 0;
    for (int x = 0; x < n; ++x) {
      if (has(covered, x)) continue;
      Mask atom = ground;
      for (Mask g : generators) atom &= has(g, x) ? g : ground & ~g;
      atoms.push_back(atom);
      covered |= atom;
    }
    return from_atoms(std::move(points), std::move(atoms));
  }

  static FiniteFieldOfSets power_set(std::vector<std::string> points) {
    std::vector<Mask> atoms;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) atoms.push_back(bit(i));
    return from_atoms(std::move(points), std::move(atoms));
  }

  static FiniteFieldOfSets power_set(int n) { return power_set(numbered_points(n)); }

  const SetLattice& sets() const { return lattice_; }
  const Lattice& lattice() const { return lattice_.lattice(); }
  const std::vector<Mask>& atoms() const { return atoms_; }
  int ground_size() const { return lattice_.ground_size(); }
  Mask ground() const { return lattice_.ground(); }
  const std::vector<std::string>& points() const { return lattice_.points(); }
  bool contains(Mask s) const { return lattice_.contains(s); }

  /// Index of the atom containing point x.
  int atom_of(int x) const {
    for (int i = 0; i < static_cast<int>(atoms_.size()); ++i) {
      if (has(atoms_[i], x)) return i;
    }
    throw InputError("point " + std::to_string(x) + " is not in the ground set");
  }

  int point_index(const std::string& name) const {
    const auto& p = points();
    auto it = std::find(p.begin(), p.end(), name);
    if (it == p.end()) throw InputError("unknown point '" + name + "'");
    return static_cast<int>(it - p.begin());
  }

 private:
  std::vector<Mask> atoms_;
  SetLattice lattice_;
};

/// Every field of sets on n numbered points, one per set partition.
inline std::vector<FiniteFieldOfSets> all_fields(int n) {
  std::vector<FiniteFieldOfSets> out;
  std::vector<int> block(n, 0);
  // Restricted growth strings: block[i] <= 1 + max(block[0..i-1]).
  std::function<void(int, int)> go = [&](int i, int blocks) {
    if (i == n) {
      std::vector<Mask> atoms(blocks, 0);
      for (int x = 0; x < n; ++x) atoms[block[x]] |= bit(x);
      out.push_back(FiniteFieldOfSets::from_atoms(numbered_points(n), std::move(atoms)));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block[i] = b;
      go(i + 1, std::max(blocks, b + 1));
    }
  };
  go(0, 0);
  return out;
}

/// A real function on M that is constant on every atom of its field.
class MeasurableFunction {
 public:
  MeasurableFunction(FiniteFieldOfSets field, std::vector<Rational> values)
      : field_(std::move(field)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != field_.ground_size()) throw InputError("function is not total on M");
    for (Mask a : field_.atoms()) {
      const Rational v = values_[lowest(a)];
      for_each_bit(a, [&](int x) {
        if (values_[x] != v) {
          throw InputError("function is not measurable: it separates points " + field_.points()[lowest(a)] +
                           " and " + field_.points()[x] + " of one atom");
        }
      });
    }
  }

  /// Constant `atom_values[i]` on atom i.
  static MeasurableFunction on_atoms(const FiniteFieldOfSets& field, const std::vector<Rational>& atom_values) {
    if (atom_values.size() != field.atoms().size()) throw InputError("one value per atom required");
    std::vector<Rational> v(field.ground_size());
    for (std::size_t i = 0; i < atom_values.size(); ++i) {
      for_each_bit(field.atoms()[i], [&](int x) { v[x] = atom_values[i]; });
    }
    return {field, std::move(v)};
  }

  const FiniteFieldOfSets& field() const { return field_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator()(int x) const { return values_.at(x); }

  /// {x : phi(x) <= lambda}
  Mask sublevel(const Rational& lambda) const {
    Mask s = 0;
    for (int x = 0; x < static_cast<int>(values_.size()); ++x) {
      if (values_[x] <= lambda) s |= bit(x);
    }
    return s;
  }

  friend bool operator==(const MeasurableFunction& a, const MeasurableFunction& b) {
    return a.field_.lattice().same_as(b.field_.lattice()) && a.values_ == b.values_;
  }

 private:
  FiniteFieldOfSets field_;
  std::vector<Rational> values_;
};

/// Every atom-constant function with values in `grid`.
inline std::vector<MeasurableFunction> all_functions(const FiniteFieldOfSets& field, const std::vector<Rational>& grid) {
  std::vector<MeasurableFunction> out;
  const int k = static_cast<int>(field.atoms().size());
  std::vector<Rational> v(k);
  std::function<void(int)> go = [&](int i) {
    if (i == k) {
      out.push_back(MeasurableFunction::on_atoms(field, v));
      return;
    }
    for (const auto& g : grid) {
      v[i] = g;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

/// E^phi: lambda -> phi^{-1}((-inf, lambda]).
inline StepSpectralFamily spectral_family_of(const MeasurableFunction& phi) {
  const auto& field = phi.field();
  std::vector<Rational> thresholds = distinct_sorted(phi.values());
  std::vector<ElementId> values;
  for (const auto& t : thresholds) values.push_back(field.sets().element_of(phi.sublevel(t)));
  return {field.lattice(), std::move(thresholds), std::move(values)};
}

inline void require_field_lattice(const StepSpectralFamily& e, const FiniteFieldOfSets& field) {
  if (!e.lattice().same_as(field.lattice())) throw InputError("the family does not live in this field of sets");
}

/// f_E(x) = min{lambda_i : x in E_{lambda_i}}.
inline MeasurableFunction function_of(const StepSpectralFamily& e, const FiniteFieldOfSets& field) {
  require_field_lattice(e, field);
  std::vector<Rational> v(field.ground_size());
  for (int x = 0; x < field.ground_size(); ++x) {
    int j = 0;
    while (!has(field.sets().set_of(e.values()[j]), x)) ++j;
    v[x] = e.thresholds()[j];
  }
  return {field, std::move(v)};
}

/// E^{f_E} = E for every family with thresholds in `grid`, and f_{E^f} = f
/// for every atom-constant f into `grid`.
inline SuiteReport bijection_suite(const FiniteFieldOfSets& field, const std::vector<Rational>& grid) {
  SuiteReport report;
  for (const auto& e : enumerate_step_families(field.lattice(), grid)) {
    ++report.cases;
    if (!(spectral_family_of(function_of(e, field)) == e)) report.fail("E^{f_E} != E for E = " + to_string(e));
  }
  for (const auto& f : all_functions(field, grid)) {
    ++report.cases;
    if (!(function_of(spectral_family_of(f), field) == f)) {
      report.fail("f_{E^f} != f for E^f = " + to_string(spectral_family_of(f)));
    }
  }
  return report;
}

/// The Riemann-Stieltjes sum evaluated at the points of M.
inline std::vector<Rational> riemann_stieltjes(const StepSpectralFamily& e, const FiniteFieldOfSets& field,
                                               std::span<const Rational> grid, Tag tag = Tag::right) {
  require_field_lattice(e, field);
  return stieltjes_sum(
      e, grid, field.ground_size(), [&](int x, ElementId a) { return has(field.sets().set_of(a), x); }, tag);
}

/// A proper ideal of a finite field of sets.
///
/// Every ideal of a finite field is principal: its members are the field
/// sets inside the carrier N, the union of all members.
class SetIdeal {
 public:
  /// The ideal generated by `generators`; throws when it contains M.
  SetIdeal(FiniteFieldOfSets field, const std::vector<Mask>& generators) : field_(std::move(field)) {
    for (Mask g : generators) {
      if (!field_.contains(g)) throw InputError("generator " + field_.sets().name(g) + " is not in the field");
      carrier_ |= g;
    }
    if (carrier_ == field_.ground()) throw InputError("the ideal contains M");
  }

  const FiniteFieldOfSets& field() const { return field_; }
  Mask carrier() const { return carrier_; }
  bool contains(Mask a) const { return field_.contains(a) && is_subset(a, carrier_); }

  std::vector<Mask> members() const {
    std::vector<Mask> out;
    for (Mask s : field_.sets().sets()) {
      if (is_subset(s, carrier_)) out.push_back(s);
    }
    return out;
  }

  /// I^perp = {A : M \ A in I} = {A : A contains M \ N}.
  std::vector<Mask> perp() const {
    std::vector<Mask> out;
    const Mask need = field_.ground() & ~carrier_;
    for (Mask s : field_.sets().sets()) {
      if (is_subset(need, s)) out.push_back(s);
    }
    return out;
  }

  /// I^perp as a mask over the elements of the field lattice.
  Mask perp_elements() const {
    Mask out = 0;
    for (Mask s : perp()) out |= bit(field_.sets().element_of(s));
    return out;
  }

 private:
  FiniteFieldOfSets field_;
  Mask carrier_ = 0;
};

/// Every ideal of the field, ordered by carrier.
inline std::vector<SetIdeal> all_ideals(const FiniteFieldOfSets& field) {
  std::vector<SetIdeal> out;
  for (Mask s : field.sets().sets()) {
    if (s != field.ground()) out.emplace_back(field, std::vector<Mask>{s});
  }
  return out;
}

/// A(M)/I with classes represented by A \ N, plus the identification of its
/// quasipoints with the quasipoints of A(M) containing I^perp.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(SetIdeal ideal)
      : ideal_(std::move(ideal)), base_(enumerate_quasipoints(ideal_.field().lattice())) {
    const auto& field = ideal_.field();
    const Mask rest = field.ground() & ~ideal_.carrier();
    std::vector<Mask> reps;
    for (Mask s : field.sets().sets()) reps.push_back(s & rest);
    classes_ = SetLattice::build(field.points(), std::move(reps), [rest](Mask s) { return rest & ~s; });
    spectrum_ = enumerate_quasipoints(classes_.lattice());

    const Lattice& bl = field.lattice();
    const Mask perp = ideal_.perp_elements();
    for (int q = 0; q < spectrum_->size(); ++q) {
      std::optional<int> match;
      for (int b = 0; b < base_.size() && !match; ++b) {
        if (!is_subset(perp, base_.point(b))) continue;
        bool same = true;
        for (int a = 0; a < bl.size() && same; ++a) {
          const bool in_quotient = has(spectrum_->point(q), class_of(field.sets().set_of(a)));
          same = in_quotient == has(base_.point(b), a);
        }
        if (same) match = b;
      }
      if (!match) throw Error("quotient quasipoint " + spectrum_->point_name(q) + " has no counterpart");
      embedding_.push_back(*match);
    }
  }

  const SetIdeal& ideal() const { return ideal_; }
  const FiniteFieldOfSets& field() const { return ideal_.field(); }
  const SetLattice& classes() const { return classes_; }
  const Lattice& lattice() const { return classes_.lattice(); }
  const StoneSpectrum& spectrum() const { return *spectrum_; }
  const StoneSpectrum& base_spectrum() const { return base_; }

  /// Base quasipoint index of each quotient quasipoint.
  const std::vector<int>& embedding() const { return embedding_; }

  /// Base quasipoints containing I^perp, as a mask over base indices.
  Mask embedded_points() const {
    Mask out = 0;
    const Mask perp = ideal_.perp_elements();
    for (int b = 0; b < base_.size(); ++b) {
      if (is_subset(perp, base_.point(b))) out |= bit(b);
    }
    return out;
  }

  /// [A] for a set A of the field.
  ElementId class_of(Mask a) const {
    if (!field().contains(a)) throw InputError("set " + field().sets().name(a) + " is not in the field");
    return classes_.element_of(a & ~ideal_.carrier());
  }

  /// Canonical representative of a class.
  Mask representative(ElementId c) const { return classes_.set_of(c); }

 private:
  SetIdeal ideal_;
  StoneSpectrum base_;
  SetLattice classes_;
  std::optional<StoneSpectrum> spectrum_;
  std::vector<int> embedding_;
};

/// E^{[phi]}: lambda -> [phi^{-1}((-inf, lambda])].
inline StepSpectralFamily quotient_family(const MeasurableFunction& phi, const QuotientAlgebra& q) {
  std::vector<Rational> thresholds = distinct_sorted(phi.values());
  std::vector<ElementId> values;
  for (const auto& t : thresholds) values.push_back(q.class_of(phi.sublevel(t)));
  return {q.lattice(), std::move(thresholds), std::move(values)};
}

/// Gamma([phi]) = f_{E^{[phi]}} on Q(A(M)/I).
inline ObservableFunction gamma_transform(const MeasurableFunction& phi, const QuotientAlgebra& q) {
  return observable_function(quotient_family(phi, q), q.spectrum());
}

/// f_{E^phi} on Q(A(M)) restricted to the embedded quasipoints, listed in
/// quotient order. Agrees with gamma_transform.
inline ObservableFunction restricted_gelfand(const MeasurableFunction& phi, const QuotientAlgebra& q) {
  const auto full = observable_function(spectral_family_of(phi), q.base_spectrum());
  ObservableFunction out;
  for (int b : q.embedding()) out.push_back(full[b]);
  return out;
}

inline ComplexObservableFunction gamma_transform(const MeasurableFunction& re, const MeasurableFunction& im,
                                                 const QuotientAlgebra& q) {
  const auto r = gamma_transform(re, q);
  const auto i = gamma_transform(im, q);
  ComplexObservableFunction out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) out[k] = {r[k], i[k]};
  return out;
}

/// phi vanishes outside the carrier of I, i.e. outside some member of I.
inline bool in_kernel(const MeasurableFunction& phi, const SetIdeal& ideal) {
  for (int x = 0; x < ideal.field().ground_size(); ++x) {
    if (!has(ideal.carrier(), x) && phi(x) != 0) return false;
  }
  return true;
}

/// Some phi with Gamma([phi]) = g: g is spread over the atoms outside N and
/// phi is 0 on N.
inline MeasurableFunction gamma_preimage(const ObservableFunction& g, const QuotientAlgebra& q) {
  if (static_cast<int>(g.size()) != q.spectrum().size()) throw InputError("function is not total on the quasipoints");
  std::vector<Rational> v(q.field().ground_size(), Rational(0));
  for (int k = 0; k < q.spectrum().size(); ++k) {
    for_each_bit(q.representative(q.spectrum().generator(k)), [&](int x) { v[x] = g[k]; });
  }
  return {q.field(), std::move(v)};
}

/// phi with [E^phi_lambda] = E_lambda. Points outside N get the first
/// threshold whose representative contains them; points of N get the last
/// threshold, where the class is [M].
inline MeasurableFunction lift_spectral_family(const StepSpectralFamily& e, const QuotientAlgebra& q) {
  if (!e.lattice().same_as(q.lattice())) throw InputError("the family does not live in this quotient");
  std::vector<Rational> v(q.field().ground_size(), e.upper_bound());
  for (int x = 0; x < q.field().ground_size(); ++x) {
    if (has(q.ideal().carrier(), x)) continue;
    for (int j = 0; j < e.jumps(); ++j) {
      if (has(q.representative(e.values()[j]), x)) {
        v[x] = e.thresholds()[j];
        break;
      }
    }
  }
  return {q.field(), std::move(v)};
}

}  // namespace stonespec
