#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "stonespec/bits.hpp"
#include "stonespec/errors.hpp"
#include "stonespec/rational.hpp"
#include "stonespec/set_lattice.hpp"
#include "stonespec/spectral_family.hpp"
#include "stonespec/stone_spectrum.hpp"

namespace stonespec {

/// Real function on the points of a finite space, indexed by point.
using PointFunction = std::vector<Rational>;
using ComplexPointFunction = std::vector<Complex>;

/// A topology on at most 6 points.
class FiniteTopSpace {
 public:
  /// Throws InputError unless `opens` contains the empty set and M and is
  /// closed under pairwise union and intersection.
  static FiniteTopSpace from_opens(std::vector<std::string> points, std::vector<Mask> opens) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw InputError("a topological space needs at least one point");
    if (n > 6) throw InputError("finite spaces are capped at 6 points");
    const Mask ground = full_mask(n);
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    auto is_open = [&](Mask s) { return std::binary_search(opens.begin(), opens.end(), s); };
    for (Mask u : opens) {
      if ((u & ~ground) != 0) throw InputError("open set leaves the point set");
    }
    if (!is_open(0)) throw InputError("the empty set must be open");
    if (!is_open(ground)) throw InputError("the whole space must be open");
    for (Mask u : opens) {
      for (Mask v : opens) {
        if (!is_open(u | v)) throw InputError("opens are not closed under union: " + set_name(u | v, points));
        if (!is_open(u & v)) throw InputError("opens are not closed under intersection: " + set_name(u & v, points));
      }
    }
    return FiniteTopSpace(std::move(points), std::move(opens));
  }

  /// Closes a subbase under finite unions and intersections.
  static FiniteTopSpace generated_by(std::vector<std::string> points, const std::vector<Mask>& subbase) {
    const Mask ground = full_mask(static_cast<int>(points.size()));
    std::vector<Mask> opens{0, ground};
    for (Mask s : subbase) opens.push_back(s & ground);
    return from_opens(std::move(points), close_under_lattice_ops(std::move(opens)));
  }

  static FiniteTopSpace discrete(int n) {
    std::vector<Mask> opens;
    for (Mask s = 0; s <= full_mask(n); ++s) opens.push_back(s);
    return from_opens(numbered_points(n), std::move(opens));
  }

  /// Points 1, 2 with opens {}, {1}, {1,2}.
  static FiniteTopSpace sierpinski() { return from_opens(numbered_points(2), {0, 0b01, 0b11}); }

  int size() const { return static_cast<int>(d_->points.size()); }
  Mask ground() const { return full_mask(size()); }
  const std::vector<std::string>& points() const { return d_->points; }
  const std::vector<Mask>& opens() const { return d_->opens; }
  std::string name(Mask s) const { return set_name(s, d_->points); }

  int point_index(const std::string& name) const {
    auto it = std::find(d_->points.begin(), d_->points.end(), name);
    if (it == d_->points.end()) throw InputError("unknown point '" + name + "'");
    return static_cast<int>(it - d_->points.begin());
  }

  bool is_open(Mask s) const { return std::binary_search(d_->opens.begin(), d_->opens.end(), s); }
  bool is_closed(Mask s) const { return is_open(ground() & ~s); }

  Mask interior(Mask x) const {
    Mask out = 0;
    for (Mask u : d_->opens) {
      if (is_subset(u, x)) out |= u;
    }
    return out;
  }
  Mask closure(Mask x) const { return ground() & ~interior(ground() & ~x); }

  /// U^c = M \ closure(U).
  Mask pseudocomplement(Mask u) const { return ground() & ~closure(u); }

  bool is_regular_open(Mask u) const { return interior(closure(u)) == u; }

  /// Finite spaces are Hausdorff exactly when discrete.
  bool is_hausdorff() const {
    for (int x = 0; x < size(); ++x) {
      if (!is_open(bit(x))) return false;
    }
    return true;
  }

  /// T(M); not orthocomplemented in general.
  const SetLattice& open_lattice() const { return d_->t; }

  /// T_r(M) with U^c as orthocomplement.
  const SetLattice& regular_open_lattice() const { return d_->tr; }

  /// Minimal open neighbourhood of x.
  Mask neighbourhood(int x) const {
    Mask out = ground();
    for (Mask u : d_->opens) {
      if (has(u, x)) out &= u;
    }
    return out;
  }

  friend bool operator==(const FiniteTopSpace& a, const FiniteTopSpace& b) {
    return a.d_->points == b.d_->points && a.d_->opens == b.d_->opens;
  }

  static std::vector<Mask> close_under_lattice_ops(std::vector<Mask> sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    bool changed = true;
    while (changed) {
      changed = false;
      const std::size_t n = sets.size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (Mask s : {sets[i] | sets[j], sets[i] & sets[j]}) {
            if (!std::binary_search(sets.begin(), sets.begin() + static_cast<std::ptrdiff_t>(n), s) &&
                std::find(sets.begin() + static_cast<std::ptrdiff_t>(n), sets.end(), s) == sets.end()) {
              sets.push_back(s);
              changed = true;
            }
          }
        }
      }
      std::sort(sets.begin(), sets.end());
      sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    }
    return sets;
  }

 private:
  struct Data {
    std::vector<std::string> points;
    std::vector<Mask> opens;
    SetLattice t;
    SetLattice tr;
  };

  FiniteTopSpace(std::vector<std::string> points, std::vector<Mask> opens) {
    auto d = std::make_shared<Data>();
    d->points = std::move(points);
    d->opens = std::move(opens);
    d_ = d;
    d->t = SetLattice::build(d->points, d->opens);
    std::vector<Mask> regular;
    for (Mask u : d->opens) {
      if (is_regular_open(u)) regular.push_back(u);
    }
    d->tr = SetLattice::build(d->points, std::move(regular), [this](Mask u) { return pseudocomplement(u); });
  }

  std::shared_ptr<const Data> d_;
};

/// Every topology on n labeled points (1, 4, 29, 355, 6942 for n = 1..5).
///
/// Breadth-first: each topology is extended by one more subset and closed
/// under union and intersection; states are deduplicated by their open
/// family.
inline std::vector<FiniteTopSpace> enumerate_topologies(int n) {
  if (n < 1 || n > 5) throw InputError("topology enumeration supports 1 to 5 points");
  const Mask ground = full_mask(n);
  const int subsets = 1 << n;
  auto family = [](const std::vector<Mask>& opens) {
    Mask f = 0;
    for (Mask u : opens) f |= bit(static_cast<int>(u));
    return f;
  };
  std::vector<std::vector<Mask>> found{{0, ground}};
  std::unordered_set<Mask> seen{family(found.front())};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const auto current = found[queue.front()];
    queue.pop_front();
    for (int s = 1; s < subsets - 1; ++s) {
      if (std::binary_search(current.begin(), current.end(), static_cast<Mask>(s))) continue;
      auto next = current;
      next.push_back(static_cast<Mask>(s));
      next = FiniteTopSpace::close_under_lattice_ops(std::move(next));
      if (seen.insert(family(next)).second) {
        found.push_back(std::move(next));
        queue.push_back(found.size() - 1);
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<FiniteTopSpace> out;
  for (auto& opens : found) out.push_back(FiniteTopSpace::from_opens(numbered_points(n), std::move(opens)));
  return out;
}

/// Every function from the points into `grid`.
inline std::vector<PointFunction> all_point_functions(int n, const std::vector<Rational>& grid) {
  std::vector<PointFunction> out;
  PointFunction f(n);
  std::function<void(int)> go = [&](int i) {
    if (i == n) {
      out.push_back(f);
      return;
    }
    for (const auto& g : grid) {
      f[i] = g;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

/// {x : f(x) <= lambda}
inline Mask sublevel(const PointFunction& f, const Rational& lambda) {
  Mask s = 0;
  for (int x = 0; x < static_cast<int>(f.size()); ++x) {
    if (f[x] <= lambda) s |= bit(x);
  }
  return s;
}

/// The construction lambda -> int(f^{-1}((-inf, lambda])) did not reach M.
struct NotASpectralFamily {
  std::vector<Rational> thresholds;
  std::vector<Mask> values;
  std::string reason;
};

/// E^f_lambda = int(f^{-1}((-inf, lambda])), valued in T(M).
inline std::variant<StepSpectralFamily, NotASpectralFamily> spectral_family_of_continuous(const PointFunction& f,
                                                                                       const FiniteTopSpace& t) {
  if (static_cast<int>(f.size()) != t.size()) throw InputError("function is not total on the points");
  const auto thresholds = distinct_sorted(f);
  std::vector<Mask> values;
  for (const auto& lambda : thresholds) values.push_back(t.interior(sublevel(f, lambda)));
  if (values.back() != t.ground()) {
    return NotASpectralFamily{thresholds, values, "the join of the values is " + t.name(values.back()) + ", not M"};
  }
  std::vector<ElementId> ids;
  for (Mask v : values) ids.push_back(t.open_lattice().element_of(v));
  return StepSpectralFamily(t.open_lattice().lattice(), thresholds, std::move(ids));
}

/// Like spectral_family_of_continuous, but throws on the diagnosis.
inline StepSpectralFamily spectral_family_of_function(const PointFunction& f, const FiniteTopSpace& t) {
  auto r = spectral_family_of_continuous(f, t);
  if (auto* bad = std::get_if<NotASpectralFamily>(&r)) throw InvalidFamily(bad->reason);
  return std::get<StepSpectralFamily>(std::move(r));
}

inline void require_open_lattice(const StepSpectralFamily& e, const FiniteTopSpace& t) {
  if (!e.lattice().same_as(t.open_lattice().lattice())) throw InputError("the family is not valued in T(M)");
}

struct StrongRegularity {
  bool holds = true;
  /// lambda < mu with closure(E_lambda) not inside E_mu.
  std::optional<std::pair<Rational, Rational>> witness;
};

/// closure(E_lambda) within E_mu for all lambda < mu.
///
/// Taking mu inside the step of lambda shows every value must be closed; the
/// witness is the jump and the midpoint of its step.
inline StrongRegularity is_strongly_regular(const StepSpectralFamily& e, const FiniteTopSpace& t) {
  require_open_lattice(e, t);
  const auto& sets = t.open_lattice();
  for (int i = 0; i < e.jumps(); ++i) {
    const Mask v = sets.set_of(e.values()[i]);
    if (is_subset(t.closure(v), v)) continue;
    const Rational lambda = e.thresholds()[i];
    const Rational mu = i + 1 < e.jumps() ? (lambda + e.thresholds()[i + 1]) / 2 : lambda + 1;
    return {false, std::make_pair(lambda, mu)};
  }
  return {};
}

/// Every value regular open.
inline bool is_regular(const StepSpectralFamily& e, const FiniteTopSpace& t) {
  require_open_lattice(e, t);
  for (ElementId v : e.values()) {
    if (!t.is_regular_open(t.open_lattice().set_of(v))) return false;
  }
  return true;
}

enum class FamilyClass { strongly_regular, regular, neither };

inline FamilyClass classify(const StepSpectralFamily& e, const FiniteTopSpace& t) {
  if (is_strongly_regular(e, t).holds) return FamilyClass::strongly_regular;
  return is_regular(e, t) ? FamilyClass::regular : FamilyClass::neither;
}

/// D(E) = M \ (intersection of all E_lambda), bottom included.
inline Mask admissible_domain(const StepSpectralFamily& e, const FiniteTopSpace& t) {
  require_open_lattice(e, t);
  Mask meet = t.open_lattice().set_of(e.eval(e.lower_bound() - 1));
  for (ElementId v : e.values()) meet &= t.open_lattice().set_of(v);
  return t.ground() & ~meet;
}

/// f_E(x) = min{lambda_i : x in E_{lambda_i}}; total because D(E) = M for
/// bounded families.
inline PointFunction induced_function(const StepSpectralFamily& e, const FiniteTopSpace& t) {
  require_open_lattice(e, t);
  PointFunction f(t.size());
  for (int x = 0; x < t.size(); ++x) {
    int j = 0;
    while (!has(t.open_lattice().set_of(e.values()[j]), x)) ++j;
    f[x] = e.thresholds()[j];
  }
  return f;
}

/// Preimages of all open intervals are open. Intervals between consecutive
/// cut points (value midpoints and the two infinities) decide this.
inline bool is_continuous(const PointFunction& f, const FiniteTopSpace& t) {
  if (static_cast<int>(f.size()) != t.size()) throw InputError("function is not total on the points");
  const auto values = distinct_sorted(f);
  const int m = static_cast<int>(values.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      Mask pre = 0;
      for (int x = 0; x < t.size(); ++x) {
        if (values[a] <= f[x] && f[x] <= values[b]) pre |= bit(x);
      }
      if (!t.is_open(pre)) return false;
    }
  }
  return true;
}

/// Quasipoints over points for the Stone spectrum of T(M).
struct PtStructure {
  FiniteTopSpace space;
  StoneSpectrum spectrum;
  /// fibres[x]: quasipoints over x, as a mask over spectrum indices.
  std::vector<Mask> fibres;
  /// Union of the fibres.
  Mask qpt = 0;
  /// pt(B) for B in Q^pt; set only when the fibres are pairwise disjoint.
  std::optional<std::vector<int>> pt;
  /// X open in M iff pt^{-1}(X) open in Q^pt; set only when pt is.
  std::optional<bool> identification;
  /// Q^pt = Q(T(M)).
  bool compact = false;
};

/// B is over x iff x lies in the closure of every member of B.
inline bool is_over(const StoneSpectrum& s, const SetLattice& sets, const FiniteTopSpace& t, int b, int x) {
  bool over = true;
  for_each_bit(s.point(b), [&](int u) {
    if (!has(t.closure(sets.set_of(u)), x)) over = false;
  });
  return over;
}

inline PtStructure pt_structure(const FiniteTopSpace& t) {
  PtStructure out{t, enumerate_quasipoints(t.open_lattice().lattice()), {}, 0, std::nullopt, std::nullopt, false};
  const auto& s = out.spectrum;
  for (int x = 0; x < t.size(); ++x) {
    Mask fibre = 0;
    for (int b = 0; b < s.size(); ++b) {
      if (is_over(s, t.open_lattice(), t, b, x)) fibre |= bit(b);
    }
    out.fibres.push_back(fibre);
    out.qpt |= fibre;
  }
  out.compact = out.qpt == s.all();
  bool disjoint = true;
  for (int x = 0; x < t.size(); ++x) {
    for (int y = x + 1; y < t.size(); ++y) disjoint = disjoint && (out.fibres[x] & out.fibres[y]) == 0;
  }
  if (!disjoint) return out;
  std::vector<int> pt(s.size(), -1);
  for (int x = 0; x < t.size(); ++x) for_each_bit(out.fibres[x], [&](int b) { pt[b] = x; });
  // Opens of the subspace Q^pt are the traces of opens of Q.
  const auto q_opens = s.open_sets();
  auto open_in_qpt = [&](Mask y) {
    return std::any_of(q_opens.begin(), q_opens.end(), [&](Mask o) { return (o & out.qpt) == y; });
  };
  bool identification = true;
  for (Mask x = 0; x <= t.ground(); ++x) {
    Mask pre = 0;
    for_each_bit(out.qpt, [&](int b) {
      if (has(x, pt[b])) pre |= bit(b);
    });
    if (t.is_open(x) != open_in_qpt(pre)) identification = false;
  }
  out.pt = std::move(pt);
  out.identification = identification;
  return out;
}

/// g is constant on every fibre Q_x.
inline bool cpt_membership(const ComplexObservableFunction& g, const PtStructure& p) {
  if (!p.space.is_hausdorff()) throw UnsupportedStructure("the fibre test needs a Hausdorff (discrete) space");
  if (static_cast<int>(g.size()) != p.spectrum.size()) throw InputError("function is not total on the quasipoints");
  for (Mask fibre : p.fibres) {
    if (fibre == 0) continue;
    const Complex v = g[lowest(fibre)];
    bool constant = true;
    for_each_bit(fibre, [&](int b) { constant = constant && g[b] == v; });
    if (!constant) return false;
  }
  return true;
}

inline ObservableFunction f_star(const PointFunction& phi, const FiniteTopSpace& t, const StoneSpectrum& s) {
  if (!is_continuous(phi, t)) throw InputError("f_* is defined on continuous functions only");
  return observable_function(spectral_family_of_function(phi, t), s);
}

/// f_*(phi) = f_{E^{Re phi}} + i f_{E^{Im phi}} on Q(T(M)).
inline ComplexObservableFunction f_star(const ComplexPointFunction& phi, const FiniteTopSpace& t,
                                        const StoneSpectrum& s) {
  PointFunction re;
  PointFunction im;
  for (const auto& v : phi) {
    re.push_back(v.re);
    im.push_back(v.im);
  }
  const auto fr = f_star(re, t, s);
  const auto fi = f_star(im, t, s);
  ComplexObservableFunction out(fr.size());
  for (std::size_t k = 0; k < fr.size(); ++k) out[k] = {fr[k], fi[k]};
  return out;
}

/// r_g(U) = max{g(B) : U in B} for U in T_r(M) \ {empty}; nullopt at bottom.
using SetFunction = std::vector<std::optional<Rational>>;

inline SetFunction r_function(const ObservableFunction& g, const StoneSpectrum& s) {
  if (static_cast<int>(g.size()) != s.size()) throw InputError("function is not total on the quasipoints");
  const Lattice& l = s.lattice();
  SetFunction r(l.size());
  for (int u = 0; u < l.size(); ++u) {
    if (u == l.bottom()) continue;
    for_each_bit(s.basic_open(u), [&](int b) {
      if (!r[u] || *r[u] < g[b]) r[u] = g[b];
    });
  }
  return r;
}

/// Largest lattice handled by the literal scans over all families.
inline constexpr int kMaxScanElements = 24;

/// r(join of a family) = max of r over the family, for every nonempty
/// family of nonzero elements. Scans all families.
inline bool completely_increasing_check(const SetFunction& r, const Lattice& l) {
  std::vector<ElementId> elements;
  for (int u = 0; u < l.size(); ++u) {
    if (u != l.bottom()) elements.push_back(u);
  }
  const int k = static_cast<int>(elements.size());
  if (k > kMaxScanElements) throw InputError("lattice too large for the family scan");
  std::vector<ElementId> join(std::size_t{1} << k, l.bottom());
  std::vector<Rational> best(std::size_t{1} << k);
  for (std::size_t fam = 1; fam < join.size(); ++fam) {
    const int low = lowest(fam);
    const std::size_t rest = fam & (fam - 1);
    const ElementId u = elements[low];
    if (rest == 0) {
      join[fam] = u;
      best[fam] = *r[u];
    } else {
      join[fam] = l.join(join[rest], u);
      best[fam] = std::max(best[rest], *r[u]);
    }
    if (*r[join[fam]] != best[fam]) return false;
  }
  return true;
}

/// closure(union of Q_{a_k}) = Q_{join a_k}, scanning every family.
inline CompleteDistributivity completely_distributive_scan(const StoneSpectrum& s) {
  const Lattice& l = s.lattice();
  const int n = l.size();
  if (n > kMaxScanElements) throw InputError("lattice too large for the family scan");
  std::vector<ElementId> join(std::size_t{1} << n, l.bottom());
  std::vector<Mask> cover(std::size_t{1} << n, 0);
  for (std::size_t fam = 0; fam < join.size(); ++fam) {
    if (fam != 0) {
      const std::size_t rest = fam & (fam - 1);
      const int a = lowest(fam);
      join[fam] = l.join(join[rest], a);
      cover[fam] = cover[rest] | s.basic_open(a);
    }
    if (s.closure(cover[fam]) != s.basic_open(join[fam])) {
      CompleteDistributivity out{false, {}};
      for_each_bit(fam, [&](int a) { out.witness.push_back(a); });
      return out;
    }
  }
  return {};
}

struct StarCondition {
  bool holds = true;
  std::optional<int> point;
  std::optional<int> quasipoint;
};

/// For every x and every quasipoint B of T_r(M) over x:
/// min over regular open neighbourhoods of x of r equals min over B of r.
inline StarCondition star_condition_check(const ObservableFunction& g, const FiniteTopSpace& t,
                                          const StoneSpectrum& s) {
  const auto& tr = t.regular_open_lattice();
  if (!s.lattice().same_as(tr.lattice())) throw InputError("the spectrum is not Q(T_r(M))");
  const auto r = r_function(g, s);
  auto min_over = [&](Mask members) {
    std::optional<Rational> out;
    for_each_bit(members, [&](int u) {
      if (r[u] && (!out || *r[u] < *out)) out = r[u];
    });
    return out;
  };
  for (int x = 0; x < t.size(); ++x) {
    Mask neighbourhoods = 0;
    for (int u = 0; u < tr.lattice().size(); ++u) {
      if (has(tr.set_of(u), x)) neighbourhoods |= bit(u);
    }
    const auto lhs = min_over(neighbourhoods);
    for (int b = 0; b < s.size(); ++b) {
      if (!is_over(s, tr, t, b, x)) continue;
      if (min_over(s.point(b)) != lhs) return {false, x, b};
    }
  }
  return {};
}

/// s(x) = sum over the grid evaluated at a quasipoint over x in Q(T(M)).
inline PointFunction spectral_representation(const PointFunction& phi, const FiniteTopSpace& t,
                                             std::span<const Rational> grid, Tag tag = Tag::right) {
  const auto e = spectral_family_of_function(phi, t);
  const PtStructure p = pt_structure(t);
  const auto s = riemann_stieltjes(e, p.spectrum, grid, tag);
  PointFunction out(t.size());
  for (int x = 0; x < t.size(); ++x) {
    if (p.fibres[x] == 0) throw UnsupportedStructure("no quasipoint over point " + t.points()[x]);
    out[x] = s[lowest(p.fibres[x])];
  }
  return out;
}

}  // namespace stonespec
