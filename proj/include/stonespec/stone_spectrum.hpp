#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "stonespec/bits.hpp"
#include "stonespec/errors.hpp"
#include "stonespec/lattice.hpp"

namespace stonespec {

/// Nonempty, upward closed, meet closed, and free of bottom.
inline bool is_dual_ideal(const Lattice& l, Mask members) {
  if (members == 0 || has(members, l.bottom())) return false;
  bool ok = true;
  for_each_bit(members, [&](int a) {
    if (!is_subset(l.up(a), members)) ok = false;
    for_each_bit(members, [&](int b) {
      if (!has(members, l.meet(a, b))) ok = false;
    });
  });
  return ok;
}

/// A dual ideal with no proper dual-ideal extension.
///
/// In a finite lattice every dual ideal is principal, H_m with m the meet of
/// its members, and the dual ideal generated by it and b is H_{m and b}.
inline bool is_quasipoint(const Lattice& l, Mask members) {
  if (!is_dual_ideal(l, members)) return false;
  const ElementId m = l.meet_of(members);
  bool maximal = true;
  for_each_bit(l.all() & ~members, [&](int b) {
    if (l.meet(m, b) != l.bottom()) maximal = false;
  });
  return maximal;
}

/// H_a = {b : a <= b}.
inline Mask principal_dual_ideal(const Lattice& l, ElementId a) {
  l.checked(a);
  if (a == l.bottom()) throw InputError("a dual ideal may not contain the bottom element");
  return l.up(a);
}

/// The Stone spectrum Q(L): all quasipoints in canonical order, plus the
/// basic open sets Q_a = {B : a in B} as masks over point indices.
class StoneSpectrum {
 public:
  StoneSpectrum(Lattice lattice, std::vector<Mask> points) : lattice_(std::move(lattice)), points_(std::move(points)) {
    if (points_.size() > static_cast<std::size_t>(kMaxElements)) throw InputError("more than 64 quasipoints");
    base_.assign(lattice_.size(), 0);
    for (int i = 0; i < size(); ++i) {
      for_each_bit(points_[i], [&](int a) { base_[a] |= bit(i); });
    }
  }

  const Lattice& lattice() const { return lattice_; }
  int size() const { return static_cast<int>(points_.size()); }
  Mask all() const { return full_mask(size()); }
  const std::vector<Mask>& points() const { return points_; }
  Mask point(int i) const { return points_.at(i); }

  /// Q_a.
  Mask basic_open(ElementId a) const { return base_.at(a); }

  /// Generating element of quasipoint i (the meet of its members).
  ElementId generator(int i) const { return lattice_.meet_of(points_.at(i)); }

  std::optional<int> index_of(Mask members) const {
    auto it = std::find(points_.begin(), points_.end(), members);
    if (it == points_.end()) return std::nullopt;
    return static_cast<int>(it - points_.begin());
  }

  /// `Q{a,1}`: the members in element order.
  std::string point_name(int i) const {
    std::string out = "Q{";
    bool first = true;
    for_each_bit(points_.at(i), [&](int a) {
      if (!first) out += ",";
      first = false;
      out += lattice_.name(a);
    });
    return out + "}";
  }

  Mask interior(Mask x) const {
    Mask out = 0;
    for (Mask b : base_) {
      if (is_subset(b, x)) out |= b;
    }
    return out;
  }
  bool is_open(Mask x) const { return interior(x) == x; }
  Mask closure(Mask x) const { return all() & ~interior(all() & ~x); }

  /// Every union of basic open sets, sorted.
  std::vector<Mask> open_sets() const {
    std::vector<Mask> opens{0};
    for (Mask b : base_) {
      const std::size_t n = opens.size();
      for (std::size_t i = 0; i < n; ++i) opens.push_back(opens[i] | b);
      std::sort(opens.begin(), opens.end());
      opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    }
    return opens;
  }

 private:
  Lattice lattice_;
  std::vector<Mask> points_;
  std::vector<Mask> base_;
};

/// All maximal dual ideals, deduplicated and canonically ordered.
///
/// Each principal dual ideal is extended greedily along the element order;
/// the result is maximal because the generator only shrinks.
inline StoneSpectrum enumerate_quasipoints(const Lattice& l) {
  std::vector<Mask> found;
  for (int a = 0; a < l.size(); ++a) {
    if (a == l.bottom()) continue;
    ElementId m = a;
    for (int b = 0; b < l.size(); ++b) {
      if (!has(l.up(m), b) && l.meet(m, b) != l.bottom()) m = l.meet(m, b);
    }
    found.push_back(l.up(m));
  }
  std::sort(found.begin(), found.end(), lex_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return StoneSpectrum(l, std::move(found));
}

struct CompleteDistributivity {
  bool holds = true;
  /// First failing family, in element order.
  std::vector<ElementId> witness;
};

/// closure(U_k Q_{a_k}) = Q_{join a_k} for every family (a_k).
///
/// Closure distributes over finite unions, so the empty family, singletons
/// and pairs decide every family by induction on its size.
inline CompleteDistributivity is_completely_distributive(const StoneSpectrum& s) {
  const Lattice& l = s.lattice();
  if (s.closure(0) != s.basic_open(l.bottom())) return {false, {}};
  for (int a = 0; a < l.size(); ++a) {
    if (s.closure(s.basic_open(a)) != s.basic_open(a)) return {false, {a}};
  }
  for (int a = 0; a < l.size(); ++a) {
    for (int b = a + 1; b < l.size(); ++b) {
      if (s.closure(s.basic_open(a) | s.basic_open(b)) != s.basic_open(l.join(a, b))) return {false, {a, b}};
    }
  }
  return {};
}

inline CompleteDistributivity is_completely_distributive(const Lattice& l) {
  return is_completely_distributive(enumerate_quasipoints(l));
}

/// Intersection of all quasipoints that contain a (all of L when none does).
inline Mask quasipoint_intersection(const StoneSpectrum& s, ElementId a) {
  Mask out = s.lattice().all();
  for_each_bit(s.basic_open(a), [&](int i) { out &= s.point(i); });
  return out;
}

/// Whether the quasipoints containing a intersect to exactly H_a.
inline bool dual_ideal_intersection_law(const StoneSpectrum& s, ElementId a) {
  return quasipoint_intersection(s, a) == principal_dual_ideal(s.lattice(), a);
}

}  // namespace stonespec
