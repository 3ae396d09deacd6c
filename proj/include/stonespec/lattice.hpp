#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stonespec/bits.hpp"
#include "stonespec/errors.hpp"

namespace stonespec {

using ElementId = int;

/// Unvalidated description of a finite bounded (ortho)lattice.
///
/// `leq[a]` is the set of all b with a <= b, exactly as given: validation
/// checks reflexivity and transitivity instead of repairing them.
struct LatticeSpec {
  std::vector<std::string> names;
  std::vector<Mask> leq;
  std::optional<std::vector<ElementId>> ortho;
  bool declared_orthomodular = false;
  bool declared_distributive = false;

  int size() const { return static_cast<int>(names.size()); }

  /// Reflexive-transitive closure of a generating relation.
  static std::vector<Mask> order_closure(int n, std::span<const std::pair<ElementId, ElementId>> less) {
    std::vector<Mask> up(n);
    for (int a = 0; a < n; ++a) up[a] = bit(a);
    for (auto [a, b] : less) up[a] |= bit(b);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < n; ++a) {
        Mask next = up[a];
        for_each_bit(up[a], [&](int b) { next |= up[b]; });
        if (next != up[a]) {
          up[a] = next;
          changed = true;
        }
      }
    }
    return up;
  }
};

enum class ViolationKind {
  empty,
  too_large,
  malformed,
  reflexivity,
  antisymmetry,
  transitivity,
  no_bottom,
  no_top,
  no_meet,
  no_join,
  ortho_not_involution,
  ortho_not_antitone,
  ortho_not_complement,
  not_orthomodular,
  not_distributive,
};

inline std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::empty: return "empty";
    case ViolationKind::too_large: return "too-large";
    case ViolationKind::malformed: return "malformed";
    case ViolationKind::reflexivity: return "reflexivity";
    case ViolationKind::antisymmetry: return "antisymmetry";
    case ViolationKind::transitivity: return "transitivity";
    case ViolationKind::no_bottom: return "no-bottom";
    case ViolationKind::no_top: return "no-top";
    case ViolationKind::no_meet: return "no-meet";
    case ViolationKind::no_join: return "no-join";
    case ViolationKind::ortho_not_involution: return "ortho-not-involution";
    case ViolationKind::ortho_not_antitone: return "ortho-not-antitone";
    case ViolationKind::ortho_not_complement: return "ortho-not-complement";
    case ViolationKind::not_orthomodular: return "not-orthomodular";
    case ViolationKind::not_distributive: return "not-distributive";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<ElementId> witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Computed properties; meaningful only when the lattice laws hold.
  bool orthomodular = false;
  bool distributive = false;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
  }
};

namespace detail {

struct LatticeData {
  std::vector<std::string> names;
  std::unordered_map<std::string, ElementId> index;
  std::vector<Mask> up;
  std::vector<Mask> down;
  std::vector<ElementId> meet;
  std::vector<ElementId> join;
  std::optional<std::vector<ElementId>> ortho;
  ElementId bottom = 0;
  ElementId top = 0;
  bool orthomodular = false;
  bool distributive = false;
};

// Greatest element of `candidates` w.r.t. the down-sets, if any.
inline std::optional<ElementId> greatest(Mask candidates, const std::vector<Mask>& down) {
  std::optional<ElementId> out;
  for_each_bit(candidates, [&](int c) {
    if (!out && is_subset(candidates, down[c])) out = c;
  });
  return out;
}

inline std::optional<ElementId> least(Mask candidates, const std::vector<Mask>& up) {
  return greatest(candidates, up);
}

inline std::string element_list(const LatticeSpec& s, std::initializer_list<ElementId> ids) {
  std::string out;
  for (ElementId id : ids) {
    if (!out.empty()) out += ", ";
    out += s.names[id];
  }
  return out;
}

}  // namespace detail

/// Lists every violated invariant with a witness; never throws.
inline ValidationReport validate(const LatticeSpec& spec, int max_elements = kMaxElements) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::string msg, std::vector<ElementId> w = {}) {
    report.violations.push_back({k, std::move(msg), std::move(w)});
  };
  const int n = spec.size();
  if (n == 0) {
    add(ViolationKind::empty, "lattice has no elements");
    return report;
  }
  const int cap = std::min(max_elements, kMaxElements);
  if (n > cap) {
    add(ViolationKind::too_large, std::to_string(n) + " elements exceed the limit of " + std::to_string(cap));
    return report;
  }
  if (static_cast<int>(spec.leq.size()) != n) {
    add(ViolationKind::malformed, "order relation has the wrong number of rows");
    return report;
  }
  const Mask all = full_mask(n);
  for (int a = 0; a < n; ++a) {
    if ((spec.leq[a] & ~all) != 0) {
      add(ViolationKind::malformed, "order relation refers to unknown elements", {a});
      return report;
    }
  }
  using detail::element_list;
  for (int a = 0; a < n; ++a) {
    if (!has(spec.leq[a], a)) add(ViolationKind::reflexivity, "not reflexive at " + spec.names[a], {a});
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (has(spec.leq[a], b) && has(spec.leq[b], a)) {
        add(ViolationKind::antisymmetry, "both " + spec.names[a] + " <= " + spec.names[b] + " and back", {a, b});
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for_each_bit(spec.leq[a], [&](int b) {
      Mask missing = spec.leq[b] & ~spec.leq[a];
      if (missing != 0) {
        int c = lowest(missing);
        add(ViolationKind::transitivity, "not transitive: " + element_list(spec, {a, b, c}), {a, b, c});
      }
    });
  }
  if (!report.ok()) return report;

  std::vector<Mask> down(n, 0);
  for (int a = 0; a < n; ++a) for_each_bit(spec.leq[a], [&](int b) { down[b] |= bit(a); });
  std::optional<ElementId> bottom;
  std::optional<ElementId> top;
  for (int a = 0; a < n; ++a) {
    if (spec.leq[a] == all) bottom = a;
    if (down[a] == all) top = a;
  }
  if (!bottom) add(ViolationKind::no_bottom, "no least element");
  if (!top) add(ViolationKind::no_top, "no greatest element");

  std::vector<ElementId> meet(static_cast<std::size_t>(n) * n, -1);
  std::vector<ElementId> join(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      auto m = detail::greatest(down[a] & down[b], down);
      auto j = detail::least(spec.leq[a] & spec.leq[b], spec.leq);
      if (!m) add(ViolationKind::no_meet, "no greatest lower bound for " + element_list(spec, {a, b}), {a, b});
      if (!j) add(ViolationKind::no_join, "no least upper bound for " + element_list(spec, {a, b}), {a, b});
      meet[a * n + b] = meet[b * n + a] = m.value_or(-1);
      join[a * n + b] = join[b * n + a] = j.value_or(-1);
    }
  }
  if (!report.ok()) return report;

  auto M = [&](int a, int b) { return meet[a * n + b]; };
  auto J = [&](int a, int b) { return join[a * n + b]; };

  if (spec.ortho) {
    const auto& o = *spec.ortho;
    if (static_cast<int>(o.size()) != n ||
        std::any_of(o.begin(), o.end(), [n](ElementId x) { return x < 0 || x >= n; })) {
      add(ViolationKind::malformed, "orthocomplement is not a total map on the elements");
      return report;
    }
    for (int a = 0; a < n; ++a) {
      if (o[o[a]] != a) add(ViolationKind::ortho_not_involution, "ortho(ortho(" + spec.names[a] + ")) != " + spec.names[a], {a});
      if (M(a, o[a]) != *bottom || J(a, o[a]) != *top) {
        add(ViolationKind::ortho_not_complement, spec.names[a] + " and its ortho are not complements", {a});
      }
      for_each_bit(spec.leq[a], [&](int b) {
        if (!has(spec.leq[o[b]], o[a])) {
          add(ViolationKind::ortho_not_antitone, "ortho is not antitone on " + element_list(spec, {a, b}), {a, b});
        }
      });
    }
    if (report.ok()) {
      report.orthomodular = true;
      std::vector<ElementId> witness;
      for (int a = 0; a < n && report.orthomodular; ++a) {
        for_each_bit(spec.leq[a], [&](int b) {
          if (report.orthomodular && J(a, M(b, o[a])) != b) {
            report.orthomodular = false;
            witness = {a, b};
          }
        });
      }
      if (spec.declared_orthomodular && !report.orthomodular) {
        add(ViolationKind::not_orthomodular,
            "orthomodular law fails for " + element_list(spec, {witness[0], witness[1]}), witness);
      }
    }
  } else if (spec.declared_orthomodular) {
    add(ViolationKind::not_orthomodular, "declared orthomodular but no orthocomplement given");
  }

  report.distributive = true;
  std::vector<ElementId> witness;
  for (int a = 0; a < n && report.distributive; ++a) {
    for (int b = 0; b < n && report.distributive; ++b) {
      for (int c = 0; c < n; ++c) {
        if (M(a, J(b, c)) != J(M(a, b), M(a, c))) {
          report.distributive = false;
          witness = {a, b, c};
          break;
        }
      }
    }
  }
  if (spec.declared_distributive && !report.distributive) {
    add(ViolationKind::not_distributive,
        "distributive law fails for " + element_list(spec, {witness[0], witness[1], witness[2]}), witness);
  }
  return report;
}

/// Validated finite bounded lattice with precomputed meet/join tables.
///
/// Cheap to copy: all copies share one immutable table set.
class Lattice {
 public:
  /// Throws InputError carrying the first violations when `spec` is invalid.
  static Lattice build(const LatticeSpec& spec, int max_elements = kMaxElements) {
    ValidationReport report = validate(spec, max_elements);
    if (!report.ok()) {
      std::string msg = "invalid lattice:";
      for (const auto& v : report.violations) msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.message;
      throw InputError(msg);
    }
    const int n = spec.size();
    auto d = std::make_shared<detail::LatticeData>();
    d->names = spec.names;
    for (int a = 0; a < n; ++a) {
      if (!d->index.emplace(spec.names[a], a).second) throw InputError("duplicate element name '" + spec.names[a] + "'");
    }
    d->up = spec.leq;
    d->down.assign(n, 0);
    for (int a = 0; a < n; ++a) for_each_bit(spec.leq[a], [&](int b) { d->down[b] |= bit(a); });
    d->meet.resize(static_cast<std::size_t>(n) * n);
    d->join.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        d->meet[a * n + b] = *detail::greatest(d->down[a] & d->down[b], d->down);
        d->join[a * n + b] = *detail::least(d->up[a] & d->up[b], d->up);
      }
      if (d->up[a] == full_mask(n)) d->bottom = a;
      if (d->down[a] == full_mask(n)) d->top = a;
    }
    d->ortho = spec.ortho;
    d->orthomodular = report.orthomodular;
    d->distributive = report.distributive;
    return Lattice(std::move(d));
  }

  int size() const { return static_cast<int>(d_->names.size()); }
  Mask all() const { return full_mask(size()); }
  ElementId bottom() const { return d_->bottom; }
  ElementId top() const { return d_->top; }

  const std::string& name(ElementId a) const { return d_->names.at(a); }
  const std::vector<std::string>& names() const { return d_->names; }
  std::optional<ElementId> find(std::string_view name) const {
    auto it = d_->index.find(std::string(name));
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  ElementId at(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw InputError("unknown element '" + std::string(name) + "'");
  }

  bool leq(ElementId a, ElementId b) const { return has(d_->up[a], b); }
  /// {b : a <= b}
  Mask up(ElementId a) const { return d_->up[a]; }
  /// {b : b <= a}
  Mask down(ElementId a) const { return d_->down[a]; }

  ElementId meet(ElementId a, ElementId b) const { return d_->meet[a * size() + b]; }
  ElementId join(ElementId a, ElementId b) const { return d_->join[a * size() + b]; }

  /// Greatest lower bound of a set of elements; meet of the empty set is top.
  ElementId meet_of(Mask s) const {
    ElementId m = top();
    for_each_bit(s, [&](int a) { m = meet(m, a); });
    return m;
  }
  ElementId join_of(Mask s) const {
    ElementId j = bottom();
    for_each_bit(s, [&](int a) { j = join(j, a); });
    return j;
  }
  ElementId meet_of(std::span<const ElementId> s) const { return meet_of(checked_mask(s)); }
  ElementId join_of(std::span<const ElementId> s) const { return join_of(checked_mask(s)); }

  bool has_ortho() const { return d_->ortho.has_value(); }
  ElementId ortho(ElementId a) const {
    if (!d_->ortho) throw UnsupportedStructure("lattice has no orthocomplement");
    return (*d_->ortho)[a];
  }
  const std::optional<std::vector<ElementId>>& ortho_map() const { return d_->ortho; }

  bool is_orthomodular() const { return d_->orthomodular; }
  bool is_distributive() const { return d_->distributive; }

  /// Minimal non-bottom elements.
  Mask atoms() const {
    Mask out = 0;
    for (int a = 0; a < size(); ++a) {
      if (a != bottom() && down(a) == (bit(a) | bit(bottom()))) out |= bit(a);
    }
    return out;
  }

  /// Elements covering `a` (Hasse diagram successors).
  Mask covers(ElementId a) const {
    Mask strict = up(a) & ~bit(a);
    Mask out = 0;
    for_each_bit(strict, [&](int b) {
      if ((down(b) & strict & ~bit(b)) == 0) out |= bit(b);
    });
    return out;
  }

  /// Same shared tables (identity, not structural equality).
  bool same_as(const Lattice& other) const { return d_ == other.d_; }

  /// Spec form that rebuilds an identical lattice.
  LatticeSpec spec() const {
    LatticeSpec s;
    s.names = d_->names;
    s.leq = d_->up;
    s.ortho = d_->ortho;
    return s;
  }

  ElementId checked(ElementId a) const {
    if (a < 0 || a >= size()) throw InputError("unknown element id " + std::to_string(a));
    return a;
  }

 private:
  explicit Lattice(std::shared_ptr<const detail::LatticeData> d) : d_(std::move(d)) {}

  Mask checked_mask(std::span<const ElementId> s) const {
    Mask m = 0;
    for (ElementId a : s) m |= bit(checked(a));
    return m;
  }

  std::shared_ptr<const detail::LatticeData> d_;
};

inline bool is_distributive(const Lattice& l) { return l.is_distributive(); }

/// Distributive and complemented.
inline bool is_boolean(const Lattice& l) {
  if (!l.is_distributive()) return false;
  for (int a = 0; a < l.size(); ++a) {
    bool complemented = false;
    for (int b = 0; b < l.size() && !complemented; ++b) {
      complemented = l.meet(a, b) == l.bottom() && l.join(a, b) == l.top();
    }
    if (!complemented) return false;
  }
  return true;
}

/// Standard constructions used as fixtures throughout the suites.
namespace fixtures {

/// Power set of n atoms named x, y, z, w, v, u; elements are written `{x,y}`.
inline Lattice boolean(int n) {
  if (n < 1) throw InputError("boolean(n) needs n >= 1");
  if (n > 6) throw InputError("boolean(n) is capped at n = 6 (64 elements)");
  static constexpr const char* kAtoms[] = {"x", "y", "z", "w", "v", "u"};
  const int size = 1 << n;
  LatticeSpec s;
  s.ortho = std::vector<ElementId>(size);
  for (int m = 0; m < size; ++m) {
    std::string name = "{";
    for (int i = 0; i < n; ++i) {
      if (has(static_cast<Mask>(m), i)) {
        if (name.size() > 1) name += ",";
        name += kAtoms[i];
      }
    }
    s.names.push_back(name + "}");
    Mask up = 0;
    for (int o = 0; o < size; ++o) {
      if ((m & ~o) == 0) up |= bit(o);
    }
    s.leq.push_back(up);
    (*s.ortho)[m] = (size - 1) & ~m;
  }
  return Lattice::build(s);
}

/// 0 < m1 < ... < 1 with n elements in total (a single middle element is `m`).
inline Lattice chain(int n) {
  if (n < 1) throw InputError("chain(n) needs n >= 1");
  if (n > kMaxElements) throw InputError("chain(n) is capped at 64 elements");
  LatticeSpec s;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      s.names.push_back("0");
    } else if (i == n - 1) {
      s.names.push_back("1");
    } else {
      s.names.push_back(n == 3 ? "m" : "m" + std::to_string(i));
    }
    s.leq.push_back(full_mask(n) & ~(bit(i) - 1));
  }
  return Lattice::build(s);
}

/// 0, 1 and n orthocomplementary pairs of atoms a, a', b, b', ...
inline Lattice mo(int n) {
  if (n < 1) throw InputError("MO(n) needs n >= 1");
  if (n > 26) throw InputError("MO(n) is capped at n = 26");
  const int size = 2 * n + 2;
  const int top = size - 1;
  LatticeSpec s;
  s.ortho = std::vector<ElementId>(size);
  s.names.push_back("0");
  s.leq.push_back(full_mask(size));
  (*s.ortho)[0] = top;
  for (int i = 0; i < n; ++i) {
    std::string base(1, static_cast<char>('a' + i));
    s.names.push_back(base);
    s.names.push_back(base + "'");
    const int a = 1 + 2 * i;
    s.leq.push_back(bit(a) | bit(top));
    s.leq.push_back(bit(a + 1) | bit(top));
    (*s.ortho)[a] = a + 1;
    (*s.ortho)[a + 1] = a;
  }
  s.names.push_back("1");
  s.leq.push_back(bit(top));
  (*s.ortho)[top] = 0;
  s.declared_orthomodular = true;
  return Lattice::build(s);
}

/// Componentwise order; ortho when both factors carry one. Elements are `(a,b)`.
inline Lattice product(const Lattice& l1, const Lattice& l2) {
  const int n1 = l1.size();
  const int n2 = l2.size();
  if (n1 * n2 > kMaxElements) throw InputError("product exceeds 64 elements");
  LatticeSpec s;
  const bool ortho = l1.has_ortho() && l2.has_ortho();
  if (ortho) s.ortho = std::vector<ElementId>(n1 * n2);
  for (int a = 0; a < n1; ++a) {
    for (int b = 0; b < n2; ++b) {
      s.names.push_back("(" + l1.name(a) + "," + l2.name(b) + ")");
      Mask up = 0;
      for_each_bit(l1.up(a), [&](int c) { for_each_bit(l2.up(b), [&](int d) { up |= bit(c * n2 + d); }); });
      s.leq.push_back(up);
      if (ortho) (*s.ortho)[a * n2 + b] = l1.ortho(a) * n2 + l2.ortho(b);
    }
  }
  return Lattice::build(s);
}

/// The pentagon 0 < x < y < 1, 0 < z < 1 (not distributive, no ortho).
inline Lattice pentagon() {
  LatticeSpec s;
  s.names = {"0", "x", "y", "z", "1"};
  const std::pair<ElementId, ElementId> less[] = {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  s.leq = LatticeSpec::order_closure(5, less);
  return Lattice::build(s);
}

}  // namespace fixtures

}  // namespace stonespec
