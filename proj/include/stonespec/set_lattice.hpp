#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "stonespec/bits.hpp"
#include "stonespec/errors.hpp"
#include "stonespec/lattice.hpp"

namespace stonespec {

/// `{p,q}` using the given point names; `{}` for the empty set.
inline std::string set_name(Mask s, const std::vector<std::string>& points) {
  std::string out = "{";
  for_each_bit(s, [&](int i) {
    if (out.size() > 1) out += ",";
    out += points.at(i);
  });
  return out + "}";
}

/// A lattice whose elements are subsets of a finite ground set, ordered by
/// inclusion. Backs T(M), T_r(M), fields of sets and their quotients.
class SetLattice {
 public:
  SetLattice() = default;

  /// `sets` must contain a least and a greatest set and be a lattice under
  /// inclusion; `complement`, when given, becomes the orthocomplement.
  static SetLattice build(std::vector<std::string> points, std::vector<Mask> sets,
                          const std::function<Mask(Mask)>& complement = {}) {
    std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
      return count(a) != count(b) ? count(a) < count(b) : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    if (static_cast<int>(sets.size()) > kMaxElements) {
      throw InputError("set lattice has " + std::to_string(sets.size()) + " elements; the limit is 64");
    }
    const int n = static_cast<int>(sets.size());
    std::unordered_map<Mask, ElementId> index;
    for (int i = 0; i < n; ++i) index.emplace(sets[i], i);

    LatticeSpec spec;
    for (int i = 0; i < n; ++i) {
      spec.names.push_back(set_name(sets[i], points));
      Mask up = 0;
      for (int j = 0; j < n; ++j) {
        if (is_subset(sets[i], sets[j])) up |= bit(j);
      }
      spec.leq.push_back(up);
    }
    if (complement) {
      std::vector<ElementId> ortho(n);
      for (int i = 0; i < n; ++i) {
        auto it = index.find(complement(sets[i]));
        if (it == index.end()) throw InputError("complement leaves the family of sets");
        ortho[i] = it->second;
      }
      spec.ortho = std::move(ortho);
    }
    auto d = std::make_shared<const Data>(
        Data{std::move(points), std::move(sets), std::move(index), Lattice::build(spec)});
    SetLattice out;
    out.d_ = std::move(d);
    return out;
  }

  const Lattice& lattice() const { return d_->lattice; }
  int ground_size() const { return static_cast<int>(d_->points.size()); }
  Mask ground() const { return full_mask(ground_size()); }
  const std::vector<std::string>& points() const { return d_->points; }

  Mask set_of(ElementId a) const { return d_->sets.at(a); }
  const std::vector<Mask>& sets() const { return d_->sets; }

  std::optional<ElementId> find(Mask s) const {
    auto it = d_->index.find(s);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  ElementId element_of(Mask s) const {
    if (auto id = find(s)) return *id;
    throw InputError("set " + set_name(s, d_->points) + " is not an element of this lattice");
  }
  bool contains(Mask s) const { return find(s).has_value(); }

  std::string name(Mask s) const { return set_name(s, d_->points); }

 private:
  struct Data {
    std::vector<std::string> points;
    std::vector<Mask> sets;
    std::unordered_map<Mask, ElementId> index;
    Lattice lattice;
  };
  std::shared_ptr<const Data> d_;
};

inline std::vector<std::string> numbered_points(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace stonespec
