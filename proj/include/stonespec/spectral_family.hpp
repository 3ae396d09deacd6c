#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stonespec/bits.hpp"
#include "stonespec/errors.hpp"
#include "stonespec/lattice.hpp"
#include "stonespec/rational.hpp"
#include "stonespec/stone_spectrum.hpp"

namespace stonespec {

/// Bounded spectral family with finitely many jumps.
///
/// E_lambda is bottom below the first threshold, values[i] on
/// [thresholds[i], thresholds[i+1]) and top from the last threshold on.
/// Stored in canonical form: consecutive values are distinct and the first
/// value is not bottom, so equal families have equal representations.
class StepSpectralFamily {
 public:
  /// Throws InvalidFamily unless thresholds strictly increase, values are
  /// monotone and the last value is top.
  StepSpectralFamily(Lattice lattice, std::vector<Rational> thresholds, std::vector<ElementId> values)
      : lattice_(std::move(lattice)) {
    if (thresholds.empty()) throw InvalidFamily("a bounded spectral family needs at least one threshold");
    if (thresholds.size() != values.size()) throw InvalidFamily("thresholds and values differ in length");
    for (std::size_t i = 0; i < values.size(); ++i) {
      lattice_.checked(values[i]);
      if (i > 0 && !(thresholds[i - 1] < thresholds[i])) throw InvalidFamily("non-increasing thresholds");
      if (i > 0 && !lattice_.leq(values[i - 1], values[i])) {
        throw InvalidFamily("values are not monotone at threshold " + to_string(thresholds[i]));
      }
    }
    if (values.back() != lattice_.top()) throw InvalidFamily("the last value must be the top element");
    ElementId previous = lattice_.bottom();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == previous) continue;
      thresholds_.push_back(thresholds[i]);
      values_.push_back(values[i]);
      previous = values[i];
    }
  }

  /// The single jump from bottom to top at c.
  static StepSpectralFamily constant(const Lattice& l, Rational c) { return {l, {c}, {l.top()}}; }

  const Lattice& lattice() const { return lattice_; }
  const std::vector<Rational>& thresholds() const { return thresholds_; }
  const std::vector<ElementId>& values() const { return values_; }
  int jumps() const { return static_cast<int>(values_.size()); }
  Rational lower_bound() const { return thresholds_.front(); }
  Rational upper_bound() const { return thresholds_.back(); }

  ElementId eval(const Rational& lambda) const {
    auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), lambda);
    if (it == thresholds_.begin()) return lattice_.bottom();
    return values_[static_cast<std::size_t>(it - thresholds_.begin()) - 1];
  }

  friend bool operator==(const StepSpectralFamily& a, const StepSpectralFamily& b) {
    return a.lattice_.same_as(b.lattice_) && a.thresholds_ == b.thresholds_ && a.values_ == b.values_;
  }

 private:
  Lattice lattice_;
  std::vector<Rational> thresholds_;
  std::vector<ElementId> values_;
};

inline std::string to_string(const StepSpectralFamily& e) {
  std::string out = "{";
  for (int i = 0; i < e.jumps(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(e.thresholds()[i]) + " : " + e.lattice().name(e.values()[i]);
  }
  return out + "}";
}

/// Every family whose thresholds lie in `grid`, once each: the monotone
/// sequences w_1 <= ... <= w_g = top of values at the grid points.
inline std::vector<StepSpectralFamily> enumerate_step_families(const Lattice& l, std::vector<Rational> grid) {
  grid = distinct_sorted(std::move(grid));
  if (grid.empty()) throw InputError("empty threshold grid");
  std::vector<StepSpectralFamily> out;
  std::vector<ElementId> seq(grid.size());
  const int g = static_cast<int>(grid.size());
  // Fill from the right: each value lies below the one after it.
  std::function<void(int, ElementId)> fill = [&](int i, ElementId above) {
    if (i < 0) {
      out.emplace_back(l, grid, seq);
      return;
    }
    for_each_bit(l.down(above), [&](int v) {
      if (i == g - 1 && v != l.top()) return;
      seq[i] = v;
      fill(i - 1, v);
    });
  };
  fill(g - 1, l.top());
  return out;
}

/// f_E over the points of a Stone spectrum, indexed like `spectrum.points()`.
using ObservableFunction = std::vector<Rational>;
using ComplexObservableFunction = std::vector<Complex>;

inline void require_same_lattice(const Lattice& a, const Lattice& b) {
  if (!a.same_as(b)) throw InputError("the family and the spectrum live on different lattices");
}

/// f_E(B) = inf{lambda : E_lambda in B}, a minimum over the jumps.
inline ObservableFunction observable_function(const StepSpectralFamily& e, const StoneSpectrum& s) {
  require_same_lattice(e.lattice(), s.lattice());
  ObservableFunction f(s.size());
  for (int i = 0; i < s.size(); ++i) {
    int j = 0;
    while (!has(s.point(i), e.values()[j])) ++j;  // top is in every quasipoint
    f[i] = e.thresholds()[j];
  }
  return f;
}

/// The family E with f_E = g, for Boolean lattices:
/// E_lambda is the join of the atoms p with g(H_p) <= lambda.
inline StepSpectralFamily from_observable_function(const ObservableFunction& g, const StoneSpectrum& s) {
  const Lattice& l = s.lattice();
  if (!is_boolean(l)) throw UnsupportedStructure("the inverse transform is defined only on Boolean lattices");
  if (static_cast<int>(g.size()) != s.size()) throw InputError("function is not total on the quasipoints");
  if (s.size() == 0) throw InputError("the spectrum is empty");
  std::vector<Rational> thresholds = distinct_sorted(g);
  std::vector<ElementId> values;
  for (const Rational& lambda : thresholds) {
    ElementId v = l.bottom();
    for (int i = 0; i < s.size(); ++i) {
      if (g[i] <= lambda) v = l.join(v, s.generator(i));
    }
    values.push_back(v);
  }
  return {l, std::move(thresholds), std::move(values)};
}

/// Pointwise operations on f_E pulled back through the inverse transform.
namespace algebra {

inline StepSpectralFamily pull_back(const ObservableFunction& f, const StoneSpectrum& s) {
  return from_observable_function(f, s);
}

inline StepSpectralFamily add(const StepSpectralFamily& e, const StepSpectralFamily& f, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  auto ff = observable_function(f, s);
  for (std::size_t i = 0; i < fe.size(); ++i) fe[i] += ff[i];
  return pull_back(fe, s);
}

inline StepSpectralFamily mul(const StepSpectralFamily& e, const StepSpectralFamily& f, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  auto ff = observable_function(f, s);
  for (std::size_t i = 0; i < fe.size(); ++i) fe[i] *= ff[i];
  return pull_back(fe, s);
}

inline StepSpectralFamily scale(const Rational& alpha, const StepSpectralFamily& e, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  for (auto& v : fe) v *= alpha;
  return pull_back(fe, s);
}

/// Real families are self-adjoint.
inline StepSpectralFamily star(const StepSpectralFamily& e, const StoneSpectrum& s) {
  return pull_back(observable_function(e, s), s);
}

/// |E| = sup |f_E|.
inline Rational norm(const StepSpectralFamily& e, const StoneSpectrum& s) {
  Rational out = 0;
  for (const auto& v : observable_function(e, s)) out = std::max(out, abs(v));
  return out;
}

/// A bounded complex family in its decomposed form E_{l,m} = re_l and im_m.
struct ComplexFamily {
  StepSpectralFamily re;
  StepSpectralFamily im;
  friend bool operator==(const ComplexFamily&, const ComplexFamily&) = default;
};

inline ComplexObservableFunction observable_function(const ComplexFamily& e, const StoneSpectrum& s) {
  auto re = stonespec::observable_function(e.re, s);
  auto im = stonespec::observable_function(e.im, s);
  ComplexObservableFunction out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

inline ComplexFamily pull_back(const ComplexObservableFunction& f, const StoneSpectrum& s) {
  ObservableFunction re(f.size());
  ObservableFunction im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].re;
    im[i] = f[i].im;
  }
  return {pull_back(re, s), pull_back(im, s)};
}

inline ComplexFamily add(const ComplexFamily& e, const ComplexFamily& f, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  auto ff = observable_function(f, s);
  for (std::size_t i = 0; i < fe.size(); ++i) fe[i] = fe[i] + ff[i];
  return pull_back(fe, s);
}

inline ComplexFamily mul(const ComplexFamily& e, const ComplexFamily& f, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  auto ff = observable_function(f, s);
  for (std::size_t i = 0; i < fe.size(); ++i) fe[i] = fe[i] * ff[i];
  return pull_back(fe, s);
}

inline ComplexFamily scale(const Complex& alpha, const ComplexFamily& e, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  for (auto& v : fe) v = alpha * v;
  return pull_back(fe, s);
}

inline ComplexFamily star(const ComplexFamily& e, const StoneSpectrum& s) {
  auto fe = observable_function(e, s);
  for (auto& v : fe) v = v.conj();
  return pull_back(fe, s);
}

/// |E|^2; the norm itself is irrational in general.
inline Rational norm_squared(const ComplexFamily& e, const StoneSpectrum& s) {
  Rational out = 0;
  for (const auto& v : observable_function(e, s)) out = std::max(out, v.norm_squared());
  return out;
}

}  // namespace algebra

/// Open interval; a missing endpoint is infinite.
struct OpenInterval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
  bool contains(const Rational& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }
};

struct SpectrumDecomposition {
  std::vector<Rational> spectrum;
  std::vector<OpenInterval> resolvent;
};

/// sp(E) is the jump set; the resolvent is its complement.
inline SpectrumDecomposition spectrum(const StepSpectralFamily& e) {
  SpectrumDecomposition out;
  out.spectrum = e.thresholds();
  std::optional<Rational> lo;
  for (const auto& t : e.thresholds()) {
    out.resolvent.push_back({lo, t});
    lo = t;
  }
  out.resolvent.push_back({lo, std::nullopt});
  return out;
}

/// Image of f_E on the Stone spectrum, sorted.
inline std::vector<Rational> observable_image(const StepSpectralFamily& e, const StoneSpectrum& s) {
  return distinct_sorted(observable_function(e, s));
}

/// A monotone step assignment that need not be right-continuous.
///
/// `at[i]` is the value exactly at thresholds[i] and `after[i]` the value on
/// the open gap up to the next threshold.
struct PreSpectralFamily {
  Lattice lattice;
  std::vector<Rational> thresholds;
  std::vector<ElementId> at;
  std::vector<ElementId> after;

  /// lambda -> values[i] on (thresholds[i], thresholds[i+1]], the left-open
  /// convention of lambda -> f^{-1}((-inf, lambda)).
  static PreSpectralFamily open_convention(Lattice l, std::vector<Rational> thresholds, std::vector<ElementId> values) {
    std::vector<ElementId> at;
    ElementId previous = l.bottom();
    for (ElementId v : values) {
      at.push_back(previous);
      previous = v;
    }
    return {std::move(l), std::move(thresholds), std::move(at), std::move(values)};
  }

  static PreSpectralFamily from(const StepSpectralFamily& e) {
    return {e.lattice(), e.thresholds(), e.values(), e.values()};
  }
};

/// Replaces each value by the meet of the values strictly to its right,
/// which on a step assignment is the value on the following gap.
inline StepSpectralFamily spectralize(const PreSpectralFamily& pre) {
  const Lattice& l = pre.lattice;
  if (pre.thresholds.empty() || pre.at.size() != pre.thresholds.size() || pre.after.size() != pre.thresholds.size()) {
    throw InputError("malformed pre-spectral family");
  }
  ElementId previous = l.bottom();
  for (std::size_t i = 0; i < pre.thresholds.size(); ++i) {
    if (i > 0 && !(pre.thresholds[i - 1] < pre.thresholds[i])) throw InputError("non-increasing thresholds");
    if (!l.leq(l.checked(previous), l.checked(pre.at[i])) || !l.leq(pre.at[i], l.checked(pre.after[i]))) {
      throw InputError("pre-spectral family is not monotone at " + to_string(pre.thresholds[i]));
    }
    previous = pre.after[i];
  }
  return {l, pre.thresholds, pre.after};
}

/// Tag point used on each grid cell of a Riemann-Stieltjes sum.
enum class Tag { left, right };

/// Grid from lower_bound - eps in steps of eps up to the first point at or
/// above upper_bound.
inline std::vector<Rational> uniform_grid(const StepSpectralFamily& e, const Rational& eps) {
  if (eps <= 0) throw InputError("eps must be positive");
  std::vector<Rational> grid;
  Rational g = e.lower_bound() - eps;
  while (g < e.upper_bound()) {
    grid.push_back(g);
    g += eps;
  }
  grid.push_back(g);
  return grid;
}

inline void check_grid(const StepSpectralFamily& e, std::span<const Rational> grid) {
  if (grid.size() < 2) throw InputError("grid needs at least two points");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k - 1] < grid[k])) throw InputError("grid is not strictly increasing");
  }
  if (!(grid.front() < e.lower_bound()) || grid.back() < e.upper_bound()) {
    throw InputError("grid does not cover the support [" + to_string(e.lower_bound()) + ", " +
                     to_string(e.upper_bound()) + "] of the family");
  }
}

/// s(p) = sum_k tag_k (chi_{E_{g_{k+1}}}(p) - chi_{E_{g_k}}(p)) for every
/// point p, where `contains(p, element)` is the membership test.
inline std::vector<Rational> stieltjes_sum(const StepSpectralFamily& e, std::span<const Rational> grid, int points,
                                           const std::function<bool(int, ElementId)>& contains, Tag tag) {
  check_grid(e, grid);
  std::vector<Rational> s(points);
  for (int p = 0; p < points; ++p) {
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
      const int upper = contains(p, e.eval(grid[k + 1])) ? 1 : 0;
      const int lower = contains(p, e.eval(grid[k])) ? 1 : 0;
      const Rational& t = tag == Tag::left ? grid[k] : grid[k + 1];
      s[p] += t * (upper - lower);
    }
  }
  return s;
}

/// The sum against chi^Q_{E_lambda} on the quasipoints of `s`.
inline ObservableFunction riemann_stieltjes(const StepSpectralFamily& e, const StoneSpectrum& s,
                                            std::span<const Rational> grid, Tag tag = Tag::right) {
  require_same_lattice(e.lattice(), s.lattice());
  return stieltjes_sum(
      e, grid, s.size(), [&](int p, ElementId a) { return has(s.point(p), a); }, tag);
}

/// Two-parameter (complex) step family on a grid.
///
/// E_{lambda,mu} is values[i][j] for lambda in [grid1[i], grid1[i+1]) and mu
/// in [grid2[j], grid2[j+1]); bottom when either parameter lies below its
/// grid. The last entry must be top.
class TwoParamStepSpectralFamily {
 public:
  TwoParamStepSpectralFamily(Lattice lattice, std::vector<Rational> grid1, std::vector<Rational> grid2,
                             std::vector<std::vector<ElementId>> values)
      : lattice_(std::move(lattice)), grid1_(std::move(grid1)), grid2_(std::move(grid2)), values_(std::move(values)) {
    if (grid1_.empty() || grid2_.empty()) throw InvalidFamily("empty threshold grid");
    for (std::size_t i = 1; i < grid1_.size(); ++i) {
      if (!(grid1_[i - 1] < grid1_[i])) throw InvalidFamily("non-increasing thresholds in the first parameter");
    }
    for (std::size_t j = 1; j < grid2_.size(); ++j) {
      if (!(grid2_[j - 1] < grid2_[j])) throw InvalidFamily("non-increasing thresholds in the second parameter");
    }
    if (values_.size() != grid1_.size()) throw InvalidFamily("value matrix has the wrong number of rows");
    for (const auto& row : values_) {
      if (row.size() != grid2_.size()) throw InvalidFamily("value matrix has the wrong number of columns");
      for (ElementId v : row) lattice_.checked(v);
    }
    if (values_.back().back() != lattice_.top()) throw InvalidFamily("the family must reach top");
    const int k1 = static_cast<int>(grid1_.size());
    const int k2 = static_cast<int>(grid2_.size());
    for (int i = 0; i < k1; ++i) {
      for (int j = 0; j < k2; ++j) {
        for (int i2 = 0; i2 < k1; ++i2) {
          for (int j2 = 0; j2 < k2; ++j2) {
            if (lattice_.meet(values_[i][j], values_[i2][j2]) != values_[std::min(i, i2)][std::min(j, j2)]) {
              throw InvalidFamily("meet law fails at grid cells (" + to_string(grid1_[i]) + ", " +
                                  to_string(grid2_[j]) + ") and (" + to_string(grid1_[i2]) + ", " +
                                  to_string(grid2_[j2]) + ")");
            }
          }
        }
      }
    }
    canonicalize();
  }

  const Lattice& lattice() const { return lattice_; }
  const std::vector<Rational>& grid1() const { return grid1_; }
  const std::vector<Rational>& grid2() const { return grid2_; }
  const std::vector<std::vector<ElementId>>& values() const { return values_; }

  ElementId eval(const Rational& lambda, const Rational& mu) const {
    auto i = std::upper_bound(grid1_.begin(), grid1_.end(), lambda) - grid1_.begin();
    auto j = std::upper_bound(grid2_.begin(), grid2_.end(), mu) - grid2_.begin();
    if (i == 0 || j == 0) return lattice_.bottom();
    return values_[i - 1][j - 1];
  }

  friend bool operator==(const TwoParamStepSpectralFamily& a, const TwoParamStepSpectralFamily& b) {
    return a.lattice_.same_as(b.lattice_) && a.grid1_ == b.grid1_ && a.grid2_ == b.grid2_ && a.values_ == b.values_;
  }

 private:
  // Drops grid lines whose row (column) repeats the previous one; the line
  // before the first is all bottom.
  void canonicalize() {
    const std::vector<ElementId> bottom_row(grid2_.size(), lattice_.bottom());
    std::vector<Rational> g1;
    std::vector<std::vector<ElementId>> rows;
    for (std::size_t i = 0; i < grid1_.size(); ++i) {
      const auto& previous = rows.empty() ? bottom_row : rows.back();
      if (values_[i] == previous) continue;
      g1.push_back(grid1_[i]);
      rows.push_back(values_[i]);
    }
    std::vector<Rational> g2;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < grid2_.size(); ++j) {
      bool same = true;
      for (const auto& row : rows) {
        const ElementId previous = keep.empty() ? lattice_.bottom() : row[keep.back()];
        if (row[j] != previous) same = false;
      }
      if (same) continue;
      keep.push_back(j);
      g2.push_back(grid2_[j]);
    }
    for (auto& row : rows) {
      std::vector<ElementId> r;
      for (auto j : keep) r.push_back(row[j]);
      row = std::move(r);
    }
    grid1_ = std::move(g1);
    grid2_ = std::move(g2);
    values_ = std::move(rows);
  }

  Lattice lattice_;
  std::vector<Rational> grid1_;
  std::vector<Rational> grid2_;
  std::vector<std::vector<ElementId>> values_;
};

/// E_{lambda,mu} := E1_lambda and E2_mu.
inline TwoParamStepSpectralFamily product_family(const StepSpectralFamily& e1, const StepSpectralFamily& e2) {
  if (!e1.lattice().same_as(e2.lattice())) throw InputError("families live on different lattices");
  const Lattice& l = e1.lattice();
  std::vector<std::vector<ElementId>> values;
  for (const auto& lambda : e1.thresholds()) {
    std::vector<ElementId> row;
    for (const auto& mu : e2.thresholds()) row.push_back(l.meet(e1.eval(lambda), e2.eval(mu)));
    values.push_back(std::move(row));
  }
  return {l, e1.thresholds(), e2.thresholds(), std::move(values)};
}

/// E1_lambda := E_{lambda,b}, E2_mu := E_{b,mu} for an upper bound b.
inline std::pair<StepSpectralFamily, StepSpectralFamily> decompose(const TwoParamStepSpectralFamily& e) {
  const Lattice& l = e.lattice();
  const Rational b = std::max(e.grid1().back(), e.grid2().back());
  std::vector<ElementId> v1;
  for (const auto& lambda : e.grid1()) v1.push_back(e.eval(lambda, b));
  std::vector<ElementId> v2;
  for (const auto& mu : e.grid2()) v2.push_back(e.eval(b, mu));
  StepSpectralFamily e1(l, e.grid1(), std::move(v1));
  StepSpectralFamily e2(l, e.grid2(), std::move(v2));
  for (const auto& lambda : e.grid1()) {
    for (const auto& mu : e.grid2()) {
      if (e.eval(lambda, mu) != l.meet(e1.eval(lambda), e2.eval(mu))) {
        throw InvalidFamily("family does not decompose; the meet law is violated");
      }
    }
  }
  return {std::move(e1), std::move(e2)};
}

/// f_{E,1}(B) = inf{lambda : some E_{lambda,mu} in B}, f_{E,2} symmetrically.
inline ComplexObservableFunction observable_function_complex(const TwoParamStepSpectralFamily& e,
                                                             const StoneSpectrum& s) {
  require_same_lattice(e.lattice(), s.lattice());
  ComplexObservableFunction out(s.size());
  const auto& v = e.values();
  for (int p = 0; p < s.size(); ++p) {
    std::optional<Rational> re;
    std::optional<Rational> im;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v[i].size(); ++j) {
        if (!has(s.point(p), v[i][j])) continue;
        if (!re || e.grid1()[i] < *re) re = e.grid1()[i];
        if (!im || e.grid2()[j] < *im) im = e.grid2()[j];
      }
    }
    out[p] = {*re, *im};
  }
  return out;
}

}  // namespace stonespec
