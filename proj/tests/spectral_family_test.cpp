#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "stonespec/spectral_family.hpp"

using namespace stonespec;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return {n, d}; }

std::vector<Rational> grid3() { return {q(0), q(1, 2), q(1)}; }

// Monotone sequences of length g ending in top, counted by brute force.
long count_monotone(const Lattice& l, int g) {
  long total = 0;
  std::vector<int> seq(g, 0);
  const long n = l.size();
  long combos = 1;
  for (int i = 0; i < g; ++i) combos *= n;
  for (long c = 0; c < combos; ++c) {
    long r = c;
    for (int i = 0; i < g; ++i) {
      seq[i] = static_cast<int>(r % n);
      r /= n;
    }
    bool ok = seq.back() == l.top();
    for (int i = 1; i < g && ok; ++i) ok = oracle::leq(l, seq[i - 1], seq[i]);
    total += ok;
  }
  return total;
}

}  // namespace

TEST(StepSpectralFamily, RejectsMalformedInput) {
  const auto l = fixtures::mo(2);
  const ElementId a = l.at("a");
  EXPECT_THROW(StepSpectralFamily(l, {}, {}), InvalidFamily);
  EXPECT_THROW(StepSpectralFamily(l, {q(0)}, {a, l.top()}), InvalidFamily);
  EXPECT_THROW(StepSpectralFamily(l, {q(1), q(0)}, {a, l.top()}), InvalidFamily);
  EXPECT_THROW(StepSpectralFamily(l, {q(0), q(0)}, {a, l.top()}), InvalidFamily);
  EXPECT_THROW(StepSpectralFamily(l, {q(0), q(1)}, {a, l.at("b")}), InvalidFamily);
  EXPECT_THROW(StepSpectralFamily(l, {q(0), q(1), q(2)}, {a, l.at("b"), l.top()}), InvalidFamily);
}

TEST(StepSpectralFamily, CanonicalFormDropsRepeatsAndBottom) {
  const auto l = fixtures::mo(2);
  const ElementId a = l.at("a");
  const StepSpectralFamily e(l, {q(-1), q(0), q(1), q(2)}, {l.bottom(), a, a, l.top()});
  EXPECT_EQ(e.thresholds(), (std::vector<Rational>{q(0), q(2)}));
  EXPECT_EQ(e, StepSpectralFamily(l, {q(0), q(2)}, {a, l.top()}));
  EXPECT_EQ(to_string(e), "{0 : a, 2 : 1}");
  EXPECT_EQ(e.eval(q(-1, 2)), l.bottom());
  EXPECT_EQ(e.eval(q(0)), a);
  EXPECT_EQ(e.eval(q(3, 2)), a);
  EXPECT_EQ(e.eval(q(2)), l.top());
  EXPECT_EQ(e.lower_bound(), q(0));
  EXPECT_EQ(e.upper_bound(), q(2));
}

TEST(StepSpectralFamily, EnumerationCountsMonotoneSequences) {
  for (const auto& l : {fixtures::boolean(1), fixtures::boolean(2), fixtures::mo(2), fixtures::chain(4)}) {
    const auto fams = enumerate_step_families(l, grid3());
    EXPECT_EQ(static_cast<long>(fams.size()), count_monotone(l, 3));
    std::set<std::string> distinct;
    for (const auto& e : fams) distinct.insert(to_string(e));
    EXPECT_EQ(distinct.size(), fams.size());
  }
}

TEST(ObservableFunction, InfimumCharacterization) {
  for (const auto& l : {fixtures::boolean(3), fixtures::mo(2), fixtures::chain(4), fixtures::pentagon()}) {
    const auto s = enumerate_quasipoints(l);
    for (const auto& e : enumerate_step_families(l, grid3())) {
      const auto f = observable_function(e, s);
      for (int p = 0; p < s.size(); ++p) {
        for (std::int64_t k = -2; k <= 6; ++k) {
          const Rational lambda = q(k, 4);
          EXPECT_EQ(has(s.point(p), e.eval(lambda)), lambda >= f[p]) << to_string(e);
        }
      }
    }
  }
}

TEST(ObservableFunction, MO2Example) {
  const auto l = fixtures::mo(2);
  const auto s = enumerate_quasipoints(l);
  const StepSpectralFamily e(l, {q(0), q(1)}, {l.at("a"), l.top()});
  const auto f = observable_function(e, s);
  for (int p = 0; p < s.size(); ++p) EXPECT_EQ(f[p], s.generator(p) == l.at("a") ? q(0) : q(1));
}

TEST(ObservableFunction, BooleanRoundTrip) {
  for (int n = 1; n <= 3; ++n) {
    const auto l = fixtures::boolean(n);
    const auto s = enumerate_quasipoints(l);
    for (const auto& e : enumerate_step_families(l, grid3())) {
      EXPECT_EQ(from_observable_function(observable_function(e, s), s), e);
    }
  }
  const auto l = fixtures::boolean(2);
  const auto s = enumerate_quasipoints(l);
  const ObservableFunction g{q(3), q(-1, 2)};
  EXPECT_EQ(observable_function(from_observable_function(g, s), s), g);
  EXPECT_THROW(from_observable_function(g, enumerate_quasipoints(fixtures::mo(2))), UnsupportedStructure);
}

TEST(ObservableFunction, ChainTransformIsNotInjective) {
  const auto l = fixtures::chain(3);
  const auto s = enumerate_quasipoints(l);
  const StepSpectralFamily e1(l, {q(0), q(1)}, {l.at("m"), l.top()});
  const StepSpectralFamily e2(l, {q(0)}, {l.top()});
  EXPECT_NE(e1, e2);
  EXPECT_EQ(observable_function(e1, s), observable_function(e2, s));
}

TEST(Algebra, OperationsArePointwise) {
  const auto l = fixtures::boolean(3);
  const auto s = enumerate_quasipoints(l);
  const auto fams = enumerate_step_families(l, {q(-1), q(2)});
  for (const auto& e : fams) {
    for (const auto& f : fams) {
      const auto fe = observable_function(e, s);
      const auto ff = observable_function(f, s);
      const auto sum = observable_function(algebra::add(e, f, s), s);
      const auto prod = observable_function(algebra::mul(e, f, s), s);
      for (int p = 0; p < s.size(); ++p) {
        EXPECT_EQ(sum[p], fe[p] + ff[p]);
        EXPECT_EQ(prod[p], fe[p] * ff[p]);
      }
    }
    EXPECT_EQ(algebra::star(e, s), e);
    const auto scaled = observable_function(algebra::scale(q(-3), e, s), s);
    Rational norm = 0;
    for (int p = 0; p < s.size(); ++p) {
      EXPECT_EQ(scaled[p], q(-3) * observable_function(e, s)[p]);
      norm = std::max(norm, abs(observable_function(e, s)[p]));
    }
    EXPECT_EQ(algebra::norm(e, s), norm);
  }
}

TEST(Algebra, ComplexFamilies) {
  const auto l = fixtures::boolean(2);
  const auto s = enumerate_quasipoints(l);
  const ComplexObservableFunction g{{q(1), q(2)}, {q(-1), q(0)}};
  const auto e = algebra::pull_back(g, s);
  EXPECT_EQ(algebra::observable_function(e, s), g);
  const auto conj = algebra::observable_function(algebra::star(e, s), s);
  EXPECT_EQ(conj[0], Complex(q(1), q(-2)));
  const auto sq = algebra::observable_function(algebra::mul(e, e, s), s);
  EXPECT_EQ(sq[0], Complex(q(-3), q(4)));
  EXPECT_EQ(algebra::norm_squared(e, s), q(5));
}

TEST(Spectrum, JumpsAndResolvent) {
  const auto l = fixtures::boolean(2);
  const auto s = enumerate_quasipoints(l);
  const StepSpectralFamily e(l, {q(0), q(1)}, {l.at("{x}"), l.top()});
  const auto d = spectrum(e);
  EXPECT_EQ(d.spectrum, (std::vector<Rational>{q(0), q(1)}));
  ASSERT_EQ(d.resolvent.size(), 3U);
  EXPECT_TRUE(d.resolvent[1].contains(q(1, 2)));
  EXPECT_FALSE(d.resolvent[1].contains(q(1)));
  EXPECT_EQ(observable_image(e, s), d.spectrum);
  // Off the jump set the family is locally constant.
  for (const auto& iv : d.resolvent) {
    if (!iv.lo || !iv.hi) continue;
    EXPECT_EQ(e.eval(*iv.lo + (*iv.hi - *iv.lo) / 3), e.eval(*iv.hi - (*iv.hi - *iv.lo) / 3));
  }
}

TEST(Spectralize, OpenConventionBecomesRightContinuous) {
  const auto l = fixtures::boolean(2);
  const auto pre = PreSpectralFamily::open_convention(l, {q(0), q(1)}, {l.at("{x}"), l.top()});
  EXPECT_EQ(pre.at[0], l.bottom());
  EXPECT_EQ(pre.at[1], l.at("{x}"));
  const auto e = spectralize(pre);
  EXPECT_EQ(e, StepSpectralFamily(l, {q(0), q(1)}, {l.at("{x}"), l.top()}));
  EXPECT_EQ(spectralize(PreSpectralFamily::from(e)), e);
}

TEST(RiemannStieltjes, RightTagIsExactLeftTagLagsByEps) {
  const auto l = fixtures::boolean(3);
  const auto s = enumerate_quasipoints(l);
  for (const auto& e : enumerate_step_families(l, grid3())) {
    const auto f = observable_function(e, s);
    const auto grid = uniform_grid(e, q(1, 2));
    EXPECT_EQ(riemann_stieltjes(e, s, grid), f);
    const auto left = riemann_stieltjes(e, s, grid, Tag::left);
    for (int p = 0; p < s.size(); ++p) EXPECT_EQ(left[p], f[p] - q(1, 2));
    const auto coarse = riemann_stieltjes(e, s, uniform_grid(e, q(1, 3)));
    for (int p = 0; p < s.size(); ++p) {
      EXPECT_LE(abs(coarse[p] - f[p]), q(1, 3));
    }
  }
  const auto e = StepSpectralFamily::constant(l, q(2));
  const std::vector<Rational> short_grid{q(2), q(3)};
  EXPECT_THROW(riemann_stieltjes(e, s, short_grid), InputError);
  EXPECT_THROW(uniform_grid(e, q(0)), InputError);
}

TEST(TwoParameter, ProductDecomposeRoundTrip) {
  const auto l = fixtures::boolean(2);
  const auto s = enumerate_quasipoints(l);
  const auto fams = enumerate_step_families(l, {q(0), q(1)});
  for (const auto& e1 : fams) {
    for (const auto& e2 : fams) {
      const auto c = product_family(e1, e2);
      const auto [d1, d2] = decompose(c);
      EXPECT_EQ(d1, e1);
      EXPECT_EQ(d2, e2);
      const auto g = observable_function_complex(c, s);
      const auto f1 = observable_function(e1, s);
      const auto f2 = observable_function(e2, s);
      for (int p = 0; p < s.size(); ++p) EXPECT_EQ(g[p], Complex(f1[p], f2[p]));
    }
  }
}

TEST(TwoParameter, MeetLawAndCanonicalForm) {
  const auto l = fixtures::boolean(2);
  const ElementId x = l.at("{x}");
  const ElementId y = l.at("{y}");
  EXPECT_THROW(TwoParamStepSpectralFamily(l, {q(0), q(1)}, {q(0), q(1)}, {{x, x}, {y, l.top()}}), InvalidFamily);
  EXPECT_THROW(TwoParamStepSpectralFamily(l, {q(0)}, {q(0)}, {{x}}), InvalidFamily);
  const TwoParamStepSpectralFamily padded(l, {q(-1), q(0), q(1)}, {q(0), q(1)},
                                          {{l.bottom(), l.bottom()}, {l.bottom(), x}, {y, l.top()}});
  const TwoParamStepSpectralFamily tight(l, {q(0), q(1)}, {q(0), q(1)}, {{l.bottom(), x}, {y, l.top()}});
  EXPECT_EQ(padded, tight);
  EXPECT_EQ(tight.eval(q(1, 2), q(5)), x);
  EXPECT_EQ(tight.eval(q(-1), q(5)), l.bottom());
}

TEST(TwoParameter, MO2ProductOfAFamilyWithItself) {
  const auto l = fixtures::mo(2);
  const auto s = enumerate_quasipoints(l);
  const StepSpectralFamily e(l, {q(0), q(1)}, {l.at("a"), l.top()});
  const auto g = observable_function_complex(product_family(e, e), s);
  for (int p = 0; p < s.size(); ++p) {
    const Rational v = has(s.point(p), l.at("a")) ? q(0) : q(1);
    EXPECT_EQ(g[p], (Complex{v, v})) << s.point_name(p);
  }
}

TEST(Algebra, ProductOfComplementaryIndicators) {
  const auto l = fixtures::boolean(2);
  const auto s = enumerate_quasipoints(l);
  const StepSpectralFamily e(l, {q(0), q(1)}, {l.at("{x}"), l.top()});
  const StepSpectralFamily f(l, {q(0), q(1)}, {l.at("{y}"), l.top()});
  for (const auto& v : observable_function(algebra::mul(e, f, s), s)) EXPECT_EQ(v, q(0));
  EXPECT_EQ(stonespec::spectrum(StepSpectralFamily::constant(l, q(5))).spectrum, (std::vector<Rational>{q(5)}));
}
