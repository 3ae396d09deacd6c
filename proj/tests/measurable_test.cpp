#include <gtest/gtest.h>

#include "stonespec/measurable.hpp"

using namespace stonespec;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return {n, d}; }

// Bell numbers from the triangle recurrence.
long bell(int n) {
  std::vector<long> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<long> next{row.back()};
    for (long v : row) next.push_back(next.back() + v);
    row = next;
  }
  return row.front();
}

FiniteFieldOfSets step_field() { return FiniteFieldOfSets::power_set({"-0.5", "0.5", "1.5"}); }

// floor(lambda) for rationals.
std::int64_t floor_of(const Rational& r) {
  std::int64_t f = r.numerator() / r.denominator();
  if (r.numerator() < 0 && f * r.denominator() != r.numerator()) --f;
  return f;
}

// lambda -> M cut with the open ray below floor(lambda).
Mask step_value(const Rational& lambda) {
  const std::vector<Rational> pts{q(-1, 2), q(1, 2), q(3, 2)};
  Mask s = 0;
  for (int x = 0; x < 3; ++x) {
    if (pts[x] < Rational(floor_of(lambda))) s |= bit(x);
  }
  return s;
}

QuotientAlgebra pot3_mod_1() {
  const auto f = FiniteFieldOfSets::power_set(3);
  return QuotientAlgebra(SetIdeal(f, {bit(0)}));
}

}  // namespace

TEST(FieldOfSets, EnumerationMatchesBellNumbers) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(static_cast<long>(all_fields(n).size()), bell(n)) << n;
}

TEST(FieldOfSets, ConstructionAndValidation) {
  const auto g = FiniteFieldOfSets::generated_by({"1", "2", "3"}, {bit(0)});
  EXPECT_EQ(g.atoms(), (std::vector<Mask>{bit(0), bit(1) | bit(2)}));
  EXPECT_EQ(g.sets().sets().size(), 4U);
  EXPECT_TRUE(is_boolean(g.lattice()));
  EXPECT_EQ(g.lattice().ortho(g.sets().element_of(bit(0))), g.sets().element_of(bit(1) | bit(2)));
  EXPECT_THROW(FiniteFieldOfSets::from_atoms({"1", "2"}, {bit(0)}), InputError);
  EXPECT_THROW(FiniteFieldOfSets::from_atoms({"1", "2"}, {bit(0) | bit(1), bit(1)}), InputError);
  EXPECT_THROW(FiniteFieldOfSets::power_set(7), InputError);
  EXPECT_THROW(MeasurableFunction(g, {q(0), q(1), q(2)}), InputError);
  EXPECT_NO_THROW(MeasurableFunction(g, {q(0), q(1), q(1)}));
}

TEST(Measurable, BijectionOnEveryFieldUpToFourPoints) {
  const std::vector<Rational> grid{q(0), q(1, 2), q(1)};
  for (int n = 1; n <= 4; ++n) {
    for (const auto& field : all_fields(n)) {
      const auto r = bijection_suite(field, grid);
      EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
      EXPECT_GT(r.cases, 0);
    }
  }
}

TEST(Measurable, SpectralFamilyIsSublevelSets) {
  const auto f = FiniteFieldOfSets::power_set(4);
  const MeasurableFunction phi(f, {q(2), q(-1), q(2), q(1, 2)});
  const auto e = spectral_family_of(phi);
  for (std::int64_t k = -8; k <= 12; ++k) {
    const Rational lambda = q(k, 4);
    Mask expect = 0;
    for (int x = 0; x < 4; ++x) {
      if (phi(x) <= lambda) expect |= bit(x);
    }
    EXPECT_EQ(f.sets().set_of(e.eval(lambda)), expect);
  }
}

TEST(Measurable, StepFamilyInducesShiftedFloor) {
  const auto field = step_field();
  std::vector<Rational> thresholds;
  std::vector<ElementId> values;
  for (std::int64_t k = -4; k <= 12; ++k) {
    const Rational lambda = q(k, 4);
    const ElementId v = field.sets().element_of(step_value(lambda));
    if (values.empty() || v != values.back()) {
      thresholds.push_back(lambda);
      values.push_back(v);
    }
  }
  const StepSpectralFamily e(field.lattice(), thresholds, values);
  EXPECT_EQ(field.sets().set_of(e.eval(q(6, 5))), bit(0) | bit(1));
  const auto f = function_of(e, field);
  EXPECT_EQ(f.values(), (std::vector<Rational>{q(0), q(1), q(2)}));

  const MeasurableFunction floor_fn(field, {q(-1), q(0), q(1)});
  const auto fe = spectral_family_of(floor_fn);
  EXPECT_EQ(fe.thresholds(), (std::vector<Rational>{q(-1), q(0), q(1)}));
  EXPECT_EQ(function_of(fe, field)(1), q(0));
}

TEST(Measurable, RiemannStieltjesOnPoints) {
  const auto field = FiniteFieldOfSets::power_set(3);
  for (const auto& phi : all_functions(field, {q(-1), q(0), q(3, 2)})) {
    const auto e = spectral_family_of(phi);
    EXPECT_EQ(riemann_stieltjes(e, field, uniform_grid(e, q(1, 2))), phi.values());
    const auto coarse = riemann_stieltjes(e, field, uniform_grid(e, q(1, 3)), Tag::left);
    for (int x = 0; x < 3; ++x) EXPECT_LE(abs(coarse[x] - phi(x)), q(1, 3));
  }
}

TEST(Ideal, PrincipalStructure) {
  const auto f = FiniteFieldOfSets::power_set(3);
  EXPECT_EQ(all_ideals(f).size(), 7U);
  const SetIdeal i(f, {bit(0), bit(1)});
  EXPECT_EQ(i.carrier(), bit(0) | bit(1));
  EXPECT_EQ(i.members().size(), 4U);
  EXPECT_TRUE(i.contains(bit(1)));
  EXPECT_FALSE(i.contains(bit(2)));
  EXPECT_EQ(i.perp().size(), 4U);
  for (Mask s : i.perp()) EXPECT_TRUE(has(s, 2));
  EXPECT_THROW(SetIdeal(f, {f.ground()}), InputError);
  EXPECT_THROW(SetIdeal(f, {bit(0), bit(1) | bit(2)}), InputError);
}

TEST(Quotient, PowerSetModuloSingleton) {
  const auto q3 = pot3_mod_1();
  EXPECT_EQ(q3.lattice().size(), 4);
  EXPECT_TRUE(is_boolean(q3.lattice()));
  EXPECT_EQ(q3.class_of(bit(0)), q3.lattice().bottom());
  EXPECT_EQ(q3.class_of(bit(0) | bit(1)), q3.class_of(bit(1)));
  EXPECT_EQ(q3.class_of(bit(1) | bit(2)), q3.lattice().top());
  ASSERT_EQ(q3.spectrum().size(), 2);
  // Embedded quasipoints are the ones at points outside N.
  Mask pts = 0;
  for (int b : q3.embedding()) pts |= q3.field().sets().set_of(q3.base_spectrum().generator(b));
  EXPECT_EQ(pts, bit(1) | bit(2));
  EXPECT_EQ(count(q3.embedded_points()), 2);
}

TEST(Quotient, GammaAgreesWithRestrictionAndIsAHomomorphism) {
  const auto field = FiniteFieldOfSets::power_set(3);
  for (const auto& ideal : all_ideals(field)) {
    const QuotientAlgebra qa(ideal);
    const auto fns = all_functions(field, {q(-1), q(0), q(2)});
    for (const auto& phi : fns) {
      const auto g = gamma_transform(phi, qa);
      EXPECT_EQ(g, restricted_gelfand(phi, qa));
      bool zero = std::all_of(g.begin(), g.end(), [](const Rational& v) { return v == 0; });
      EXPECT_EQ(zero, in_kernel(phi, ideal));
      EXPECT_EQ(gamma_transform(gamma_preimage(g, qa), qa), g);
    }
    for (std::size_t a = 0; a < fns.size(); a += 5) {
      for (std::size_t b = 0; b < fns.size(); b += 3) {
        std::vector<Rational> sum(3);
        std::vector<Rational> prod(3);
        for (int x = 0; x < 3; ++x) {
          sum[x] = fns[a](x) + fns[b](x);
          prod[x] = fns[a](x) * fns[b](x);
        }
        const auto ga = gamma_transform(fns[a], qa);
        const auto gb = gamma_transform(fns[b], qa);
        const auto gs = gamma_transform(MeasurableFunction(field, sum), qa);
        const auto gp = gamma_transform(MeasurableFunction(field, prod), qa);
        for (std::size_t k = 0; k < ga.size(); ++k) {
          EXPECT_EQ(gs[k], ga[k] + gb[k]);
          EXPECT_EQ(gp[k], ga[k] * gb[k]);
        }
      }
    }
  }
}

TEST(Quotient, LiftReproducesFamily) {
  const auto field = FiniteFieldOfSets::power_set(4);
  for (const auto& ideal : all_ideals(field)) {
    const QuotientAlgebra qa(ideal);
    for (const auto& e : enumerate_step_families(qa.lattice(), {q(0), q(1), q(2)})) {
      const auto phi = lift_spectral_family(e, qa);
      EXPECT_EQ(quotient_family(phi, qa), e) << to_string(e);
      for (int x = 0; x < 4; ++x) {
        if (!has(ideal.carrier(), x)) continue;
        EXPECT_EQ(phi(x), e.upper_bound());
      }
    }
  }
}

TEST(Quotient, ComplexGamma) {
  const auto qa = pot3_mod_1();
  const MeasurableFunction re(qa.field(), {q(5), q(1), q(2)});
  const MeasurableFunction im(qa.field(), {q(7), q(-1), q(0)});
  const auto g = gamma_transform(re, im, qa);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const int x = lowest(qa.representative(qa.spectrum().generator(static_cast<int>(k))));
    EXPECT_EQ(g[k], Complex(re(x), im(x)));
  }
}

TEST(Quotient, TrivialIdealIsTheIdentity) {
  const auto field = FiniteFieldOfSets::power_set(3);
  const QuotientAlgebra qa(SetIdeal(field, std::vector<Mask>{}));
  EXPECT_EQ(qa.lattice().size(), field.sets().lattice().size());
  EXPECT_EQ(qa.spectrum().size(), 3);
  EXPECT_EQ(count(qa.embedded_points()), 3);
  for (const auto& phi : all_functions(field, {q(0), q(1)})) {
    const auto e = spectral_family_of(phi);
    EXPECT_EQ(lift_spectral_family(quotient_family(phi, qa), qa)(0), phi(0));
    EXPECT_EQ(gamma_transform(phi, qa), restricted_gelfand(phi, qa));
    EXPECT_EQ(quotient_family(phi, qa).jumps(), e.jumps());
  }
}

TEST(Quotient, LiftOfTwoClassFamily) {
  const auto qa = pot3_mod_1();
  const auto& l = qa.lattice();
  const StepSpectralFamily e(l, {q(0), q(1)}, {qa.class_of(bit(1)), l.top()});
  const auto phi = lift_spectral_family(e, qa);
  EXPECT_EQ(phi(1), q(0));
  EXPECT_EQ(phi(2), q(1));
  EXPECT_EQ(quotient_family(phi, qa), e);
}
