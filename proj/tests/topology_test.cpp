#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stonespec/topology.hpp"

using namespace stonespec;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return {n, d}; }

// A real-valued map on a finite space is continuous iff it is constant
// along the specialization order, since points of the line are closed.
bool continuous_oracle(const PointFunction& f, const FiniteTopSpace& t) {
  for (int x = 0; x < t.size(); ++x) {
    for (int y = 0; y < t.size(); ++y) {
      if (has(t.neighbourhood(x), y) && f[x] != f[y]) return false;
    }
  }
  return true;
}

FiniteTopSpace three_point() {
  return FiniteTopSpace::from_opens(numbered_points(3), {0, 0b001, 0b010, 0b011, 0b111});
}

}  // namespace

TEST(Topology, EnumerationMatchesPreorderCount) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(static_cast<long>(enumerate_topologies(n).size()), oracle::count_preorders(n)) << n;
  }
  EXPECT_EQ(enumerate_topologies(5).size(), 6942U);
  EXPECT_THROW(enumerate_topologies(6), InputError);
}

TEST(Topology, ValidationAndOperators) {
  EXPECT_THROW(FiniteTopSpace::from_opens(numbered_points(2), {0, 0b01}), InputError);
  EXPECT_THROW(FiniteTopSpace::from_opens(numbered_points(3), {0, 0b001, 0b010, 0b111}), InputError);
  const auto t = three_point();
  EXPECT_EQ(t.closure(0b001), 0b101U);
  EXPECT_EQ(t.interior(0b101), 0b001U);
  EXPECT_TRUE(t.is_closed(0b100));
  EXPECT_TRUE(t.is_regular_open(0b001));
  EXPECT_FALSE(t.is_regular_open(0b011));
  EXPECT_EQ(t.regular_open_lattice().sets().size(), 4U);
  EXPECT_EQ(t.pseudocomplement(0b001), 0b010U);
  EXPECT_FALSE(t.is_hausdorff());
  EXPECT_TRUE(FiniteTopSpace::discrete(3).is_hausdorff());
  const auto g = FiniteTopSpace::generated_by(numbered_points(3), {0b001, 0b010});
  EXPECT_EQ(g.opens().size(), 5U);
}

TEST(Topology, RegularOpenAlgebraIsOrthocomplemented) {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      const Lattice& l = t.regular_open_lattice().lattice();
      EXPECT_TRUE(l.has_ortho());
      EXPECT_TRUE(is_boolean(l));
    }
  }
}

TEST(Topology, ContinuityMatchesSpecializationOracle) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      for (const auto& f : all_point_functions(n, {q(0), q(1), q(2)})) {
        EXPECT_EQ(is_continuous(f, t), continuous_oracle(f, t));
      }
    }
  }
}

TEST(Topology, ContinuousFunctionsRoundTrip) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      for (const auto& f : all_point_functions(n, {q(0), q(1, 2), q(1)})) {
        const auto r = spectral_family_of_continuous(f, t);
        ASSERT_TRUE(std::holds_alternative<StepSpectralFamily>(r));
        const auto& e = std::get<StepSpectralFamily>(r);
        EXPECT_EQ(admissible_domain(e, t), t.ground());
        if (!is_continuous(f, t)) continue;
        EXPECT_EQ(induced_function(e, t), f);
      }
    }
  }
}

TEST(Topology, SierpinskiFamilyIsNotStronglyRegular) {
  const auto t = FiniteTopSpace::sierpinski();
  const auto& sets = t.open_lattice();
  const StepSpectralFamily e(sets.lattice(), {q(0), q(1)}, {sets.element_of(0b01), sets.element_of(0b11)});
  const auto sr = is_strongly_regular(e, t);
  EXPECT_FALSE(sr.holds);
  ASSERT_TRUE(sr.witness);
  EXPECT_EQ(sr.witness->first, q(0));
  EXPECT_EQ(sr.witness->second, q(1, 2));
  EXPECT_FALSE(is_regular(e, t));
  EXPECT_EQ(classify(e, t), FamilyClass::neither);
  const auto f = induced_function(e, t);
  EXPECT_EQ(f, (PointFunction{q(0), q(1)}));
  EXPECT_FALSE(is_continuous(f, t));
}

TEST(Topology, RegularButNotStronglyRegular) {
  const auto t = three_point();
  const auto& sets = t.open_lattice();
  const StepSpectralFamily e(sets.lattice(), {q(0), q(1)}, {sets.element_of(0b001), sets.element_of(0b111)});
  EXPECT_EQ(classify(e, t), FamilyClass::regular);
  const StepSpectralFamily c = StepSpectralFamily::constant(sets.lattice(), q(3));
  EXPECT_EQ(classify(c, t), FamilyClass::strongly_regular);
}

TEST(Topology, StrongRegularityMeansClosedValues) {
  for (const auto& t : enumerate_topologies(3)) {
    for (const auto& e : enumerate_step_families(t.open_lattice().lattice(), {q(0), q(1)})) {
      // Literal: closure(E_lambda) inside E_mu for lambda < mu on a fine grid.
      bool literal = true;
      for (std::int64_t i = -2; i <= 6; ++i) {
        for (std::int64_t j = i + 1; j <= 6; ++j) {
          const Mask a = t.open_lattice().set_of(e.eval(q(i, 4)));
          const Mask b = t.open_lattice().set_of(e.eval(q(j, 4)));
          literal = literal && is_subset(t.closure(a), b);
        }
      }
      EXPECT_EQ(is_strongly_regular(e, t).holds, literal);
    }
  }
}

TEST(PtStructure, DiscreteSpacesAreIdentifiedWithTheirSpectrum) {
  for (int n = 1; n <= 4; ++n) {
    const auto p = pt_structure(FiniteTopSpace::discrete(n));
    EXPECT_EQ(p.spectrum.size(), n);
    EXPECT_TRUE(p.compact);
    ASSERT_TRUE(p.pt);
    EXPECT_TRUE(*p.identification);
    for (int x = 0; x < n; ++x) EXPECT_EQ(count(p.fibres[x]), 1);
  }
}

TEST(PtStructure, SierpinskiFibres) {
  const auto p = pt_structure(FiniteTopSpace::sierpinski());
  ASSERT_EQ(p.spectrum.size(), 1);
  // The only quasipoint is generated by {1}, whose closure is everything.
  EXPECT_EQ(p.fibres[0], Mask{1});
  EXPECT_EQ(p.fibres[1], Mask{1});
  EXPECT_FALSE(p.pt);
  EXPECT_THROW(cpt_membership({Complex{}}, p), UnsupportedStructure);
}

TEST(PtStructure, FStarOnDiscreteSpaces) {
  const auto t = FiniteTopSpace::discrete(3);
  const auto p = pt_structure(t);
  for (const auto& re : all_point_functions(3, {q(0), q(1)})) {
    ComplexPointFunction phi;
    for (const auto& v : re) phi.push_back({v, 1 - v});
    const auto g = f_star(phi, t, p.spectrum);
    EXPECT_TRUE(cpt_membership(g, p));
    for (int x = 0; x < 3; ++x) EXPECT_EQ(g[lowest(p.fibres[x])], phi[x]);
  }
  EXPECT_THROW(f_star(PointFunction{q(0), q(1)}, FiniteTopSpace::sierpinski(), p.spectrum), InputError);
}

TEST(CompleteIncrease, ScanAgreesWithPairwiseCheck) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      for (const auto* sets : {&t.open_lattice(), &t.regular_open_lattice()}) {
        const auto s = enumerate_quasipoints(sets->lattice());
        EXPECT_EQ(completely_distributive_scan(s).holds, is_completely_distributive(s).holds);
      }
    }
  }
}

TEST(CompleteIncrease, RFunctionOfObservableIsCompletelyIncreasing) {
  const auto t = FiniteTopSpace::discrete(3);
  const auto& l = t.regular_open_lattice().lattice();
  const auto s = enumerate_quasipoints(l);
  for (const auto& e : enumerate_step_families(l, {q(0), q(1), q(2)})) {
    const auto g = observable_function(e, s);
    const auto r = r_function(g, s);
    EXPECT_TRUE(completely_increasing_check(r, l));
    EXPECT_TRUE(star_condition_check(g, t, s).holds);
  }
}

TEST(CompleteIncrease, NonIncreasingSetFunctionIsRejected) {
  const auto l = fixtures::boolean(2);
  SetFunction r(l.size());
  r[l.at("{x}")] = q(1);
  r[l.at("{y}")] = q(2);
  r[l.top()] = q(1);
  EXPECT_FALSE(completely_increasing_check(r, l));
  r[l.top()] = q(2);
  EXPECT_TRUE(completely_increasing_check(r, l));
}

TEST(SpectralRepresentation, RecoversContinuousFunctions) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& t : enumerate_topologies(n)) {
      for (const auto& phi : all_point_functions(n, {q(-1), q(0), q(3, 2)})) {
        if (!is_continuous(phi, t)) continue;
        const auto e = spectral_family_of_function(phi, t);
        EXPECT_EQ(spectral_representation(phi, t, uniform_grid(e, q(1, 2))), phi);
      }
    }
  }
}

TEST(Topology, RegularOpenAlgebraExamples) {
  EXPECT_EQ(FiniteTopSpace::discrete(3).regular_open_lattice().sets().size(), 8U);
  const auto s = FiniteTopSpace::sierpinski().regular_open_lattice().sets();
  EXPECT_EQ(s, (std::vector<Mask>{0, 0b11}));
}

// The indicator of a clopen set gives a strongly regular family that still
// jumps from the left: E_mu = {2} for mu < 1 while E_1 = M.
TEST(Topology, ClopenIndicatorJumpsFromTheLeft) {
  const auto t = FiniteTopSpace::discrete(2);
  const auto e = spectral_family_of_function(PointFunction{q(1), q(0)}, t);
  EXPECT_TRUE(is_strongly_regular(e, t).holds);
  const auto& sets = t.open_lattice();
  EXPECT_EQ(sets.set_of(e.eval(q(0))), Mask{0b10});
  EXPECT_EQ(sets.set_of(e.eval(q(99, 100))), Mask{0b10});
  EXPECT_EQ(sets.set_of(e.eval(q(1))), Mask{0b11});
}
