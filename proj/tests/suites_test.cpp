#include <gtest/gtest.h>

#include "stonespec/suites.hpp"

using namespace stonespec;

TEST(Suites, RegistryIsComplete) {
  EXPECT_EQ(suites::all().size(), 10U);
  for (const auto& s : suites::all()) EXPECT_EQ(suites::find(s.name), &s);
  EXPECT_EQ(suites::find("nope"), nullptr);
}

TEST(Suites, AllButInjectivityPassAtSizeThree) {
  const suites::Options o{3, 7};
  for (const auto& s : suites::all()) {
    if (std::string_view(s.name) == "injectivity") continue;
    const auto r = s.run(o, nullptr);
    EXPECT_TRUE(r.ok()) << s.name << ": " << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_GT(r.cases, 0) << s.name;
  }
}

// Chains are distributive but not Boolean; their Stone spectrum is a single
// point, so the transform cannot separate families there.
TEST(Suites, InjectivityFailsExactlyOnChains) {
  const auto r = suites::injectivity({4, 1});
  EXPECT_FALSE(r.ok());
  for (const auto& f : r.failures) EXPECT_EQ(f.rfind("chain(", 0), 0U) << f;
  for (int n = 1; n <= 3; ++n) {
    SuiteReport b;
    suites::injectivity_on(fixtures::boolean(n), "boolean", b);
    EXPECT_TRUE(b.ok());
  }
  SuiteReport mo;
  suites::injectivity_on(fixtures::mo(2), "MO2", mo);
  EXPECT_TRUE(mo.ok());
}

TEST(Suites, SeededRunsAreReproducible) {
  const auto a = suites::continuity({3, 42});
  const auto b = suites::continuity({3, 42});
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.failures, b.failures);
  const auto c = suites::spectral_theorem({3, 5});
  const auto d = suites::spectral_theorem({3, 5});
  EXPECT_EQ(c.cases, d.cases);
}

TEST(Suites, CounterexampleNotes) {
  std::vector<std::string> notes;
  const auto r = suites::counterexamples({4, 1}, &notes);
  EXPECT_TRUE(r.ok());
  bool sierpinski = false;
  for (const auto& n : notes) sierpinski = sierpinski || n.find("witness (0, 1/2)") != std::string::npos;
  EXPECT_TRUE(sierpinski);
}
