#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.hpp"
#include "stonespec/dsl.hpp"

using namespace stonespec;

namespace {

const std::string kFixtures = STONESPEC_FIXTURES;

std::vector<std::string> fixture_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kFixtures)) {
    if (e.path().extension() == ".lat") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// First diagnostic, or a dummy with an empty code when parsing succeeded.
dsl::Diagnostic first(std::string_view text) {
  const auto r = dsl::parse(text);
  if (r.diagnostics.empty()) return {};
  return r.diagnostics.front();
}

constexpr const char* kMO2 = R"(lattice MO2 {
  elements: 0, a, a', b, b', 1;
  order: 0 < a < 1, 0 < a' < 1, 0 < b < 1, 0 < b' < 1;
  ortho: 0 <-> 1, a <-> a', b <-> b';
  flags: orthomodular;
}
)";

}  // namespace

TEST(Dsl, FixturesParseAndEmitToAFixpoint) {
  const auto files = fixture_files();
  ASSERT_GE(files.size(), 6U);
  for (const auto& path : files) {
    const auto r = dsl::parse(oracle::read_file(path));
    ASSERT_TRUE(r.ok()) << path << ": " << (r.diagnostics.empty() ? "" : dsl::to_string(r.diagnostics.front()));
    const std::string once = dsl::emit_dsl(*r.file);
    const auto again = dsl::parse(once);
    ASSERT_TRUE(again.ok()) << path << "\n" << once;
    EXPECT_EQ(dsl::emit_dsl(*again.file), once) << path;
    EXPECT_EQ(again.file->names(), r.file->names());
  }
}

TEST(Dsl, ParsedLatticeMatchesFixture) {
  const auto file = dsl::parse_or_throw(kMO2);
  const auto& b = file.get<dsl::LatticeBlock>("MO2");
  const auto ref = fixtures::mo(2);
  ASSERT_EQ(b.lattice.size(), ref.size());
  for (int a = 0; a < ref.size(); ++a) {
    const ElementId x = b.lattice.at(ref.name(a));
    for (int c = 0; c < ref.size(); ++c) {
      EXPECT_EQ(b.lattice.name(b.lattice.meet(x, b.lattice.at(ref.name(c)))), ref.name(ref.meet(a, c)));
    }
    EXPECT_EQ(b.lattice.name(b.lattice.ortho(x)), ref.name(ref.ortho(a)));
  }
  EXPECT_TRUE(b.lattice.is_orthomodular());
}

TEST(Dsl, FamiliesInEverySpaceKind) {
  const auto file = dsl::parse_or_throw(oracle::read_file(kFixtures + "/quotient.lat"));
  const auto space = file.require_space("F/I");
  EXPECT_EQ(space.kind, dsl::Space::Kind::quotient);
  EXPECT_EQ(space.spectrum().size(), 2);
  const auto& e = file.get<dsl::FamilyBlock>("E");
  EXPECT_EQ(e.family.jumps(), 2);
  const auto phi = dsl::measurable_function(file, file.get<dsl::FunctionBlock>("phi"));
  EXPECT_EQ(phi.field().ground_size(), 3);

  const auto s = dsl::parse_or_throw(oracle::read_file(kFixtures + "/sierpinski.lat"));
  EXPECT_EQ(s.require_space("S").kind, dsl::Space::Kind::topology);
  EXPECT_THROW(s.require_space("T"), InputError);
  EXPECT_THROW(s.get<dsl::FamilyBlock>("S"), InputError);
}

TEST(Dsl, EmptyFile) {
  const auto d = first("# nothing here\n");
  EXPECT_EQ(d.code, dsl::code::empty_file);
  EXPECT_EQ(first("").code, dsl::code::empty_file);
}

TEST(Dsl, UnknownBlockKindSuggestsClosest) {
  const auto d = first("\n  latice L { elements: 0, 1; order: 0 < 1; }\n");
  EXPECT_EQ(d.code, dsl::code::unknown_block);
  EXPECT_EQ(d.line, 2);
  EXPECT_EQ(d.col, 3);
  EXPECT_EQ(d.suggestion, "lattice");
}

TEST(Dsl, DuplicateName) {
  const auto r = dsl::parse(std::string(kMO2) + "lattice MO2 { elements: 0; }\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics.front().code, dsl::code::duplicate_name);
  EXPECT_EQ(r.diagnostics.front().line, 7);
  EXPECT_EQ(r.diagnostics.front().col, 9);
}

TEST(Dsl, DanglingReferenceSuggestsClosest) {
  const auto d = first(std::string(kMO2) + "family E in MO3 { 0 : a; 1 : 1; }\n");
  EXPECT_EQ(d.code, dsl::code::dangling_reference);
  EXPECT_EQ(d.line, 7);
  EXPECT_EQ(d.col, 13);
  EXPECT_EQ(d.suggestion, "MO2");
}

TEST(Dsl, UnknownElementSuggestsClosest) {
  const auto d = first(std::string(kMO2) + "family E in MO2 {\n  0 : aa;\n  1 : 1;\n}\n");
  EXPECT_EQ(d.code, dsl::code::unknown_element);
  EXPECT_EQ(d.line, 8);
  EXPECT_EQ(d.col, 7);
  ASSERT_TRUE(d.suggestion);
  EXPECT_EQ(d.suggestion->size(), 1U);
}

TEST(Dsl, MalformedRational) {
  for (const char* bad : {"1/0", "x", "1.2.3", "--1"}) {
    const auto d = first(std::string(kMO2) + "family E in MO2 { " + bad + " : a; 1 : 1; }\n");
    EXPECT_EQ(d.code, dsl::code::malformed_rational) << bad;
    EXPECT_EQ(d.line, 7) << bad;
    EXPECT_EQ(d.col, 19) << bad;
  }
  EXPECT_EQ(first(std::string(kMO2) + "family E in MO2 { -1/2 : a; 0.25 : 1; }\n").code, "");
}

TEST(Dsl, NonIncreasingThresholdsAtFixtureLine) {
  const auto d = first(oracle::read_file(kFixtures + "/invalid/non_increasing.lat"));
  EXPECT_EQ(d.code, dsl::code::non_increasing);
  EXPECT_EQ(d.line, 8);
  EXPECT_EQ(d.col, 3);
}

TEST(Dsl, NonMonotoneFamily) {
  const auto d = first(std::string(kMO2) + "family E in MO2 { 0 : a; 1 : b; 2 : 1; }\n");
  EXPECT_EQ(d.code, dsl::code::non_monotone);
  EXPECT_EQ(d.line, 7);
}

TEST(Dsl, FamilyMustReachTop) {
  EXPECT_EQ(first(std::string(kMO2) + "family E in MO2 { 0 : a; }\n").code, dsl::code::invalid_family);
}

TEST(Dsl, InvalidStructures) {
  EXPECT_EQ(first("lattice V { elements: 0, a, b; order: 0 < a, 0 < b; }\n").code, dsl::code::invalid_structure);
  EXPECT_EQ(first("topology T on {1,2} { opens: {}, {1}; }\n").code, dsl::code::invalid_structure);
  EXPECT_EQ(first("field F on {1,2} { atoms: {1}; }\n").code, dsl::code::invalid_structure);
  const auto d = first("field F on {1,2,3} { atoms: {1}, {2,3}; }\nfunction f on F { 1 : 0; 2 : 1; 3 : 2; }\n");
  EXPECT_EQ(d.code, dsl::code::invalid_structure);
  EXPECT_EQ(d.line, 2);
}

TEST(Dsl, SyntaxErrorsAreRecoveredAndAllReported) {
  const std::string text = std::string(kMO2) +
                           "family E in MO2 { 0 : a 1 : 1; }\n"
                           "family F in MO2 { 0 : zz; 1 : 1; }\n";
  const auto r = dsl::parse(text);
  ASSERT_FALSE(r.ok());
  ASSERT_GE(r.diagnostics.size(), 2U);
  EXPECT_EQ(r.diagnostics[0].code, dsl::code::syntax);
  EXPECT_EQ(r.diagnostics[0].line, 7);
  EXPECT_EQ(r.diagnostics[1].code, dsl::code::unknown_element);
  EXPECT_EQ(r.diagnostics[1].line, 8);
  EXPECT_THROW(dsl::parse_or_throw(text), dsl::ParseError);
}

TEST(Dsl, FailedBlocksDoNotCascade) {
  const auto r = dsl::parse("lattice L { elements: 0, 1; order: 0 < q; }\nfamily E in L { 0 : 1; }\n");
  ASSERT_EQ(r.diagnostics.size(), 1U);
  EXPECT_EQ(r.diagnostics[0].code, dsl::code::unknown_element);
}

TEST(Dsl, DiagnosticText) {
  const auto d = first("\n  latice L {}\n");
  EXPECT_EQ(dsl::to_string(d).substr(0, 4), "2:3:");
  EXPECT_NE(dsl::to_string(d).find("did you mean 'lattice'"), std::string::npos);
}

TEST(Dsl, JsonExport) {
  const auto file = dsl::parse_or_throw(oracle::read_file(kFixtures + "/mo2.lat"));
  const auto j = dsl::to_json(file);
  ASSERT_TRUE(j.contains("blocks"));
  const auto lat = dsl::to_json(file, "MO2");
  EXPECT_EQ(lat["kind"], "lattice");
  EXPECT_EQ(lat["lattice"]["quasipoints"].size(), 4U);
  const auto fam = dsl::to_json(file, "E");
  EXPECT_EQ(fam["kind"], "family");
  ASSERT_TRUE(fam.contains("observable"));
  EXPECT_EQ(fam["observable"]["Q{a,1}"], "0");
  // Keys are sorted, so a dump is stable.
  EXPECT_EQ(j.dump(), dsl::to_json(dsl::parse_or_throw(dsl::emit_dsl(file))).dump());
}

TEST(Dsl, DotExport) {
  const auto file = dsl::parse_or_throw(oracle::read_file(kFixtures + "/mo2.lat"));
  const auto dot = dsl::emit_dot(file, "MO2");
  EXPECT_EQ(dot.rfind("digraph", 0), 0U);
  // MO2 has 8 covering pairs.
  std::size_t edges = 0;
  for (std::size_t p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 2)) ++edges;
  EXPECT_EQ(edges, 8U);
  EXPECT_THROW(dsl::emit_dot(file, "nope"), InputError);
}
