// stonespec: command line front end for instance files and property suites.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stonespec/dsl.hpp"
#include "stonespec/suites.hpp"

namespace {

using namespace stonespec;

constexpr int kOk = 0;
constexpr int kSuiteFailure = 1;
constexpr int kInputError = 2;

dsl::InstanceFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto r = dsl::parse(buffer.str());
  if (!r.ok()) {
    for (auto& d : r.diagnostics) d.message = d.message;
    std::string text;
    for (const auto& d : r.diagnostics) text += (text.empty() ? "" : "\n") + path + ":" + dsl::to_string(d);
    throw InputError(text);
  }
  return std::move(*r.file);
}

void print_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
    }
    std::cout << line << "\n";
  }
}

int cmd_validate(const std::string& path) {
  const auto file = load(path);
  for (const auto& b : file.blocks()) {
    std::cout << dsl::block_kind(b) << " " << dsl::block_name(b);
    if (const auto* l = std::get_if<dsl::LatticeBlock>(&b)) {
      const Lattice& lat = l->lattice;
      std::cout << ": " << lat.size() << " elements, " << (lat.is_distributive() ? "distributive" : "not distributive");
      if (lat.has_ortho()) std::cout << ", " << (lat.is_orthomodular() ? "orthomodular" : "not orthomodular");
    } else if (const auto* t = std::get_if<dsl::TopologyBlock>(&b)) {
      std::cout << ": " << t->space.opens().size() << " open sets, "
                << t->space.regular_open_lattice().sets().size() << " regular open";
    } else if (const auto* f = std::get_if<dsl::FamilyBlock>(&b)) {
      std::cout << ": " << f->family.jumps() << " jumps";
    }
    std::cout << "\n";
  }
  std::cout << "ok\n";
  return kOk;
}

int cmd_quasipoints(const std::string& path, const std::string& name) {
  const auto file = load(path);
  const auto space = file.require_space(name);
  const auto s = space.spectrum();
  std::vector<std::vector<std::string>> rows{{"#", "quasipoint", "generator"}};
  for (int i = 0; i < s.size(); ++i) {
    rows.push_back({std::to_string(i + 1), s.point_name(i), space.element_text(s.generator(i))});
  }
  print_table(rows);
  return kOk;
}

int cmd_observable(const std::string& path, const std::string& name) {
  const auto file = load(path);
  const dsl::Block* b = file.find(name);
  if (!b) throw InputError("no object named '" + name + "'");
  std::vector<std::vector<std::string>> rows{{"quasipoint", "f_E"}};
  if (const auto* f = std::get_if<dsl::FamilyBlock>(b)) {
    const auto s = file.require_space(f->space).spectrum();
    const auto g = observable_function(f->family, s);
    for (int i = 0; i < s.size(); ++i) rows.push_back({s.point_name(i), to_string(g[i])});
  } else if (const auto* f2 = std::get_if<dsl::Family2Block>(b)) {
    const auto s = file.require_space(f2->space).spectrum();
    const auto g = observable_function_complex(f2->family, s);
    for (int i = 0; i < s.size(); ++i) rows.push_back({s.point_name(i), to_string(g[i])});
  } else {
    throw InputError("'" + name + "' is not a spectral family");
  }
  print_table(rows);
  return kOk;
}

std::string interval_text(const OpenInterval& i) {
  return "(" + (i.lo ? to_string(*i.lo) : std::string("-inf")) + ", " + (i.hi ? to_string(*i.hi) : std::string("inf")) +
         ")";
}

int cmd_spectrum(const std::string& path, const std::string& name) {
  const auto file = load(path);
  const auto& f = file.get<dsl::FamilyBlock>(name);
  const auto sp = spectrum(f.family);
  std::string points;
  for (const auto& t : sp.spectrum) points += (points.empty() ? "" : ", ") + to_string(t);
  std::string resolvent;
  for (const auto& i : sp.resolvent) resolvent += (resolvent.empty() ? "" : " u ") + interval_text(i);
  std::cout << "spectrum: {" << points << "}\nresolvent: " << resolvent << "\n";
  return kOk;
}

std::string family_text(const StepSpectralFamily& e, const dsl::Space& s) {
  std::string out = "{";
  for (int k = 0; k < e.jumps(); ++k) {
    out += (k ? ", " : "") + to_string(e.thresholds()[k]) + " : " + s.element_text(e.values()[k]);
  }
  return out + "}";
}

int cmd_decompose(const std::string& path, const std::string& name) {
  const auto file = load(path);
  const auto& f = file.get<dsl::Family2Block>(name);
  const auto s = file.require_space(f.space);
  const auto [e1, e2] = decompose(f.family);
  std::cout << "E1: " << family_text(e1, s) << "\nE2: " << family_text(e2, s) << "\n";
  std::cout << "recombines: " << (product_family(e1, e2) == f.family ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_quotient(const std::string& path, const std::string& field, const std::string& ideal) {
  const auto file = load(path);
  const auto& i = file.get<dsl::IdealBlock>(ideal);
  if (i.field != field) throw InputError("ideal " + ideal + " lives in " + i.field + ", not " + field);
  const auto& q = *i.quotient;
  std::cout << "ideal: sets inside " << q.field().sets().name(q.ideal().carrier()) << "\n";
  std::string classes;
  for (Mask r : q.classes().sets()) classes += (classes.empty() ? "" : ", ") + ("[" + q.classes().name(r) + "]");
  std::cout << "classes: " << classes << "\n";
  std::vector<std::vector<std::string>> rows{{"quotient quasipoint", "quasipoint of " + field}};
  for (int k = 0; k < q.spectrum().size(); ++k) {
    rows.push_back({q.spectrum().point_name(k), q.base_spectrum().point_name(q.embedding()[k])});
  }
  print_table(rows);
  return kOk;
}

int cmd_lift(const std::string& path, const std::string& name) {
  const auto file = load(path);
  const auto& f = file.get<dsl::FamilyBlock>(name);
  const auto s = file.require_space(f.space);
  if (s.kind != dsl::Space::Kind::quotient) throw InputError("family " + name + " does not live in a quotient F/I");
  const auto phi = lift_spectral_family(f.family, *s.ideal->quotient);
  std::vector<std::vector<std::string>> rows{{"point", "phi"}};
  for (int x = 0; x < phi.field().ground_size(); ++x) rows.push_back({phi.field().points()[x], to_string(phi(x))});
  print_table(rows);
  return kOk;
}

int cmd_integrate(const std::string& path, const std::string& name, const std::string& eps_text,
                  const std::string& tag_text) {
  const auto file = load(path);
  const auto& f = file.get<dsl::FamilyBlock>(name);
  const auto eps = parse_rational(eps_text);
  if (!eps || *eps <= 0) throw InputError("--eps needs a positive rational, got '" + eps_text + "'");
  if (tag_text != "left" && tag_text != "right") throw InputError("--tag is left or right");
  const Tag tag = tag_text == "left" ? Tag::left : Tag::right;
  const auto space = file.require_space(f.space);
  const auto grid = uniform_grid(f.family, *eps);
  std::cout << "grid: " << to_string(grid.front()) << " to " << to_string(grid.back()) << " in steps of "
            << to_string(*eps) << " (" << grid.size() << " points)\n";
  const auto q = space.spectrum();
  const auto s = riemann_stieltjes(f.family, q, grid, tag);
  const auto g = observable_function(f.family, q);
  std::vector<std::vector<std::string>> rows{{"quasipoint", "f_E", "sum"}};
  for (int i = 0; i < q.size(); ++i) rows.push_back({q.point_name(i), to_string(g[i]), to_string(s[i])});
  print_table(rows);
  if (space.kind == dsl::Space::Kind::field) {
    const auto& field = space.field->field;
    const auto fx = function_of(f.family, field);
    const auto sx = riemann_stieltjes(f.family, field, grid, tag);
    std::vector<std::vector<std::string>> prow{{"point", "f_E", "sum"}};
    for (int x = 0; x < field.ground_size(); ++x) {
      prow.push_back({field.points()[x], to_string(fx(x)), to_string(sx[x])});
    }
    std::cout << "\n";
    print_table(prow);
  }
  return kOk;
}

int cmd_check(const std::string& which, int max_size, std::uint64_t seed) {
  if (max_size < 1 || max_size > 4) throw InputError("--max-size must be between 1 and 4");
  std::vector<const suites::Suite*> selected;
  if (which == "all") {
    for (const auto& s : suites::all()) selected.push_back(&s);
  } else if (const auto* s = suites::find(which)) {
    selected.push_back(s);
  } else {
    std::string names;
    for (const auto& s : suites::all()) names += (names.empty() ? "" : ", ") + std::string(s.name);
    throw InputError("unknown suite '" + which + "'; available: all, " + names);
  }
  std::cout << "seed: " << seed << "\nmax-size: " << max_size << "\n";
  const suites::Options options{max_size, seed};
  SuiteReport total;
  constexpr std::size_t kShown = 5;
  for (const auto* s : selected) {
    std::vector<std::string> notes;
    const auto r = s->run(options, &notes);
    std::cout << s->name << ": " << r.failures.size() << " failures / " << r.cases << " cases\n";
    for (const auto& n : notes) std::cout << "  note: " << n << "\n";
    for (std::size_t i = 0; i < std::min(r.failures.size(), kShown); ++i) {
      std::cout << "  counterexample: " << r.failures[i] << "\n";
    }
    if (r.failures.size() > kShown) std::cout << "  ... " << r.failures.size() - kShown << " more\n";
    total.merge(r);
  }
  if (selected.size() > 1) std::cout << "total: " << total.failures.size() << " failures / " << total.cases << " cases\n";
  return total.ok() ? kOk : kSuiteFailure;
}

int cmd_emit(const std::string& format, const std::string& path, const std::string& object) {
  const auto file = load(path);
  if (format == "json") {
    const auto j = object.empty() ? dsl::to_json(file) : dsl::to_json(file, object);
    std::cout << j.dump(2) << "\n";
  } else if (format == "dot") {
    std::cout << (object.empty() ? dsl::emit_dot(file) : dsl::emit_dot(file, object));
  } else if (format == "dsl") {
    std::cout << (object.empty() ? dsl::emit_dsl(file) : dsl::emit_dsl(file, object));
  } else {
    throw InputError("unknown format '" + format + "'; use json, dot or dsl");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stone spectra, spectral families and observable functions of finite lattices"};
  app.require_subcommand(1);

  std::string file;
  std::string name;
  std::string second;

  auto* validate = app.add_subcommand("validate", "parse an instance file and report every diagnostic");
  validate->add_option("file", file, "instance file")->required();

  auto* quasipoints = app.add_subcommand("quasipoints", "list the quasipoints of a lattice, topology or field");
  quasipoints->add_option("file", file, "instance file")->required();
  quasipoints->add_option("object", name, "lattice, topology, field or F/I")->required();

  auto* observable = app.add_subcommand("observable", "tabulate f_E on the Stone spectrum");
  observable->add_option("file", file, "instance file")->required();
  observable->add_option("family", name, "family or family2")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectrum and resolvent of a family");
  spectrum_cmd->add_option("file", file, "instance file")->required();
  spectrum_cmd->add_option("family", name, "family")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "split a 2-parameter family into two families");
  decompose_cmd->add_option("file", file, "instance file")->required();
  decompose_cmd->add_option("family2", name, "2-parameter family")->required();

  auto* quotient_cmd = app.add_subcommand("quotient", "quotient of a field of sets by an ideal");
  quotient_cmd->add_option("file", file, "instance file")->required();
  quotient_cmd->add_option("field", name, "field of sets")->required();
  quotient_cmd->add_option("ideal", second, "ideal of the field")->required();

  auto* lift = app.add_subcommand("lift", "lift a family in F/I to a function on M");
  lift->add_option("file", file, "instance file")->required();
  lift->add_option("family", name, "family in a quotient")->required();

  std::string eps = "1/10";
  std::string tag = "right";
  auto* integrate = app.add_subcommand("integrate", "Riemann-Stieltjes sum of a family");
  integrate->add_option("file", file, "instance file")->required();
  integrate->add_option("family", name, "family")->required();
  integrate->add_option("--eps", eps, "grid spacing, a positive rational")->capture_default_str();
  integrate->add_option("--tag", tag, "tag point of each cell: left or right")->capture_default_str();

  int max_size = 4;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check", "run a property suite (or all)");
  check->add_option("suite", name, "suite name or all")->required();
  check->add_option("--max-size", max_size, "size bound for exhaustive suites (1 to 4)")->capture_default_str();
  check->add_option("--seed", seed, "seed for randomized suites")->capture_default_str();

  std::string format;
  auto* emit = app.add_subcommand("emit", "write an instance file (or one object) as json, dot or dsl");
  emit->add_option("format", format, "json, dot or dsl")->required();
  emit->add_option("file", file, "instance file")->required();
  emit->add_option("object", name, "object name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*quasipoints) return cmd_quasipoints(file, name);
    if (*observable) return cmd_observable(file, name);
    if (*spectrum_cmd) return cmd_spectrum(file, name);
    if (*decompose_cmd) return cmd_decompose(file, name);
    if (*quotient_cmd) return cmd_quotient(file, name, second);
    if (*lift) return cmd_lift(file, name);
    if (*integrate) return cmd_integrate(file, name, eps, tag);
    if (*check) return cmd_check(name, max_size, seed);
    if (*emit) return cmd_emit(format, file, name);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedStructure& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidFamily& e) {
    std::cerr << "invalid family: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
