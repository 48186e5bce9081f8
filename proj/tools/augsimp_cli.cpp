#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "augsimp/aug.hpp"
#include "augsimp/construct.hpp"
#include "augsimp/io.hpp"
#include "augsimp/monoid.hpp"
#include "augsimp/rank2.hpp"
#include "augsimp/selftest.hpp"
#include "json.hpp"

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kDefaultCap = 1000000;

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int fail(const std::string& kind, const std::string& message, int line, int column,
         int code) {
  emit(augsimp::error_json(kind, message, line, column));
  return code;
}

std::size_t resolve_cap(std::size_t flag_cap) {
  if (flag_cap != 0) return flag_cap;
  if (const char* env = std::getenv("AUGSIMP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw augsimp::parse_error("AUGSIMP_CAP must be a positive integer", 0, 0);
  }
  return kDefaultCap;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw augsimp::parse_error("cannot open file: " + path, 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw augsimp::parse_error("cannot write file: " + path, 0, 0);
  out << text;
}

void deliver(const std::string& out_path, const ordered_json& j) {
  if (out_path.empty()) {
    emit(j);
  } else {
    write_text(out_path, j.dump(2) + "\n");
  }
}

augsimp::FiniteMonoid closure_of(const augsimp::MonoidFile& mf, std::size_t cap) {
  std::vector<augsimp::Transformation> gens = mf.generators;
  return augsimp::generate_closure(mf.n, gens, cap);
}

augsimp::SymbolicFamily symbolic_of(const augsimp::SystemFile& sf, std::size_t cap) {
  return std::get<augsimp::SymbolicFamily>(
      augsimp::assemble_monoid(sf.partitions, sf.images, false, cap));
}

int run_analyze(const std::string& path, std::size_t flag_cap, bool enumerate,
                const std::string& out_path) {
  std::size_t cap = resolve_cap(flag_cap);
  std::string content = slurp(path);
  std::istringstream in(content);
  augsimp::SimplicityReport rep;
  // Past this point the file is well-formed; semantic rejections (an
  // incompatible or irregular system) are analysis failures, not input ones.
  try {
    if (augsimp::detect_file_kind(content) == augsimp::FileKind::monoid) {
      rep = augsimp::simplicity_report(closure_of(augsimp::read_monoid_file(in), cap));
    } else {
      auto sf = augsimp::read_system_file(in);
      if (enumerate) {
        auto m = std::get<augsimp::FiniteMonoid>(
            augsimp::assemble_monoid(sf.partitions, sf.images, true, cap));
        rep = augsimp::simplicity_report(m);
      } else {
        rep = augsimp::analyze_symbolic(symbolic_of(sf, cap));
      }
    }
  } catch (const std::invalid_argument& e) {
    return fail("invalid-system", e.what(), 0, 0, 1);
  }
  deliver(out_path, augsimp::report_json(rep));
  return 0;
}

int run_rank2(const std::string& path, std::size_t flag_cap, const std::string& out_path) {
  std::size_t cap = resolve_cap(flag_cap);
  std::string content = slurp(path);
  if (augsimp::detect_file_kind(content) != augsimp::FileKind::monoid)
    throw augsimp::parse_error("rank2 expects a monoid file", 0, 0);
  std::istringstream in(content);
  auto mf = augsimp::read_monoid_file(in);
  try {
    auto res = augsimp::rank2_verdict(closure_of(mf, cap));
    deliver(out_path, augsimp::rank2_json(res));
  } catch (const std::invalid_argument& e) {
    return fail("invalid-system", e.what(), 0, 0, 1);
  }
  return 0;
}

std::string system_text(const augsimp::BuiltSystem& sys) {
  std::ostringstream out;
  out << "# family " << sys.variant;
  if (!sys.note.empty()) out << ", closing assignment " << sys.note;
  out << "\n";
  augsimp::write_system_file(out, sys.images, sys.partitions);
  return out.str();
}

int run_construct(const std::string& family, int r, const std::string& variant,
                  const std::vector<int>& selection, const std::string& example,
                  bool enumerate, std::size_t flag_cap, const std::string& out_path) {
  augsimp::BuiltSystem sys;
  if (family == "r3") {
    sys = augsimp::build_r3(selection.empty() ? std::vector<int>{1, 2, 3, 4} : selection);
  } else if (family == "r4") {
    sys = augsimp::build_r4(example);
  } else if (family == "general") {
    if (r < 5) throw augsimp::parse_error("--family general needs --r at least 5", 0, 0);
    sys = augsimp::build_family(r, variant);
  } else {
    throw augsimp::parse_error("--family must be r3, r4, or general", 0, 0);
  }
  if (out_path.empty()) {
    std::cout << system_text(sys);
    return 0;
  }
  write_text(out_path, system_text(sys));
  std::size_t cap = resolve_cap(flag_cap);
  augsimp::SimplicityReport rep;
  if (enumerate) {
    auto m = std::get<augsimp::FiniteMonoid>(
        augsimp::assemble_monoid(sys.partitions, sys.images, true, cap));
    rep = augsimp::simplicity_report(m);
  } else {
    auto sym = std::get<augsimp::SymbolicFamily>(
        augsimp::assemble_monoid(sys.partitions, sys.images, false, cap));
    rep = augsimp::analyze_symbolic(sym);
  }
  emit(augsimp::report_json(rep));
  return 0;
}

int run_oracle(const std::string& falsify_path, const std::string& admissible_path,
               int trials, unsigned seed, std::size_t flag_cap,
               const std::string& out_path) {
  if (falsify_path.empty() == admissible_path.empty())
    throw augsimp::parse_error(
        "oracle needs exactly one of --falsify or --enumerate-admissible", 0, 0);
  ordered_json j;
  if (!falsify_path.empty()) {
    std::size_t cap = resolve_cap(flag_cap);
    std::string content = slurp(falsify_path);
    if (augsimp::detect_file_kind(content) != augsimp::FileKind::monoid)
      throw augsimp::parse_error("--falsify expects a monoid file", 0, 0);
    std::istringstream in(content);
    auto m = closure_of(augsimp::read_monoid_file(in), cap);
    auto witness = augsimp::cyclic_submodule_falsifier(m, trials, seed);
    ordered_json f;
    f["found"] = witness.has_value();
    f["trials"] = trials;
    f["seed"] = seed;
    if (witness) {
      ordered_json vec = ordered_json::array();
      for (const auto& q : witness->vec) vec.push_back(augsimp::rational_str(q));
      f["vector"] = vec;
      f["span_dim"] = witness->span_basis.size();
    }
    j["falsifier"] = f;
  } else {
    std::string content = slurp(admissible_path);
    if (augsimp::detect_file_kind(content) != augsimp::FileKind::system)
      throw augsimp::parse_error("--enumerate-admissible expects a system file", 0, 0);
    std::istringstream in(content);
    auto sf = augsimp::read_system_file(in);
    auto found = augsimp::enumerate_admissible_partitions(sf.images);
    ordered_json list = ordered_json::array();
    for (const auto& p : found) list.push_back(p.blocks);
    j["admissible"] = {{"count", found.size()}, {"partitions", list}};
  }
  deliver(out_path, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"augmentation submodule analyzer"};
  app.require_subcommand(1);

  std::string path, out_path;
  std::size_t flag_cap = 0;
  bool enumerate = false;

  auto* analyze = app.add_subcommand(
      "analyze", "five-condition simplicity report for a monoid or system file");
  analyze->add_option("file", path, "monoid or system file")->required();
  analyze->add_option("--cap", flag_cap, "closure size cap");
  analyze->add_flag("--enumerate", enumerate,
                    "materialize the grid monoid instead of the symbolic analysis");
  analyze->add_option("--out", out_path, "write the JSON report here instead of stdout");

  auto* rank2 = app.add_subcommand("rank2", "signed structure-matrix rank test");
  rank2->add_option("file", path, "monoid file")->required();
  rank2->add_option("--cap", flag_cap, "closure size cap");
  rank2->add_option("--out", out_path, "write the JSON report here instead of stdout");

  std::string family, variant = "B", example = "simple";
  std::vector<int> selection;
  int r = 0;
  auto* construct = app.add_subcommand("construct", "build a documented family");
  construct->add_option("--family", family, "r3, r4, or general")->required();
  construct->add_option("--r", r, "rank for --family general (at least 5)");
  construct->add_option("--variant", variant, "B or Bprime (general)");
  construct->add_option("--selection", selection, "partition items 1-4 (r3)")
      ->delimiter(',');
  construct->add_option("--example", example, "simple or nonsimple (r4)");
  construct->add_flag("--enumerate", enumerate, "analyze the materialized grid monoid");
  construct->add_option("--out", out_path,
                        "write the system file here and print its analysis");
  construct->add_option("--cap", flag_cap, "closure size cap for --enumerate");

  std::string falsify_path, admissible_path;
  int trials = 100;
  unsigned seed = 12345;
  auto* oracle = app.add_subcommand("oracle", "independent cross-checks");
  oracle->add_option("--falsify", falsify_path,
                     "search for a proper-submodule witness in this monoid file");
  oracle->add_option("--enumerate-admissible", admissible_path,
                     "list all compatible partitions for this system file");
  oracle->add_option("--trials", trials, "falsifier trial count");
  oracle->add_option("--seed", seed, "falsifier seed");
  oracle->add_option("--cap", flag_cap, "closure size cap");
  oracle->add_option("--out", out_path, "write the JSON report here instead of stdout");

  int criterion = 0;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--criterion", criterion, "run one criterion (1-9; 0 runs all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("cli", e.what(), 0, 0, 2);
  }

  try {
    if (analyze->parsed()) return run_analyze(path, flag_cap, enumerate, out_path);
    if (rank2->parsed()) return run_rank2(path, flag_cap, out_path);
    if (construct->parsed())
      return run_construct(family, r, variant, selection, example, enumerate, flag_cap,
                           out_path);
    if (oracle->parsed())
      return run_oracle(falsify_path, admissible_path, trials, seed, flag_cap, out_path);
    if (selftest->parsed()) {
      if (criterion < 0 || criterion > 9)
        return fail("cli", "criterion must be between 1 and 9 (0 runs all)", 0, 0, 2);
      return augsimp::run_acceptance(std::cout, criterion);
    }
  } catch (const augsimp::parse_error& e) {
    return fail("parse", e.what(), e.line, e.column, 2);
  } catch (const augsimp::closure_overflow& e) {
    return fail("cap-overflow", e.what(), 0, 0, 1);
  } catch (const augsimp::hypothesis_error& e) {
    return fail(e.kind, e.what(), 0, 0, 1);
  } catch (const augsimp::group_input_error& e) {
    return fail("group-input", e.what(), 0, 0, 1);
  } catch (const augsimp::closure_violation& e) {
    return fail("closure-violation", e.what(), 0, 0, 1);
  } catch (const std::invalid_argument& e) {
    return fail("invalid-input", e.what(), 0, 0, 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 0, 0, 1);
  }
  return 0;
}
