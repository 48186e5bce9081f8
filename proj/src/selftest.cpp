#include "augsimp/selftest.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "augsimp/aug.hpp"
#include "augsimp/construct.hpp"
#include "augsimp/corpus.hpp"
#include "augsimp/rank2.hpp"

namespace augsimp {

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail.push_back("violated: " + what);
    }
  }
  void note(const std::string& line) { detail.push_back(line); }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string map_text(const Transformation& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.images.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(t.images[i]);
  }
  return s + "]";
}

std::string gens_text(const FiniteMonoid& m) {
  std::string s;
  for (const auto& g : m.generators) {
    if (!s.empty()) s += ' ';
    s += map_text(g);
  }
  return s;
}

const std::vector<FiniteMonoid>& corpus() {
  static const std::vector<FiniteMonoid> c = hypothesis_corpus(12345, 250, 6, 500);
  return c;
}

SymbolicFamily symbolic_of(const BuiltSystem& sys) {
  return std::get<SymbolicFamily>(assemble_monoid(sys.partitions, sys.images, false, 1u << 20));
}

FiniteMonoid enumerated_of(const BuiltSystem& sys) {
  return std::get<FiniteMonoid>(assemble_monoid(sys.partitions, sys.images, true, 1u << 20));
}

Criterion criterion1() {
  Criterion c;
  const std::vector<std::vector<int>> selections = {
      {1, 2, 3, 4}, {1, 2, 3}, {2, 3, 4}, {1, 3, 4}, {1, 2, 4}};
  for (const auto& sel : selections) {
    auto t0 = Clock::now();
    auto sys = build_r3(sel);
    auto rep = simplicity_report(enumerated_of(sys));
    auto srep = analyze_symbolic(symbolic_of(sys));
    double dt = ms_since(t0);
    std::string tag = "selection {";
    for (std::size_t i = 0; i < sel.size(); ++i)
      tag += (i ? "," : "") + std::to_string(sel[i]);
    tag += "}";
    c.check(rep.incidence_rank == 6, tag + ": incidence rank 6");
    c.check(rep.verdict == Verdict::simple, tag + ": verdict simple");
    for (int k = 0; k < 5; ++k)
      c.check(rep.conditions[k].status == CondStatus::pass,
              tag + ": condition " + std::to_string(k + 1) + " passes");
    c.check(is_connected(rep.graph), tag + ": graph connected");
    c.check(rep.graph.edges.size() < 15, tag + ": graph not complete");
    c.check(srep.verdict == rep.verdict && srep.incidence_rank == rep.incidence_rank,
            tag + ": symbolic analysis agrees");
    c.check(dt < 1000.0, tag + ": under one second");
    std::ostringstream line;
    line << tag << ": rank 6, " << rep.graph.edges.size() << " edges, simple ("
         << (int)dt << " ms)";
    c.note(line.str());
  }
  return c;
}

Criterion criterion2() {
  Criterion c;
  auto t0 = Clock::now();
  auto sys = build_r3({1, 2, 3, 4});
  auto found = enumerate_admissible_partitions(sys.images);
  double dt = ms_since(t0);
  c.check(stirling_partition_count(6, 3) == 90, "90 candidate partitions");
  c.check(found.size() == 4, "exactly four admissible partitions");
  std::set<std::vector<std::vector<int>>> got;
  for (const auto& p : found) got.insert(p.blocks);
  std::set<std::vector<std::vector<int>>> expect;
  for (const auto& p : sys.partitions) expect.insert(p.blocks);
  c.check(got == expect, "the admissible partitions are the four selection items");
  c.check(dt < 1000.0, "under one second");
  std::ostringstream line;
  line << "90 candidates, 4 admissible, matching the builder's items (" << (int)dt
       << " ms)";
  c.note(line.str());
  return c;
}

Criterion criterion3() {
  Criterion c;
  auto t0 = Clock::now();
  auto simple = build_r4("simple");
  auto rep_simple = analyze_symbolic(symbolic_of(simple));
  auto nons = build_r4("nonsimple");
  auto rep_nons = analyze_symbolic(symbolic_of(nons));
  double rank_ms = ms_since(t0);
  c.check(rep_simple.incidence_rank == 12, "first family: incidence rank 12");
  c.check(rep_simple.verdict == Verdict::simple, "first family: verdict simple");
  c.check(rep_nons.incidence_rank == 10, "second family: incidence rank 10 (pinned)");
  c.check(rep_nons.verdict == Verdict::not_simple, "second family: verdict not-simple");
  c.check(rank_ms < 1000.0, "ranks under one second");

  auto enu_rep = simplicity_report(enumerated_of(simple));
  c.check(enu_rep.verdict == Verdict::simple && enu_rep.incidence_rank == 12,
          "first family: enumerated 493-element monoid agrees");

  auto t1 = Clock::now();
  c.check(stirling_partition_count(12, 4) == 611501, "611,501 candidate partitions");
  auto found = enumerate_admissible_partitions(simple.images);
  double enum_ms = ms_since(t1);
  c.check(found.size() == 11, "exactly eleven admissible partitions");
  std::set<std::vector<std::vector<int>>> got;
  for (const auto& p : found) got.insert(p.blocks);
  const std::vector<std::vector<std::vector<int>>> seven = {
      {{1, 2, 3, 4}, {7, 8, 9, 10}, {5, 12}, {11, 6}},
      {{1, 2, 3, 4, 9}, {5, 10}, {7, 11}, {6, 8, 12}},
      {{2, 5, 8, 11}, {1, 6, 9}, {3, 7, 12}, {4, 10}},
      {{2, 5, 8, 11}, {1, 7}, {3, 6, 10}, {4, 9, 12}},
      {{2, 5, 8, 11}, {1, 7}, {3, 6, 9, 12}, {4, 10}},
      {{2, 6, 10}, {5, 1, 9}, {8, 4, 12}, {11, 3, 7}},
      {{2, 7, 12}, {5, 3, 10}, {8, 1, 6}, {11, 4, 9}},
  };
  int present = 0;
  for (const auto& k : seven) present += got.count(make_partition(12, k).blocks);
  c.check(present == 7, "all seven published partitions are admissible");
  c.check(enum_ms < 60000.0, "exhaustive enumeration under sixty seconds");
  std::ostringstream line;
  line << "ranks 12 and 10; 611,501 candidates, 11 admissible, 7 published hits ("
       << (int)enum_ms << " ms)";
  c.note(line.str());
  return c;
}

Criterion criterion4() {
  Criterion c;
  for (int r = 5; r <= 8; ++r) {
    auto t0 = Clock::now();
    const int n = r * (r - 1);
    auto closing = build_family(r, "B");
    auto rep = analyze_symbolic(symbolic_of(closing));
    c.check(rep.incidence_rank == n,
            "r=" + std::to_string(r) + ": closing variant has full rank " +
                std::to_string(n));
    c.check(rep.verdict == Verdict::simple,
            "r=" + std::to_string(r) + ": closing variant simple");
    c.check(rep.wperp_basis.empty(),
            "r=" + std::to_string(r) + ": zero orthogonal complement");
    c.check(is_connected(rep.graph), "r=" + std::to_string(r) + ": graph connected");
    c.check((int)rep.graph.edges.size() < n * (n - 1) / 2,
            "r=" + std::to_string(r) + ": graph not complete");

    auto open = build_family(r, "Bprime");
    auto orep = analyze_symbolic(symbolic_of(open));
    auto w = witness_vector(r);
    c.check(verify_witness(w, open.partitions),
            "r=" + std::to_string(r) + ": witness sums to zero on every block");
    c.check(!orep.wperp_basis.empty() && in_span(w.coefficients, orep.wperp_basis),
            "r=" + std::to_string(r) + ": witness lies in the orthogonal complement");
    c.check(orep.verdict == Verdict::not_simple,
            "r=" + std::to_string(r) + ": witnessed variant not-simple");
    double dt = ms_since(t0);
    c.check(dt < 5000.0, "r=" + std::to_string(r) + ": under five seconds");
    std::ostringstream line;
    line << "r=" << r << ": closing rank " << rep.incidence_rank << " (simple), open rank "
         << orep.incidence_rank << " with verified witness, rule " << w.rule << " ("
         << (int)dt << " ms)";
    c.note(line.str());
    if (r % 2 == 0) {
      auto flat = witness_vector_parity(r);
      bool flat_ok = verify_witness(flat, open.partitions);
      c.check(!flat_ok,
              "r=" + std::to_string(r) +
                  ": the flat alternating rule with joint weight -1 and connector "
                  "weight -1/2 must keep failing");
      c.note("r=" + std::to_string(r) +
             ": flat alternating rule with -1/-1/2 weights leaves nonzero block sums; "
             "the balanced color rule is used instead (recorded deviation)");
    }
  }
  return c;
}

Criterion criterion5() {
  Criterion c;
  auto t0 = Clock::now();
  const auto& cs = corpus();
  c.check(cs.size() >= 200, "at least 200 corpus instances");
  int disagreements = 0;
  int bicond_violations = 0;
  int corrected_violations = 0;
  std::vector<std::string> examples;
  for (const auto& m : cs) {
    auto rep = simplicity_report(m);
    auto r2 = rank2_verdict(m);
    if (rep.verdict != r2.verdict) {
      ++disagreements;
      if (examples.size() < 4)
        examples.push_back("verdict disagreement on " + gens_text(m));
    }
    bool rank_ok = r2.pprime_rank == m.n - 1;
    bool inc_full = rep.incidence_rank == m.n;
    if (rank_ok != inc_full) {
      ++bicond_violations;
      if (examples.size() < 4) {
        std::ostringstream ex;
        ex << "rank gap on n=" << m.n << ", |M|=" << m.size() << ", gens " << gens_text(m)
           << ": signed rank " << r2.pprime_rank << ", incidence rank "
           << rep.incidence_rank << ", graph "
           << (is_connected(rep.graph) ? "connected" : "disconnected");
        examples.push_back(ex.str());
      }
    }
    if (rank_ok != (inc_full && is_connected(rep.graph))) ++corrected_violations;
  }
  double dt = ms_since(t0);
  std::ostringstream line;
  line << cs.size() << " instances: " << disagreements << " verdict disagreements, "
       << bicond_violations << " violations of [signed rank = n-1 <=> incidence rank = n] ("
       << (int)dt << " ms)";
  c.note(line.str());
  c.check(disagreements == 0, "signed-rank verdict agrees with the five-condition report");
  c.check(bicond_violations == 0,
          "signed rank n-1 coincides with full incidence rank on every instance");
  for (const auto& ex : examples) c.note(ex);
  if (bicond_violations > 0)
    c.note("the stated rank law omits graph connectivity; it fails whenever the rank "
           "condition passes while the graph is disconnected");
  c.note("corrected law [signed rank = n-1 <=> incidence rank = n AND graph connected]: " +
         std::to_string(corrected_violations) + " violations");
  c.check(corrected_violations == 0, "the connectivity-corrected law holds throughout");
  c.check(dt < 60000.0, "under sixty seconds");
  return c;
}

Criterion criterion6() {
  Criterion c;
  std::mt19937 rng(777);
  int tree_checks = 0, noncon_checks = 0;

  auto run_system = [&](const SetSystem& sys, const SimpleGraph& graph, int n,
                        const std::string& tag) {
    auto inc = incidence_matrix(sys);
    int base_rank = rank(inc);
    if (is_connected(graph) && n >= 2) {
      for (int t = 0; t < 5; ++t) {
        auto tree = random_spanning_tree(graph, rng);
        int srk = rank(signed_incidence(inc, difference_set(tree)));
        c.check((base_rank == n) == (srk == n - 1),
                tag + ": tree law (rank " + std::to_string(base_rank) + " vs signed " +
                    std::to_string(srk) + ")");
        ++tree_checks;
      }
    }
    for (int t = 0; t < 5; ++t) {
      auto g = random_disconnected_graph(n, rng);
      if (!g) break;
      int srk = rank(signed_incidence(inc, difference_set(*g)));
      c.check(srk < n - 1, tag + ": disconnected law (signed rank " + std::to_string(srk) +
                               " for n " + std::to_string(n) + ")");
      ++noncon_checks;
    }
  };

  for (const auto& sel :
       std::vector<std::vector<int>>{{1, 2, 3, 4}, {1, 2, 3}, {2, 3, 4}, {1, 3, 4}, {1, 2, 4}}) {
    auto sys = build_r3(sel);
    auto sym = symbolic_of(sys);
    run_system(sym.block_system(), sym.gamma(), sym.n, "six-point system");
  }
  for (const char* ex : {"simple", "nonsimple"}) {
    auto sys = build_r4(ex);
    auto sym = symbolic_of(sys);
    run_system(sym.block_system(), sym.gamma(), sym.n, std::string("twelve-point ") + ex);
  }
  for (int r = 5; r <= 8; ++r)
    for (const char* v : {"B", "Bprime"}) {
      auto sys = build_family(r, v);
      auto sym = symbolic_of(sys);
      run_system(sym.block_system(), sym.gamma(), sym.n,
                 "cycle r=" + std::to_string(r) + " " + v);
    }
  for (const auto& m : corpus()) {
    auto rep = simplicity_report(m);
    run_system(rep.system, rep.graph, m.n, "corpus n=" + std::to_string(m.n));
  }
  std::ostringstream line;
  line << tree_checks << " spanning-tree checks and " << noncon_checks
       << " disconnected-graph checks, zero violations";
  c.note(line.str());
  c.check(tree_checks >= 5 && noncon_checks >= 5, "enough random graphs were exercised");
  return c;
}

Criterion criterion7() {
  Criterion c;
  int instances = 0, columns = 0;
  for (const auto& m : corpus()) {
    auto rep = simplicity_report(m);
    auto r2 = rank2_verdict(m);
    auto d = difference_set(rep.graph);
    if (d != r2.data.n2_images) {
      c.check(false, "graph edges equal the image pairs (n=" + std::to_string(m.n) + ")");
      continue;
    }
    auto signed_inc = signed_incidence(incidence_matrix(rep.system), d);
    auto col_of = [&](const std::vector<int>& block) {
      for (std::size_t b = 0; b < rep.system.blocks.size(); ++b)
        if (rep.system.blocks[b] == block) return (int)b;
      return -1;
    };
    ++instances;
    for (std::size_t k = 0; k < r2.data.n1_kernels.size(); ++k) {
      int kc = col_of(r2.data.n1_kernels[k]);
      int cc = col_of(r2.data.n1_complements[k]);
      if (kc < 0 || cc < 0) {
        c.check(false, "kernel blocks appear in the block system");
        continue;
      }
      ++columns;
      for (int row = 0; row < r2.pprime.rows; ++row) {
        c.check(signed_inc.at(row, kc) == r2.pprime.at(row, (int)k),
                "signed matrix column equals the matching signed incidence column");
        c.check(signed_inc.at(row, cc) == -r2.pprime.at(row, (int)k),
                "complement column is the exact negation");
      }
    }
  }
  std::ostringstream line;
  line << instances << " instances, " << columns << " kernel columns matched entrywise";
  c.note(line.str());
  c.check(instances > 0, "corpus produced rank-2 instances");
  return c;
}

Criterion criterion8() {
  Criterion c;
  int found_on_not_simple = 0, not_simple_total = 0;
  int found_on_simple = 0, simple_total = 0;

  auto probe = [&](const FiniteMonoid& m, Verdict v, const std::string& tag) {
    auto witness = cyclic_submodule_falsifier(m, 100, 2024);
    if (v == Verdict::not_simple) {
      ++not_simple_total;
      if (witness)
        ++found_on_not_simple;
      else
        c.check(false, tag + ": falsifier must find a witness on a not-simple verdict");
    } else if (v == Verdict::simple) {
      ++simple_total;
      if (witness) {
        ++found_on_simple;
        c.check(false, tag + ": falsifier found a witness despite a simple verdict");
      }
    }
  };

  for (const auto& sel :
       std::vector<std::vector<int>>{{1, 2, 3, 4}, {1, 2, 3}, {2, 3, 4}, {1, 3, 4}, {1, 2, 4}}) {
    auto m = enumerated_of(build_r3(sel));
    probe(m, simplicity_report(m).verdict, "six-point selection");
  }
  for (const char* ex : {"simple", "nonsimple"}) {
    auto m = enumerated_of(build_r4(ex));
    probe(m, simplicity_report(m).verdict, std::string("twelve-point ") + ex);
  }
  for (const auto& m : corpus()) probe(m, simplicity_report(m).verdict, "corpus instance");

  std::ostringstream line;
  line << "witness found on " << found_on_not_simple << "/" << not_simple_total
       << " not-simple verdicts; none on " << simple_total << " simple verdicts";
  c.note(line.str());
  c.check(not_simple_total > 0 && simple_total > 0, "both verdicts appear in the pool");
  return c;
}

Criterion criterion9() {
  Criterion c;
  for (int r : {5, 7}) {
    bool ok = diagonal_identity_holds(r);
    c.check(ok, "r=" + std::to_string(r) + ": matched diagonal blocks across rotations");
    if (ok)
      c.note("r=" + std::to_string(r) +
             ": every applicable position pairs one joint block and one two-connector "
             "block over the same diagonal");
  }
  return c;
}

}  // namespace

int run_acceptance(std::ostream& out, int only) {
  struct Entry {
    int id;
    const char* title;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {1, "six-point family: full rank, connected, simple", criterion1},
      {2, "six-point classification: exactly four admissible partitions", criterion2},
      {3, "twelve-point families and exhaustive admissibility", criterion3},
      {4, "cycle families r=5..8: closing vs witnessed variants", criterion4},
      {5, "signed-rank law vs five-condition report on the corpus", criterion5},
      {6, "spanning-tree and disconnected-graph rank laws", criterion6},
      {7, "signed matrix columns embed in the signed incidence matrix", criterion7},
      {8, "cyclic-submodule falsifier agrees with every verdict", criterion8},
      {9, "rotated diagonal-block identity (r = 5, 7)", criterion9},
  };
  int status = 0;
  int ran = 0, passed = 0;
  for (const auto& e : entries) {
    if (only != 0 && only != e.id) continue;
    auto t0 = Clock::now();
    Criterion c = e.run();
    double dt = ms_since(t0);
    ++ran;
    if (c.pass) ++passed;
    out << "criterion " << e.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << e.title
        << " (" << (int)dt << " ms)\n";
    for (const auto& line : c.detail) out << "    " << line << "\n";
    if (!c.pass) status = 1;
  }
  if (only == 0) out << "result: " << passed << "/" << ran << " criteria pass\n";
  return status;
}

}  // namespace augsimp
