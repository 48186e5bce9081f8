#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "augsimp/matrix.hpp"
#include "augsimp/monoid.hpp"

namespace augsimp {

// Family of point subsets of {1..n}, deduplicated, sorted lexicographically
// by content. Each block remembers where it came from.
struct SetSystem {
  int n = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<std::string> provenance;  // parallel to blocks
};

struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted
};

enum class CondStatus { pass, fail, undetermined, not_evaluated };
enum class Verdict { simple, not_simple, undetermined };
std::string to_string(CondStatus s);
std::string to_string(Verdict v);

struct ConditionResult {
  CondStatus status = CondStatus::not_evaluated;
  std::string evidence;
};

struct SimplicityReport {
  Verdict verdict = Verdict::undetermined;
  std::array<ConditionResult, 5> conditions;  // index k holds condition k+1
  std::optional<JClassInfo> jclass;
  int incidence_rank = -1;  // -1 when not evaluated
  std::vector<std::vector<Rational>> wperp_basis;
  SetSystem system;      // populated when conditions 3-5 were evaluated
  SimpleGraph graph;     // likewise
  int n = 0;
};

// Kernel classes f^{-1}(f(w)) of the idempotents of J, over all points w.
// Throws std::invalid_argument when J has no idempotents.
SetSystem set_system(const FiniteMonoid& m, const JClassInfo& j);

// Points-by-blocks 0/1 matrix with labels.
RationalMatrix incidence_matrix(const SetSystem& s);

// Union of cliques on the image sets of the idempotents of J.
SimpleGraph gamma_graph(const FiniteMonoid& m, const JClassInfo& j);

bool is_connected(const SimpleGraph& g);
std::vector<std::vector<int>> components(const SimpleGraph& g);

// Basis of {v : sum of v over every block is zero}.
std::vector<std::vector<Rational>> wperp(const SetSystem& s);

// One-dimensional module, or a doubly transitive point stabilizer group.
ConditionResult check_condition3(const FiniteMonoid& m, const JClassInfo& j);

// The five-condition test. Throws group_input_error when the monoid is a
// group; short-circuits conditions 3-5 when 1 or 2 fails.
SimplicityReport simplicity_report(const FiniteMonoid& m);

// Size bound that every simple verdict must satisfy: |Omega| = r for a
// one-partition system, |Omega| < r * (number of partitions) otherwise.
bool check_bound_B(std::size_t partition_count, int r, int n, bool simple);

struct FalsifierWitness {
  std::vector<Rational> vec;                      // the seeding vector
  std::vector<std::vector<Rational>> span_basis;  // basis of span{m v}
};

// Independent non-simplicity oracle: searches for a nonzero zero-sum vector
// whose orbit span under the monoid action misses part of the zero-sum
// space. A hit certifies non-simplicity; no hit proves nothing.
std::optional<FalsifierWitness> cyclic_submodule_falsifier(const FiniteMonoid& m,
                                                           int trials,
                                                           std::uint32_t seed);

// The linearized point action: w-th coordinate of the result accumulates
// every v-coordinate that m sends to w.
std::vector<Rational> act(const Transformation& m, const std::vector<Rational>& v);

std::string block_str(const std::vector<int>& block);

}  // namespace augsimp
