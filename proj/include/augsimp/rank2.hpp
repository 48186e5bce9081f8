#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "augsimp/aug.hpp"
#include "augsimp/matrix.hpp"
#include "augsimp/monoid.hpp"

namespace augsimp {

// One ordered pair per graph edge, i < j.
using DifferenceSet = std::vector<std::pair<int, int>>;

DifferenceSet difference_set(const SimpleGraph& g);

// Pairs-by-blocks matrix of row differences of the incidence matrix:
// row (i,j) is row_i - row_j. Throws std::out_of_range on bad indices.
RationalMatrix signed_incidence(const RationalMatrix& inc, const DifferenceSet& d);

enum class GroupEntry { zero, one, g };

// Coordinates of a rank-two class: kernels as the block containing point 1,
// image pairs, and the structure matrix over {0, 1_G, g}.
struct ReesData {
  int n = 0;
  int group_order = 1;  // 1 or 2
  std::vector<std::vector<int>> n1_kernels;      // B_k, each contains point 1
  std::vector<std::vector<int>> n1_complements;  // the other block per kernel
  std::vector<std::pair<int, int>> n2_images;    // (i, j) with i < j
  std::vector<std::vector<GroupEntry>> p;        // |n2| rows by |n1| columns
};

// Kernel columns are ordered by membership pattern: a kernel whose block
// B_k contains the earliest point the other lacks sorts first (this is what
// makes the golden matrices below reproducible). Image rows sort ascending.
ReesData sandwich_data(const FiniteMonoid& m, const JClassInfo& j);

// 0 -> 0, 1_G -> 1, g -> -1, with N2/N1 labels attached.
RationalMatrix signed_sandwich(const ReesData& r);

struct hypothesis_error : std::runtime_error {
  std::string kind;  // no-constant | no-unique-minimal | rank-not-2
  hypothesis_error(std::string k, const std::string& msg)
      : std::runtime_error(msg), kind(std::move(k)) {}
};

struct Rank2Result {
  ReesData data;
  RationalMatrix pprime;
  int pprime_rank = 0;
  int n = 0;
  Verdict verdict = Verdict::undetermined;
};

// The rank test: simple exactly when the signed structure matrix has rank
// n-1. Hypothesis violations throw hypothesis_error (or group_input_error).
Rank2Result rank2_verdict(const FiniteMonoid& m);

// Property-test plumbing: uniform-ish random spanning tree (edge shuffle
// plus union-find), and a random disconnected graph with exactly n-1 edges
// (nullopt when no such graph exists, i.e. n <= 3).
SimpleGraph random_spanning_tree(const SimpleGraph& g, std::mt19937& rng);
std::optional<SimpleGraph> random_disconnected_graph(int n, std::mt19937& rng);

std::string group_entry_str(GroupEntry e);

}  // namespace augsimp
