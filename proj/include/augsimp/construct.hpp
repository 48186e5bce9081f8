#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "augsimp/aug.hpp"
#include "augsimp/matrix.hpp"
#include "augsimp/monoid.hpp"

namespace augsimp {

// Partition of {1..n}: disjoint nonempty blocks covering everything. Blocks
// and their contents are kept sorted ascending.
struct SetPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;
  bool operator==(const SetPartition&) const = default;
};

// Validates and canonicalizes; throws std::invalid_argument on overlap,
// out-of-range points, or uncovered points.
SetPartition make_partition(int n, std::vector<std::vector<int>> blocks);

// Family of r-element subsets of {1..n}.
struct ImageSystem {
  int n = 0;
  int r = 0;
  std::vector<std::vector<int>> sets;  // each sorted ascending
};

ImageSystem make_image_system(int n, int r, std::vector<std::vector<int>> sets);

// Point layout for the two-per-rank vertex families: r joint points, r
// connector points, and r*(r-3) interior points arranged in r groups.
struct OmegaLabels {
  int r = 0;
  int n() const { return r * (r - 1); }
  int joint(int i) const { return i; }                  // 1..r
  int penultimate(int i) const { return r + i; }        // 1..r
  int colored(int i, int j) const {                     // i in 1..r, j in 1..r-3
    return 2 * r + (i - 1) * (r - 3) + j;
  }
  std::string name(int point) const;
};

// Compatibility of each (partition, image set) pair: either the set lies in
// one block, or it meets every block exactly once.
struct CompatibilityResult {
  bool ok = true;
  std::vector<std::pair<int, int>> violations;  // (partition index, image index)
};

CompatibilityResult jmin_compatible(const std::vector<SetPartition>& parts,
                                    const ImageSystem& images);

// Structure matrix of a block/image system: cells[j][i] is nullopt when
// image j lies inside one block of partition i, else the matching map
// (entry k = index of the block holding the k-th smallest image point).
struct SandwichMatrix {
  int n1 = 0, n2 = 0;
  std::vector<std::vector<std::optional<std::vector<int>>>> cells;
};

SandwichMatrix rees_sandwich_from(const std::vector<SetPartition>& parts,
                                  const ImageSystem& images);
bool sandwich_regular(const SandwichMatrix& p);

// Grid coordinates: partition index, block-to-image-point assignment, image
// index. The assignment g maps block k of partition i to point g[k] of set j.
struct ReesTriple {
  int i = 0;
  std::vector<int> g;
  int j = 0;
  bool operator==(const ReesTriple&) const = default;
};

// Grid product: absorbs to nothing (nullopt) across a zero cell, otherwise
// chains x's assignment through the cell map into y's assignment. Matches
// transformation composition in the order "x acts first, then y".
std::optional<ReesTriple> rees_multiply(const ReesTriple& x, const ReesTriple& y,
                                        const SandwichMatrix& p);

Transformation triple_transformation(const ReesTriple& t,
                                     const std::vector<SetPartition>& parts,
                                     const ImageSystem& images);

struct closure_violation : std::runtime_error {
  Transformation product;
  closure_violation(const Transformation& p, const std::string& msg)
      : std::runtime_error(msg), product(p) {}
};

// Everything the five-condition analysis needs from a grid family, without
// materializing the n1*n2*r! grid elements.
struct SymbolicFamily {
  int n = 0, r = 0;
  ImageSystem images;
  std::vector<SetPartition> partitions;
  SandwichMatrix sandwich;

  unsigned long long grid_size() const;  // n1 * n2 * r!
  std::vector<std::pair<int, int>> idempotent_cells() const;  // nonzero (i, j)
  SetSystem block_system() const;
  SimpleGraph gamma() const;
};

using Assembled = std::variant<FiniteMonoid, SymbolicFamily>;

// enumerate=true: materialize the grid plus identity and constants, then
// verify closure pairwise (products across zero cells must be constant) and
// check every grid product against rees_multiply. Throws closure_violation
// with the offending product, or closure_overflow past cap.
// enumerate=false: validate compatibility and regularity, return the handle.
Assembled assemble_monoid(const std::vector<SetPartition>& parts,
                          const ImageSystem& images, bool enumerate,
                          std::size_t cap);

// Five-condition report from the symbolic handle alone.
SimplicityReport analyze_symbolic(const SymbolicFamily& f);

struct BuiltSystem {
  int n = 0, r = 0;
  ImageSystem images;
  std::vector<SetPartition> partitions;
  std::string variant;  // r3 | r4-simple | r4-nonsimple | B | Bprime
  std::string note;     // closing-partition assignment: odd | literal | searched
};

// The three-triangle system on six points with a selection of its four
// admissible partitions (by 1-based item number, size 3 or 4).
BuiltSystem build_r3(const std::vector<int>& selection);

// The twelve-point square-and-diagonals system with its two published
// four-partition families.
BuiltSystem build_r4(const std::string& example);  // "simple" | "nonsimple"

// The general r-cycle family on r(r-1) points, r >= 5. Variant "B" closes
// with the color-class partition; "Bprime" uses the r-th edge partition
// instead. Every partition passes the partition/compatibility/regularity
// gates or the build throws.
BuiltSystem build_family(int r, const std::string& variant);

// All partitions of {1..n} into exactly images.r blocks that are compatible
// with the image system. Guarded: throws when the candidate count tops 10^7.
std::vector<SetPartition> enumerate_admissible_partitions(const ImageSystem& images);

struct WitnessVector {
  int r = 0;
  std::string rule;  // parity | balanced-colors
  std::vector<Rational> coefficients;  // length r(r-1)
};

// A vector designed to have zero sum on every block of the non-closing
// family: alternating +-1 on the interior color classes for odd r; for even
// r the last color class is dropped so the class weights balance.
WitnessVector witness_vector(int r);

// The plain alternating rule extended to even r with weight -1 on joints
// and -1/2 on connectors. Kept for the negative tests: its block sums do
// not vanish on the edge blocks (see witness_vector for the working rule).
WitnessVector witness_vector_parity(int r);

bool verify_witness(const WitnessVector& w, const std::vector<SetPartition>& parts);

// Transcription check on the rotated diagonal blocks: for every position the
// two blocks pairing a joint (resp. two connectors) with a diagonal share
// that diagonal exactly.
bool diagonal_identity_holds(int r);

unsigned long long stirling_partition_count(int n, int r);  // saturating

}  // namespace augsimp
