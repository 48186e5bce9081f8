#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace augsimp {

// Total map on {1..n}, stored as its image array: images[w-1] is the image
// of point w. Points are 1-based everywhere.
struct Transformation {
  std::vector<int> images;

  Transformation() = default;
  explicit Transformation(std::vector<int> img) : images(std::move(img)) {}

  int degree() const { return static_cast<int>(images.size()); }
  int operator()(int w) const { return images[w - 1]; }

  bool operator==(const Transformation&) const = default;
  auto operator<=>(const Transformation&) const = default;
};

Transformation identity_map(int n);
Transformation constant_map(int n, int target);

// Apply g, then f. Throws std::invalid_argument on degree mismatch. This is
// the monoid product used throughout: (f*g)(w) = f(g(w)).
Transformation compose(const Transformation& f, const Transformation& g);

int map_rank(const Transformation& t);
bool is_constant(const Transformation& t);
bool is_idempotent(const Transformation& t);
std::vector<int> image_set(const Transformation& t);  // sorted ascending
// Kernel classes as sorted point lists, blocks ordered by least element.
std::vector<std::vector<int>> kernel_blocks(const Transformation& t);

struct FiniteMonoid {
  int n = 0;
  std::vector<Transformation> elements;  // sorted lexicographically on images
  std::vector<Transformation> generators;

  std::size_t size() const { return elements.size(); }
  // Index in the sorted element list, or -1 if absent.
  int index_of(const Transformation& t) const;
  int identity_index() const;
};

struct closure_overflow : std::runtime_error {
  std::size_t partial_count;
  std::size_t cap;
  closure_overflow(std::size_t count, std::size_t cap_);
};

// Breadth-first closure of the generators under compose, identity adjoined,
// elements deduplicated and sorted. Throws closure_overflow past cap.
FiniteMonoid generate_closure(const std::vector<Transformation>& generators,
                              std::size_t cap);
FiniteMonoid generate_closure(int n, const std::vector<Transformation>& generators,
                              std::size_t cap);

struct GreenStructure {
  // Per element index: id of its class in each partition.
  std::vector<int> r_of, l_of, h_of, j_of;
  std::vector<std::vector<int>> r_classes, l_classes, h_classes, j_classes;
  // j_le[a][b] is true when class a lies below-or-equal class b (MaM ⊆ MbM).
  std::vector<std::vector<char>> j_le;
  std::vector<bool> regular_j;  // per J-class: contains an idempotent
};

// Classes from explicit set equality of aM, Ma, MaM over the element list;
// order on J-classes from containment of the two-sided ideals.
GreenStructure green_structure(const FiniteMonoid& m);

struct JClassInfo {
  int class_id = -1;
  std::vector<int> elements;     // element indices
  std::vector<int> idempotents;  // element indices
  int rank = 0;                  // common rank of the class
  bool is_regular = false;
};

JClassInfo jclass_info(const FiniteMonoid& m, const GreenStructure& g, int class_id);

std::vector<Transformation> idempotents(const FiniteMonoid& m);

// Elements of the unique bottom J-class; checks that the Green-minimal class
// and the minimum-rank element set coincide.
std::vector<Transformation> minimal_ideal(const FiniteMonoid& m);

struct group_input_error : std::runtime_error {
  group_input_error() : std::runtime_error("monoid is a group: no class above the minimal ideal") {}
};

struct ZeroMinimal {
  std::optional<JClassInfo> jclass;    // set iff a unique minimal class exists
  std::vector<int> minimal_class_ids;  // minimal classes strictly above the ideal
};

// Unique minimal J-class of M minus its minimal ideal. A non-unique minimum
// is reported in minimal_class_ids rather than thrown; a group input throws.
ZeroMinimal zero_minimal_jclass(const FiniteMonoid& m, const GreenStructure& g);
ZeroMinimal zero_minimal_jclass(const FiniteMonoid& m);

struct PermGroup {
  std::vector<int> points;              // sorted point labels
  std::vector<std::vector<int>> perms;  // each: index-to-index bijection
};

// H-class of the idempotent e, restricted to permutations of eΩ.
PermGroup maximal_subgroup(const FiniteMonoid& m, const Transformation& e);

enum class Transitivity { transitive, zero_transitive, neither };
Transitivity transitivity_kind(const FiniteMonoid& m);
std::string to_string(Transitivity t);

// Single orbit on ordered pairs of distinct points.
bool is_two_transitive(const PermGroup& g);

}  // namespace augsimp
