#pragma once

#include <cstdint>
#include <vector>

#include "augsimp/monoid.hpp"

namespace augsimp {

// Two fixed monoids on which the signed-matrix rank and the incidence rank
// disagree as simplicity tests (full incidence rank, deficient signed rank,
// disconnected graph). The first is minimal on three points; the second is
// the 17-element four-point example used throughout the tests.
std::vector<FiniteMonoid> pinned_rank_gap_examples();

// Deterministic corpus of monoids generated from random rank-2 idempotents
// plus one constant, closed explicitly (cap per instance), and filtered to
// the rank-2 test's hypotheses: a constant, a unique minimal regular class
// above the ideal, and rank 2 in that class. The pinned examples above are
// always the first two entries.
std::vector<FiniteMonoid> hypothesis_corpus(std::uint32_t seed, std::size_t target,
                                            int n_max, std::size_t cap);

}  // namespace augsimp
