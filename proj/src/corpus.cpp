#include "augsimp/corpus.hpp"

#include <random>
#include <set>

#include "augsimp/rank2.hpp"

namespace augsimp {

std::vector<FiniteMonoid> pinned_rank_gap_examples() {
  std::vector<FiniteMonoid> out;
  out.push_back(generate_closure(
      {Transformation{{1, 2, 1}}, Transformation{{1, 2, 2}}, Transformation{{1, 1, 1}}},
      100));
  out.push_back(generate_closure({Transformation{{1, 2, 1, 2}}, Transformation{{4, 3, 3, 4}},
                                  Transformation{{1, 2, 2, 2}}, Transformation{{1, 1, 1, 1}}},
                                 100));
  return out;
}

std::vector<FiniteMonoid> hypothesis_corpus(std::uint32_t seed, std::size_t target,
                                            int n_max, std::size_t cap) {
  std::vector<FiniteMonoid> out = pinned_rank_gap_examples();
  std::set<std::vector<Transformation>> seen;
  for (const auto& m : out) seen.insert(m.elements);
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) {  // inclusive
    return lo + (int)(rng() % (std::uint32_t)(hi - lo + 1));
  };
  while (out.size() < target) {
    int n = pick(2, n_max);
    int k = pick(1, 4);
    std::vector<Transformation> gens;
    for (int q = 0; q < k; ++q) {
      int a = pick(1, n), b = pick(1, n);
      while (b == a) b = pick(1, n);
      Transformation t;
      t.images.assign(n, 0);
      for (int w = 1; w <= n; ++w) t.images[w - 1] = rng() % 2 ? a : b;
      t.images[a - 1] = a;  // fix both image points: rank-2 idempotent
      t.images[b - 1] = b;
      gens.push_back(std::move(t));
    }
    gens.push_back(constant_map(n, pick(1, n)));
    FiniteMonoid m;
    try {
      m = generate_closure(gens, cap);
      (void)rank2_verdict(m);  // hypothesis filter
    } catch (const closure_overflow&) {
      continue;
    } catch (const hypothesis_error&) {
      continue;
    } catch (const group_input_error&) {
      continue;
    }
    if (!seen.insert(m.elements).second) continue;  // distinct monoids only
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace augsimp
