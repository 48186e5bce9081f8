#include "augsimp/monoid.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace augsimp {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

void check_point_range(const Transformation& t) {
  const int n = t.degree();
  for (int x : t.images)
    if (x < 1 || x > n)
      throw std::invalid_argument("transformation image point out of range 1..n");
}

}  // namespace

Transformation identity_map(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i + 1;
  return Transformation(std::move(img));
}

Transformation constant_map(int n, int target) {
  return Transformation(std::vector<int>(n, target));
}

Transformation compose(const Transformation& f, const Transformation& g) {
  if (f.degree() != g.degree())
    throw std::invalid_argument("compose: degree mismatch");
  const int n = f.degree();
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = f.images[g.images[i] - 1];
  return Transformation(std::move(img));
}

int map_rank(const Transformation& t) {
  std::vector<int> img = t.images;
  std::sort(img.begin(), img.end());
  return static_cast<int>(std::unique(img.begin(), img.end()) - img.begin());
}

bool is_constant(const Transformation& t) { return map_rank(t) == 1; }

bool is_idempotent(const Transformation& t) { return compose(t, t) == t; }

std::vector<int> image_set(const Transformation& t) {
  std::vector<int> img = t.images;
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

std::vector<std::vector<int>> kernel_blocks(const Transformation& t) {
  const int n = t.degree();
  std::vector<std::vector<int>> blocks;
  std::unordered_map<int, int> by_value;
  for (int w = 1; w <= n; ++w) {
    auto [it, fresh] = by_value.try_emplace(t(w), static_cast<int>(blocks.size()));
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(w);
  }
  // Points were visited ascending, so each block is sorted and the blocks
  // are already ordered by least element.
  return blocks;
}

int FiniteMonoid::index_of(const Transformation& t) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), t);
  if (it == elements.end() || !(*it == t)) return -1;
  return static_cast<int>(it - elements.begin());
}

int FiniteMonoid::identity_index() const { return index_of(identity_map(n)); }

closure_overflow::closure_overflow(std::size_t count, std::size_t cap_)
    : std::runtime_error("closure exceeds cap " + std::to_string(cap_) +
                         " (found " + std::to_string(count) + " elements so far)"),
      partial_count(count),
      cap(cap_) {}

FiniteMonoid generate_closure(const std::vector<Transformation>& generators,
                              std::size_t cap) {
  if (generators.empty())
    throw std::invalid_argument("generate_closure: no generators and no degree given");
  return generate_closure(generators[0].degree(), generators, cap);
}

FiniteMonoid generate_closure(int n, const std::vector<Transformation>& generators,
                              std::size_t cap) {
  if (n < 1) throw std::invalid_argument("generate_closure: degree must be positive");
  for (const auto& g : generators) {
    if (g.degree() != n)
      throw std::invalid_argument("generate_closure: generator degree mismatch");
    check_point_range(g);
  }

  std::unordered_set<std::vector<int>, VecHash> seen;
  std::deque<Transformation> queue;
  auto push = [&](const Transformation& t) {
    if (seen.contains(t.images)) return;
    if (seen.size() >= cap) throw closure_overflow(seen.size(), cap);
    seen.insert(t.images);
    queue.push_back(t);
  };

  push(identity_map(n));
  for (const auto& g : generators) push(g);
  while (!queue.empty()) {
    Transformation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : generators) push(compose(x, g));
  }

  FiniteMonoid m;
  m.n = n;
  m.generators = generators;
  m.elements.reserve(seen.size());
  for (const auto& img : seen) m.elements.emplace_back(img);
  std::sort(m.elements.begin(), m.elements.end());
  return m;
}

namespace {

// Fixed-width bit rows over element indices.
class BitRows {
 public:
  BitRows(std::size_t count, std::size_t width)
      : words_((width + 63) / 64), data_(count * words_, 0) {}

  void set(std::size_t row, std::size_t bit) {
    data_[row * words_ + bit / 64] |= 1ull << (bit % 64);
  }
  const uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
  std::size_t words() const { return words_; }

  bool equal(std::size_t a, std::size_t b) const {
    return std::equal(row(a), row(a) + words_, row(b));
  }
  bool subset(std::size_t a, std::size_t b) const {
    const uint64_t *x = row(a), *y = row(b);
    for (std::size_t w = 0; w < words_; ++w)
      if (x[w] & ~y[w]) return false;
    return true;
  }
  void unite_from(const BitRows& other, std::size_t dst, std::size_t src) {
    uint64_t* d = data_.data() + dst * words_;
    const uint64_t* s = other.row(src);
    for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
  }
  std::size_t hash(std::size_t r) const {
    std::size_t h = 1469598103934665603ull;
    const uint64_t* x = row(r);
    for (std::size_t w = 0; w < words_; ++w) {
      h ^= x[w];
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::size_t words_;
  std::vector<uint64_t> data_;
};

// Group rows by content; class ids in order of first appearance.
std::vector<int> classify(const BitRows& rows, std::size_t count,
                          std::vector<std::size_t>* reps) {
  std::vector<int> of(count, -1);
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < count; ++i) {
    auto& bucket = buckets[rows.hash(i)];
    for (std::size_t j : bucket)
      if (rows.equal(i, j)) {
        of[i] = of[j];
        break;
      }
    if (of[i] < 0) {
      of[i] = static_cast<int>(reps->size());
      reps->push_back(i);
    }
    bucket.push_back(i);
  }
  return of;
}

std::vector<std::vector<int>> gather(const std::vector<int>& of, std::size_t classes) {
  std::vector<std::vector<int>> out(classes);
  for (std::size_t i = 0; i < of.size(); ++i) out[of[i]].push_back(static_cast<int>(i));
  return out;
}

}  // namespace

GreenStructure green_structure(const FiniteMonoid& m) {
  const std::size_t count = m.size();
  if (count == 0) throw std::invalid_argument("green_structure: empty monoid");

  std::unordered_map<std::vector<int>, int, VecHash> index;
  index.reserve(count * 2);
  for (std::size_t i = 0; i < count; ++i) index.emplace(m.elements[i].images, i);

  BitRows right(count, count), left(count, count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) {
      int idx = index.at(compose(m.elements[i], m.elements[j]).images);
      right.set(i, idx);  // element i times j lands in iM
      left.set(j, idx);   // and in Mj
    }

  GreenStructure g;
  std::vector<std::size_t> r_reps, l_reps, h_reps, j_reps;
  g.r_of = classify(right, count, &r_reps);
  g.l_of = classify(left, count, &l_reps);

  // H from the (R, L) pair.
  {
    std::unordered_map<std::int64_t, int> pair_ids;
    for (std::size_t i = 0; i < count; ++i) {
      std::int64_t key = static_cast<std::int64_t>(g.r_of[i]) << 32 | g.l_of[i];
      auto [it, fresh] = pair_ids.try_emplace(key, static_cast<int>(pair_ids.size()));
      if (fresh) h_reps.push_back(i);
      g.h_of.push_back(it->second);
    }
  }

  // Two-sided ideal rows: MaM = union of xM over x in Ma.
  BitRows two_sided(count, count);
  for (std::size_t a = 0; a < count; ++a) {
    const uint64_t* ma = left.row(a);
    for (std::size_t w = 0; w < two_sided.words(); ++w) {
      uint64_t bits = ma[w];
      while (bits) {
        std::size_t x = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        two_sided.unite_from(right, a, x);
      }
    }
  }
  g.j_of = classify(two_sided, count, &j_reps);

  g.r_classes = gather(g.r_of, r_reps.size());
  g.l_classes = gather(g.l_of, l_reps.size());
  g.h_classes = gather(g.h_of, h_reps.size());
  g.j_classes = gather(g.j_of, j_reps.size());

  const std::size_t jc = j_reps.size();
  g.j_le.assign(jc, std::vector<char>(jc, 0));
  for (std::size_t a = 0; a < jc; ++a)
    for (std::size_t b = 0; b < jc; ++b)
      g.j_le[a][b] = two_sided.subset(j_reps[a], j_reps[b]) ? 1 : 0;

  g.regular_j.assign(jc, false);
  for (std::size_t i = 0; i < count; ++i)
    if (is_idempotent(m.elements[i])) g.regular_j[g.j_of[i]] = true;

  return g;
}

JClassInfo jclass_info(const FiniteMonoid& m, const GreenStructure& g, int class_id) {
  JClassInfo info;
  info.class_id = class_id;
  info.elements = g.j_classes.at(class_id);
  info.is_regular = g.regular_j.at(class_id);
  info.rank = map_rank(m.elements[info.elements.front()]);
  for (int i : info.elements) {
    if (map_rank(m.elements[i]) != info.rank)
      throw std::logic_error("rank not constant on a J-class");
    if (is_idempotent(m.elements[i])) info.idempotents.push_back(i);
  }
  return info;
}

std::vector<Transformation> idempotents(const FiniteMonoid& m) {
  std::vector<Transformation> out;
  for (const auto& t : m.elements)
    if (is_idempotent(t)) out.push_back(t);
  return out;
}

namespace {

// Index of the unique global minimum in the J-order; throws if absent.
int bottom_jclass(const GreenStructure& g) {
  const std::size_t jc = g.j_classes.size();
  for (std::size_t c = 0; c < jc; ++c) {
    bool below_all = true;
    for (std::size_t b = 0; b < jc && below_all; ++b)
      if (!g.j_le[c][b]) below_all = false;
    if (below_all) return static_cast<int>(c);
  }
  throw std::logic_error("monoid without a minimum J-class");
}

}  // namespace

std::vector<Transformation> minimal_ideal(const FiniteMonoid& m) {
  GreenStructure g = green_structure(m);
  int bottom = bottom_jclass(g);

  int min_rank = m.n + 1;
  for (const auto& t : m.elements) min_rank = std::min(min_rank, map_rank(t));
  std::vector<Transformation> by_rank;
  for (const auto& t : m.elements)
    if (map_rank(t) == min_rank) by_rank.push_back(t);

  std::vector<Transformation> by_green;
  for (int i : g.j_classes[bottom]) by_green.push_back(m.elements[i]);
  if (by_green != by_rank)
    throw std::logic_error("minimal ideal disagrees with the minimum-rank class");
  return by_green;
}

ZeroMinimal zero_minimal_jclass(const FiniteMonoid& m, const GreenStructure& g) {
  const std::size_t jc = g.j_classes.size();
  if (jc == 1) throw group_input_error();
  const int bottom = bottom_jclass(g);

  ZeroMinimal out;
  for (std::size_t c = 0; c < jc; ++c) {
    if (static_cast<int>(c) == bottom) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < jc && minimal; ++b)
      if (static_cast<int>(b) != bottom && b != c && g.j_le[b][c]) minimal = false;
    if (minimal) out.minimal_class_ids.push_back(static_cast<int>(c));
  }
  if (out.minimal_class_ids.size() == 1)
    out.jclass = jclass_info(m, g, out.minimal_class_ids[0]);
  return out;
}

ZeroMinimal zero_minimal_jclass(const FiniteMonoid& m) {
  return zero_minimal_jclass(m, green_structure(m));
}

PermGroup maximal_subgroup(const FiniteMonoid& m, const Transformation& e) {
  if (m.index_of(e) < 0)
    throw std::invalid_argument("maximal_subgroup: element not in the monoid");
  if (!is_idempotent(e))
    throw std::invalid_argument("maximal_subgroup: element is not idempotent");

  const std::size_t count = m.size();
  auto right_row = [&](const Transformation& x) {
    std::vector<char> row(count, 0);
    for (std::size_t j = 0; j < count; ++j)
      row[m.index_of(compose(x, m.elements[j]))] = 1;
    return row;
  };
  auto left_row = [&](const Transformation& x) {
    std::vector<char> row(count, 0);
    for (std::size_t j = 0; j < count; ++j)
      row[m.index_of(compose(m.elements[j], x))] = 1;
    return row;
  };

  const std::vector<char> eR = right_row(e), eL = left_row(e);
  const std::vector<int> pts = image_set(e);
  const auto eker = kernel_blocks(e);

  PermGroup group;
  group.points = pts;
  std::vector<int> pos(m.n + 1, -1);
  for (std::size_t k = 0; k < pts.size(); ++k) pos[pts[k]] = static_cast<int>(k);

  for (const auto& h : m.elements) {
    // Same image and kernel is necessary for the H-class; the row equality
    // below is the actual membership test.
    if (image_set(h) != pts || kernel_blocks(h) != eker) continue;
    if (right_row(h) != eR || left_row(h) != eL) continue;
    std::vector<int> perm(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) perm[k] = pos[h(pts[k])];
    group.perms.push_back(std::move(perm));
  }
  return group;
}

Transitivity transitivity_kind(const FiniteMonoid& m) {
  const int n = m.n;
  std::vector<std::vector<bool>> orbit(n + 1, std::vector<bool>(n + 1, false));
  for (const auto& t : m.elements)
    for (int w = 1; w <= n; ++w) orbit[w][t(w)] = true;

  auto full = [&](int w) {
    for (int x = 1; x <= n; ++x)
      if (!orbit[w][x]) return false;
    return true;
  };
  auto sink = [&](int w) {
    for (int x = 1; x <= n; ++x)
      if (orbit[w][x] != (x == w)) return false;
    return true;
  };

  int sinks = 0, fulls = 0;
  for (int w = 1; w <= n; ++w) {
    if (full(w)) ++fulls;
    else if (sink(w)) ++sinks;
  }
  if (fulls == n) return Transitivity::transitive;
  if (sinks == 1 && fulls == n - 1) return Transitivity::zero_transitive;
  return Transitivity::neither;
}

std::string to_string(Transitivity t) {
  switch (t) {
    case Transitivity::transitive: return "transitive";
    case Transitivity::zero_transitive: return "zero-transitive";
    default: return "neither";
  }
}

bool is_two_transitive(const PermGroup& g) {
  const int k = static_cast<int>(g.points.size());
  for (const auto& p : g.perms) {
    if (static_cast<int>(p.size()) != k)
      throw std::invalid_argument("is_two_transitive: map does not permute the points");
    std::vector<bool> hit(k, false);
    for (int v : p) {
      if (v < 0 || v >= k || hit[v])
        throw std::invalid_argument("is_two_transitive: map does not permute the points");
      hit[v] = true;
    }
  }
  if (k < 2) return false;
  std::unordered_set<int> pair_orbit;
  for (const auto& p : g.perms) pair_orbit.insert(p[0] * k + p[1]);
  return static_cast<int>(pair_orbit.size()) == k * (k - 1);
}

}  // namespace augsimp
