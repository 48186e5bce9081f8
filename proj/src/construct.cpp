#include "augsimp/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace augsimp {

namespace {

std::string block_text(const std::vector<int>& b) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) os << ',';
    os << b[i];
  }
  os << '}';
  return os.str();
}

}  // namespace

SetPartition make_partition(int n, std::vector<std::vector<int>> blocks) {
  if (n <= 0) throw std::invalid_argument("make_partition: n must be positive");
  std::vector<char> seen(n + 1, 0);
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("make_partition: empty block");
    std::sort(b.begin(), b.end());
    for (int x : b) {
      if (x < 1 || x > n)
        throw std::invalid_argument("make_partition: point " + std::to_string(x) +
                                    " out of range 1.." + std::to_string(n));
      if (seen[x])
        throw std::invalid_argument("make_partition: point " + std::to_string(x) +
                                    " appears twice");
      seen[x] = 1;
    }
  }
  for (int x = 1; x <= n; ++x)
    if (!seen[x])
      throw std::invalid_argument("make_partition: point " + std::to_string(x) +
                                  " not covered");
  std::sort(blocks.begin(), blocks.end());
  return SetPartition{n, std::move(blocks)};
}

ImageSystem make_image_system(int n, int r, std::vector<std::vector<int>> sets) {
  if (n <= 0 || r <= 0) throw std::invalid_argument("make_image_system: bad dimensions");
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("make_image_system: repeated point in a set");
    if ((int)s.size() != r)
      throw std::invalid_argument("make_image_system: set " + block_text(s) +
                                  " does not have " + std::to_string(r) + " points");
    if (s.front() < 1 || s.back() > n)
      throw std::invalid_argument("make_image_system: point out of range in " +
                                  block_text(s));
  }
  return ImageSystem{n, r, std::move(sets)};
}

std::string OmegaLabels::name(int point) const {
  if (point <= r) return "J" + std::to_string(point);
  if (point <= 2 * r) return "P" + std::to_string(point - r);
  int off = point - 2 * r - 1;
  return "c" + std::to_string(off / (r - 3) + 1) + "," + std::to_string(off % (r - 3) + 1);
}

CompatibilityResult jmin_compatible(const std::vector<SetPartition>& parts,
                                    const ImageSystem& images) {
  CompatibilityResult res;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if ((int)parts[i].blocks.size() != images.r)
      throw std::invalid_argument("jmin_compatible: partition " + std::to_string(i + 1) +
                                  " has " + std::to_string(parts[i].blocks.size()) +
                                  " blocks, expected " + std::to_string(images.r));
    std::vector<int> block_of(parts[i].n + 1, -1);
    for (std::size_t k = 0; k < parts[i].blocks.size(); ++k)
      for (int x : parts[i].blocks[k]) block_of[x] = (int)k;
    for (std::size_t j = 0; j < images.sets.size(); ++j) {
      std::set<int> hit;
      for (int x : images.sets[j]) hit.insert(block_of[x]);
      bool inside = hit.size() == 1;
      bool transversal = (int)hit.size() == images.r;
      if (!inside && !transversal) {
        res.ok = false;
        res.violations.emplace_back((int)i, (int)j);
      }
    }
  }
  return res;
}

SandwichMatrix rees_sandwich_from(const std::vector<SetPartition>& parts,
                                  const ImageSystem& images) {
  auto compat = jmin_compatible(parts, images);
  if (!compat.ok) {
    auto [pi, ji] = compat.violations.front();
    throw std::invalid_argument("rees_sandwich_from: set " +
                                block_text(images.sets[ji]) + " meets partition " +
                                std::to_string(pi + 1) +
                                " in more than one block without crossing all");
  }
  SandwichMatrix p;
  p.n1 = (int)parts.size();
  p.n2 = (int)images.sets.size();
  p.cells.assign(p.n2, std::vector<std::optional<std::vector<int>>>(p.n1));
  for (int i = 0; i < p.n1; ++i) {
    std::vector<int> block_of(parts[i].n + 1, -1);
    for (std::size_t k = 0; k < parts[i].blocks.size(); ++k)
      for (int x : parts[i].blocks[k]) block_of[x] = (int)k;
    for (int j = 0; j < p.n2; ++j) {
      std::vector<int> entry;
      std::set<int> hit;
      for (int x : images.sets[j]) {
        entry.push_back(block_of[x]);
        hit.insert(block_of[x]);
      }
      if ((int)hit.size() == images.r) p.cells[j][i] = std::move(entry);
    }
  }
  return p;
}

bool sandwich_regular(const SandwichMatrix& p) {
  for (int j = 0; j < p.n2; ++j) {
    bool any = false;
    for (int i = 0; i < p.n1; ++i) any = any || p.cells[j][i].has_value();
    if (!any) return false;
  }
  for (int i = 0; i < p.n1; ++i) {
    bool any = false;
    for (int j = 0; j < p.n2; ++j) any = any || p.cells[j][i].has_value();
    if (!any) return false;
  }
  return true;
}

std::optional<ReesTriple> rees_multiply(const ReesTriple& x, const ReesTriple& y,
                                        const SandwichMatrix& p) {
  const auto& cell = p.cells.at(x.j).at(y.i);
  if (!cell) return std::nullopt;
  ReesTriple out;
  out.i = x.i;
  out.j = y.j;
  out.g.resize(x.g.size());
  for (std::size_t k = 0; k < x.g.size(); ++k) out.g[k] = y.g[(*cell)[x.g[k]]];
  return out;
}

Transformation triple_transformation(const ReesTriple& t,
                                     const std::vector<SetPartition>& parts,
                                     const ImageSystem& images) {
  const auto& blocks = parts.at(t.i).blocks;
  const auto& pts = images.sets.at(t.j);
  Transformation out;
  out.images.assign(images.n, 0);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int x : blocks[k]) out.images[x - 1] = pts.at(t.g.at(k));
  return out;
}

unsigned long long SymbolicFamily::grid_size() const {
  unsigned long long f = 1;
  for (int k = 2; k <= r; ++k) f *= (unsigned long long)k;
  return (unsigned long long)partitions.size() * images.sets.size() * f;
}

std::vector<std::pair<int, int>> SymbolicFamily::idempotent_cells() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < sandwich.n1; ++i)
    for (int j = 0; j < sandwich.n2; ++j)
      if (sandwich.cells[j][i]) out.emplace_back(i, j);
  return out;
}

SetSystem SymbolicFamily::block_system() const {
  SetSystem sys;
  sys.n = n;
  std::map<std::vector<int>, std::string> prov;
  for (std::size_t i = 0; i < partitions.size(); ++i)
    for (const auto& b : partitions[i].blocks)
      prov.try_emplace(b, "partition " + std::to_string(i + 1));
  for (auto& [b, src] : prov) {
    sys.blocks.push_back(b);
    sys.provenance.push_back(src);
  }
  return sys;
}

SimpleGraph SymbolicFamily::gamma() const {
  std::set<std::pair<int, int>> es;
  for (int j = 0; j < sandwich.n2; ++j) {
    bool regular_set = false;
    for (int i = 0; i < sandwich.n1; ++i) regular_set = regular_set || sandwich.cells[j][i].has_value();
    if (!regular_set) continue;
    const auto& s = images.sets[j];
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        es.emplace(s[a], s[b]);
  }
  SimpleGraph g;
  g.n = n;
  g.edges.assign(es.begin(), es.end());
  return g;
}

Assembled assemble_monoid(const std::vector<SetPartition>& parts,
                          const ImageSystem& images, bool enumerate,
                          std::size_t cap) {
  if (parts.empty() || images.sets.empty())
    throw std::invalid_argument("assemble_monoid: empty system");
  for (const auto& b : parts)
    if (b.n != images.n)
      throw std::invalid_argument("assemble_monoid: partition ground set mismatch");

  if (!enumerate) {
    auto compat = jmin_compatible(parts, images);
    if (!compat.ok)
      throw std::invalid_argument(
          "assemble_monoid: symbolic handle needs a compatible system (" +
          std::to_string(compat.violations.size()) + " violating pairs)");
    SymbolicFamily f;
    f.n = images.n;
    f.r = images.r;
    f.images = images;
    f.partitions = parts;
    f.sandwich = rees_sandwich_from(parts, images);
    if (!sandwich_regular(f.sandwich))
      throw std::invalid_argument(
          "assemble_monoid: symbolic handle needs every row and column of the "
          "structure matrix nonzero");
    return f;
  }

  const int n = images.n;
  const int r = images.r;
  std::vector<Transformation> elems;
  std::vector<std::optional<ReesTriple>> coords;
  auto push = [&](const Transformation& t, std::optional<ReesTriple> c) {
    if (elems.size() >= cap) throw closure_overflow(elems.size(), cap);
    elems.push_back(t);
    coords.push_back(std::move(c));
  };
  push(identity_map(n), std::nullopt);
  for (int w = 1; w <= n; ++w) push(constant_map(n, w), std::nullopt);

  std::vector<int> perm(r);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < images.sets.size(); ++j) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        ReesTriple t{(int)i, perm, (int)j};
        push(triple_transformation(t, parts, images), t);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }

  std::vector<std::size_t> order(elems.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return elems[a].images < elems[b].images; });
  std::vector<Transformation> sorted;
  std::vector<std::optional<ReesTriple>> scoords;
  for (std::size_t idx : order) {
    if (!sorted.empty() && sorted.back() == elems[idx]) continue;
    sorted.push_back(elems[idx]);
    scoords.push_back(coords[idx]);
  }

  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ULL;
      for (int x : v) {
        h ^= (std::size_t)x;
        h *= 1099511628211ULL;
      }
      return h;
    }
  };
  std::unordered_set<std::vector<int>, VecHash> member;
  member.reserve(sorted.size() * 2);
  for (const auto& t : sorted) member.insert(t.images);

  auto triple_matches = [&](const ReesTriple& t, const Transformation& prod) {
    const auto& blocks = parts[t.i].blocks;
    const auto& pts = images.sets[t.j];
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (int x : blocks[k])
        if (prod.images[x - 1] != pts[t.g[k]]) return false;
    return true;
  };

  std::optional<SandwichMatrix> p;
  if (jmin_compatible(parts, images).ok) p = rees_sandwich_from(parts, images);
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = 0; b < sorted.size(); ++b) {
      Transformation prod = compose(sorted[b], sorted[a]);  // a acts first
      if (!member.count(prod.images))
        throw closure_violation(
            prod, "assemble_monoid: product of rank " + std::to_string(map_rank(prod)) +
                      " escapes the grid");
      if (p && scoords[a] && scoords[b]) {
        auto rt = rees_multiply(*scoords[a], *scoords[b], *p);
        if (rt) {
          if (!triple_matches(*rt, prod))
            throw std::logic_error("assemble_monoid: grid product disagrees with composition");
        } else if (!is_constant(prod)) {
          throw std::logic_error("assemble_monoid: zero-cell product is not constant");
        }
      }
    }
  }

  FiniteMonoid m;
  m.n = n;
  m.elements = std::move(sorted);
  m.generators = m.elements;
  return m;
}

SimplicityReport analyze_symbolic(const SymbolicFamily& f) {
  SimplicityReport rep;
  rep.n = f.n;
  rep.conditions[0] = {CondStatus::pass, "constants adjoined by construction"};
  rep.conditions[1] = {CondStatus::pass,
                       "single grid class of rank " + std::to_string(f.r) +
                           " above the constants (" + std::to_string(f.grid_size()) +
                           " elements, regular structure matrix)"};
  if (f.r == 2) {
    rep.conditions[2] = {CondStatus::pass, "two points fixed by the idempotent"};
  } else {
    rep.conditions[2] = {CondStatus::pass,
                         "full symmetric group on " + std::to_string(f.r) +
                             " points is 2-transitive"};
  }
  rep.system = f.block_system();
  auto inc = incidence_matrix(rep.system);
  rep.incidence_rank = rank(inc);
  rep.wperp_basis = wperp(rep.system);
  if ((rep.incidence_rank == f.n) != rep.wperp_basis.empty())
    throw std::logic_error("analyze_symbolic: rank and orthogonal complement disagree");
  rep.conditions[3] = {rep.incidence_rank == f.n ? CondStatus::pass : CondStatus::fail,
                       "incidence rank " + std::to_string(rep.incidence_rank) + " of " +
                           std::to_string(f.n)};
  rep.graph = f.gamma();
  bool conn = is_connected(rep.graph);
  std::string ev;
  if (conn) {
    ev = "connected on " + std::to_string(f.n) + " points";
  } else {
    ev = "disconnected:";
    for (const auto& comp : components(rep.graph)) ev += " " + block_text(comp);
  }
  rep.conditions[4] = {conn ? CondStatus::pass : CondStatus::fail, ev};
  JClassInfo jc;
  jc.class_id = -1;
  jc.rank = f.r;
  jc.is_regular = true;
  rep.jclass = jc;
  bool all_pass = true;
  for (const auto& c : rep.conditions) all_pass = all_pass && c.status == CondStatus::pass;
  rep.verdict = all_pass ? Verdict::simple : Verdict::not_simple;
  return rep;
}

// ---------------------------------------------------------------------------
// explicit families

namespace {

struct PointSets {
  int r;
  OmegaLabels lab;
  std::vector<int> rotated(const std::vector<int>& part, int s) const {
    std::vector<int> out;
    out.reserve(part.size());
    for (int pt : part) {
      if (pt <= r) {
        out.push_back((pt - 1 + s) % r + 1);
      } else if (pt <= 2 * r) {
        out.push_back(r + ((pt - r - 1 + s) % r + 1));
      } else {
        int off = pt - 2 * r - 1;
        int i = off / (r - 3), j = off % (r - 3);
        out.push_back(2 * r + ((i + s) % r) * (r - 3) + j + 1);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

ImageSystem family_images(int r) {
  OmegaLabels lab{r};
  std::vector<std::vector<int>> sets;
  for (int i = 1; i <= r; ++i) {
    std::vector<int> e;
    e.push_back(lab.joint(i == 1 ? r : i - 1));
    for (int j = 1; j <= r - 3; ++j) e.push_back(lab.colored(i, j));
    e.push_back(lab.penultimate(i));
    e.push_back(lab.joint(i));
    sets.push_back(std::move(e));
  }
  for (int j = 1; j <= r - 3; ++j) {
    std::vector<int> cls;
    for (int i = 1; i <= r; ++i) cls.push_back(lab.colored(i, j));
    sets.push_back(std::move(cls));
  }
  return make_image_system(lab.n(), r, std::move(sets));
}

// The base partition: one block around the first edge, the rest assembled
// from the diagonals of the reduced table over columns 2..r.
SetPartition family_base_partition(int r) {
  OmegaLabels lab{r};
  std::vector<std::vector<int>> parts;
  std::vector<int> part1 = {lab.joint(r), lab.penultimate(1), lab.joint(1)};
  for (int j = 1; j <= r - 3; ++j) part1.push_back(lab.colored(1, j));
  std::set<int> removed = {r};
  std::set<int> pen_removed;
  if (r % 2 == 1) {
    for (int i = 3; i <= r - 2; i += 2) {
      part1.push_back(lab.joint(i));
      removed.insert(i);
    }
  } else {
    for (int i = 3; i <= r - 3; i += 2) {
      part1.push_back(lab.joint(i));
      removed.insert(i);
    }
    part1.push_back(lab.penultimate(r - 1));
    pen_removed.insert(r - 1);
  }
  const int m = r - 1;
  std::map<int, std::vector<int>> diag;
  for (int i = 1; i <= m; ++i) {
    for (int t = 1; t <= m; ++t) {
      int col = t + 1;
      std::optional<int> pt;
      if (i <= r - 3) {
        pt = lab.colored(col, i);
      } else if (i == r - 2) {
        if (!removed.count(col) && !pen_removed.count(col)) pt = lab.penultimate(col);
      } else {
        pt = removed.count(col) ? lab.penultimate(col) : lab.joint(col);
      }
      if (pt) diag[(i + t) % m].push_back(*pt);
    }
  }
  parts.push_back(std::move(part1));
  for (auto& [key, blk] : diag) parts.push_back(std::move(blk));
  return make_partition(lab.n(), std::move(parts));
}

// Closing partition, odd r: color classes plus three blocks mixing joints
// and connectors so that no edge set lies inside a block.
SetPartition family_star_odd(int r) {
  OmegaLabels lab{r};
  std::vector<std::vector<int>> parts;
  for (int j = 1; j <= r - 3; ++j) {
    std::vector<int> cls;
    for (int i = 1; i <= r; ++i) cls.push_back(lab.colored(i, j));
    parts.push_back(std::move(cls));
  }
  std::vector<int> a = {lab.joint(r)};
  for (int i = 2; i <= r - 3; i += 2) a.push_back(lab.joint(i));
  a.push_back(lab.penultimate(r - 1));
  std::vector<int> b;
  for (int i = 1; i <= r - 2; i += 2) b.push_back(lab.joint(i));
  b.push_back(lab.penultimate(r));
  std::vector<int> c = {lab.joint(r - 1)};
  for (int i = 1; i <= r - 2; ++i) c.push_back(lab.penultimate(i));
  parts.push_back(std::move(a));
  parts.push_back(std::move(b));
  parts.push_back(std::move(c));
  return make_partition(lab.n(), std::move(parts));
}

// Closing partition, even r, from a 3-coloring of the joint cycle: each
// connector joins the class missing around its edge. Fails (nullopt) when
// two cyclically adjacent joints share a color or a class ends up empty.
std::optional<SetPartition> family_star_even(int r, const std::vector<int>& col) {
  OmegaLabels lab{r};
  std::vector<std::vector<int>> parts;
  for (int j = 1; j <= r - 3; ++j) {
    std::vector<int> cls;
    for (int i = 1; i <= r; ++i) cls.push_back(lab.colored(i, j));
    parts.push_back(std::move(cls));
  }
  std::vector<std::vector<int>> tri(3);
  for (int i = 1; i <= r; ++i) tri[col[i - 1]].push_back(lab.joint(i));
  for (int i = 1; i <= r; ++i) {
    int prev = (i == 1) ? r : i - 1;
    if (col[prev - 1] == col[i - 1]) return std::nullopt;
    tri[3 - col[prev - 1] - col[i - 1]].push_back(lab.penultimate(i));
  }
  for (auto& t : tri) {
    if (t.empty()) return std::nullopt;
    parts.push_back(std::move(t));
  }
  return make_partition(lab.n(), std::move(parts));
}

bool star_even_gates(int r, const SetPartition& star) {
  OmegaLabels lab{r};
  std::vector<SetPartition> all;
  PointSets ps{r, lab};
  auto base = family_base_partition(r);
  for (int s = 0; s <= r - 2; ++s) {
    std::vector<std::vector<int>> rb;
    for (const auto& blk : base.blocks) rb.push_back(ps.rotated(blk, s));
    all.push_back(make_partition(lab.n(), std::move(rb)));
  }
  all.push_back(star);
  auto images = family_images(r);
  if (!jmin_compatible(all, images).ok) return false;
  if (!sandwich_regular(rees_sandwich_from(all, images))) return false;
  SetSystem sys;
  sys.n = lab.n();
  std::set<std::vector<int>> dedup;
  for (const auto& p : all)
    for (const auto& b : p.blocks) dedup.insert(b);
  for (const auto& b : dedup) {
    sys.blocks.push_back(b);
    sys.provenance.push_back("");
  }
  return wperp(sys).empty();
}

}  // namespace

BuiltSystem build_r3(const std::vector<int>& selection) {
  const int n = 6;
  std::vector<std::vector<std::vector<int>>> items = {
      {{1, 2, 3}, {4, 6}, {5}},
      {{3, 4, 5}, {2, 6}, {1}},
      {{5, 6, 1}, {2, 4}, {3}},
      {{2, 5}, {4, 1}, {6, 3}},
  };
  std::vector<int> sel = selection;
  std::sort(sel.begin(), sel.end());
  if (std::adjacent_find(sel.begin(), sel.end()) != sel.end())
    throw std::invalid_argument("build_r3: repeated item in selection");
  if (sel.size() != 3 && sel.size() != 4)
    throw std::invalid_argument("build_r3: selection must pick 3 or 4 of the items");
  for (int s : sel)
    if (s < 1 || s > 4)
      throw std::invalid_argument("build_r3: items are numbered 1..4");

  BuiltSystem out;
  out.n = n;
  out.r = 3;
  out.variant = "r3";
  out.images = make_image_system(n, 3, {{1, 2, 3}, {3, 4, 5}, {5, 6, 1}});
  for (int s : sel) out.partitions.push_back(make_partition(n, items[s - 1]));

  auto compat = jmin_compatible(out.partitions, out.images);
  if (!compat.ok)
    throw std::invalid_argument("build_r3: selection breaks compatibility");
  if (!sandwich_regular(rees_sandwich_from(out.partitions, out.images)))
    throw std::invalid_argument("build_r3: selection leaves a zero row or column");
  return out;
}

BuiltSystem build_r4(const std::string& example) {
  const int n = 12;
  BuiltSystem out;
  out.n = n;
  out.r = 4;
  out.images = make_image_system(
      n, 4, {{1, 2, 3, 4}, {4, 5, 6, 7}, {7, 8, 9, 10}, {10, 11, 12, 1}, {2, 5, 8, 11}});
  std::vector<std::vector<std::vector<int>>> chosen;
  if (example == "simple") {
    out.variant = "r4-simple";
    chosen = {
        {{1, 2, 3, 4}, {7, 8, 9, 10}, {5, 12}, {11, 6}},
        {{4, 5, 6, 7}, {10, 11, 12, 1}, {2, 9}, {3, 8}},
        {{1, 2, 3, 4, 9}, {5, 10}, {7, 11}, {6, 8, 12}},
        {{2, 5, 8, 11}, {1, 6, 9}, {3, 7, 12}, {4, 10}},
    };
  } else if (example == "nonsimple") {
    out.variant = "r4-nonsimple";
    chosen = {
        {{1, 2, 3, 4, 9}, {5, 10}, {7, 11}, {6, 8, 12}},
        {{4, 5, 6, 7, 12}, {1, 8}, {9, 11, 3}, {2, 10}},
        {{7, 8, 9, 10, 3}, {4, 11}, {2, 6, 12}, {1, 5}},
        {{10, 11, 12, 1, 6}, {2, 7}, {3, 5, 9}, {4, 8}},
    };
  } else {
    throw std::invalid_argument("build_r4: example must be \"simple\" or \"nonsimple\"");
  }
  for (auto& p : chosen) out.partitions.push_back(make_partition(n, p));
  auto compat = jmin_compatible(out.partitions, out.images);
  if (!compat.ok) throw std::logic_error("build_r4: compatibility gate failed");
  if (!sandwich_regular(rees_sandwich_from(out.partitions, out.images)))
    throw std::logic_error("build_r4: regularity gate failed");
  return out;
}

BuiltSystem build_family(int r, const std::string& variant) {
  if (r < 5) throw std::invalid_argument("build_family: needs r >= 5");
  if (variant != "B" && variant != "Bprime")
    throw std::invalid_argument("build_family: variant must be \"B\" or \"Bprime\"");
  OmegaLabels lab{r};
  PointSets ps{r, lab};
  BuiltSystem out;
  out.n = lab.n();
  out.r = r;
  out.variant = variant;
  out.images = family_images(r);

  auto base = family_base_partition(r);
  int top_rotation = (variant == "Bprime") ? r - 1 : r - 2;
  for (int s = 0; s <= top_rotation; ++s) {
    std::vector<std::vector<int>> rb;
    for (const auto& blk : base.blocks) rb.push_back(ps.rotated(blk, s));
    out.partitions.push_back(make_partition(lab.n(), std::move(rb)));
  }
  if (variant == "B") {
    if (r % 2 == 1) {
      out.partitions.push_back(family_star_odd(r));
      out.note = "odd";
    } else {
      std::vector<int> literal(r);
      for (int i = 1; i <= r; ++i) {
        int m3 = i % 3;
        literal[i - 1] = m3 == 2 ? 0 : (m3 == 0 ? 1 : 2);
      }
      auto star = family_star_even(r, literal);
      if (star && star_even_gates(r, *star)) {
        out.partitions.push_back(*star);
        out.note = "literal";
      } else {
        bool found = false;
        std::vector<int> col(r, 0);
        // proper 3-colorings of the joint cycle, lexicographic
        auto next = [&]() {
          int k = r - 1;
          while (k >= 0 && col[k] == 2) col[k--] = 0;
          if (k < 0) return false;
          ++col[k];
          return true;
        };
        do {
          bool proper = true;
          for (int i = 0; i < r && proper; ++i) proper = col[i] != col[(i + 1) % r];
          if (!proper) continue;
          auto cand = family_star_even(r, col);
          if (cand && star_even_gates(r, *cand)) {
            out.partitions.push_back(*cand);
            out.note = "searched";
            found = true;
            break;
          }
        } while (next());
        if (!found)
          throw std::logic_error("build_family: no closing 3-coloring found for r = " +
                                 std::to_string(r));
      }
    }
  }

  for (const auto& p : out.partitions)
    if ((int)p.blocks.size() != r)
      throw std::logic_error("build_family: partition gate failed");
  auto compat = jmin_compatible(out.partitions, out.images);
  if (!compat.ok) throw std::logic_error("build_family: compatibility gate failed");
  if (!sandwich_regular(rees_sandwich_from(out.partitions, out.images)))
    throw std::logic_error("build_family: regularity gate failed");
  return out;
}

unsigned long long stirling_partition_count(int n, int r) {
  if (r <= 0 || r > n) return 0;
  const unsigned long long inf = ~0ULL;
  std::vector<std::vector<unsigned long long>> s(n + 1,
                                                 std::vector<unsigned long long>(r + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= std::min(i, r); ++k) {
      unsigned long long a = s[i - 1][k];
      unsigned long long b = s[i - 1][k - 1];
      if (a != inf && a > (inf - b) / (unsigned long long)k) {
        s[i][k] = inf;
      } else {
        s[i][k] = (a == inf || b == inf) ? inf : (unsigned long long)k * a + b;
      }
    }
  }
  return s[n][r];
}

std::vector<SetPartition> enumerate_admissible_partitions(const ImageSystem& images) {
  const int n = images.n;
  const int r = images.r;
  unsigned long long count = stirling_partition_count(n, r);
  if (count > 10'000'000ULL)
    throw std::invalid_argument("enumerate_admissible_partitions: " +
                                std::to_string(count) +
                                " candidates exceed the 10^7 guard");
  std::vector<SetPartition> out;
  std::vector<int> assign(n, 0);
  // restricted growth strings with exactly r classes
  auto emit = [&]() {
    std::vector<std::vector<int>> blocks(r);
    for (int x = 0; x < n; ++x) blocks[assign[x]].push_back(x + 1);
    auto part = make_partition(n, std::move(blocks));
    if (jmin_compatible({part}, images).ok) out.push_back(std::move(part));
  };
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (n - pos < r - used) return;
    if (pos == n) {
      if (used == r) emit();
      return;
    }
    for (int c = 0; c < std::min(used + 1, r); ++c) {
      assign[pos] = c;
      self(self, pos + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

WitnessVector witness_vector(int r) {
  if (r < 5) throw std::invalid_argument("witness_vector: needs r >= 5");
  OmegaLabels lab{r};
  WitnessVector w;
  w.r = r;
  w.coefficients.assign(lab.n(), Rational(0));
  if (r % 2 == 1) {
    w.rule = "parity";
    for (int j = 1; j <= r - 3; ++j)
      for (int i = 1; i <= r; ++i)
        w.coefficients[lab.colored(i, j) - 1] = (j % 2 == 1) ? Rational(1) : Rational(-1);
  } else {
    w.rule = "balanced-colors";
    for (int j = 1; j <= r - 4; ++j)
      for (int i = 1; i <= r; ++i)
        w.coefficients[lab.colored(i, j) - 1] = (j % 2 == 1) ? Rational(1) : Rational(-1);
  }
  return w;
}

WitnessVector witness_vector_parity(int r) {
  if (r < 5) throw std::invalid_argument("witness_vector_parity: needs r >= 5");
  OmegaLabels lab{r};
  WitnessVector w;
  w.r = r;
  w.rule = "parity";
  w.coefficients.assign(lab.n(), Rational(0));
  for (int j = 1; j <= r - 3; ++j)
    for (int i = 1; i <= r; ++i)
      w.coefficients[lab.colored(i, j) - 1] = (j % 2 == 1) ? Rational(1) : Rational(-1);
  if (r % 2 == 0) {
    for (int i = 1; i <= r; ++i) {
      w.coefficients[lab.joint(i) - 1] = Rational(-1);
      w.coefficients[lab.penultimate(i) - 1] = make_rational(-1, 2);
    }
  }
  return w;
}

bool verify_witness(const WitnessVector& w, const std::vector<SetPartition>& parts) {
  for (const auto& p : parts) {
    if (p.n != (int)w.coefficients.size())
      throw std::invalid_argument("verify_witness: dimension mismatch");
    for (const auto& blk : p.blocks) {
      Rational sum(0);
      for (int x : blk) sum += w.coefficients[x - 1];
      if (sum != 0) return false;
    }
  }
  return true;
}

bool diagonal_identity_holds(int r) {
  OmegaLabels lab{r};
  PointSets ps{r, lab};
  auto base = family_base_partition(r);
  auto get_b = [&](int k) {  // 1-based rotation index
    std::vector<std::vector<int>> rb;
    for (const auto& blk : base.blocks) rb.push_back(ps.rotated(blk, k - 1));
    return make_partition(lab.n(), std::move(rb));
  };
  auto colored_part = [&](const std::vector<int>& blk) {
    std::vector<int> out;
    for (int pt : blk)
      if (pt > 2 * r) out.push_back(pt);
    return out;
  };
  // the diagonal of B_k whose deepest interior row entry sits in column i
  auto diagonal_of = [&](const SetPartition& bk, int i) -> std::vector<int> {
    int target = lab.colored(i, r - 3);
    for (const auto& blk : bk.blocks)
      if (std::find(blk.begin(), blk.end(), target) != blk.end())
        return colored_part(blk);
    return {};
  };
  auto has_block = [&](const SetPartition& p, std::vector<int> blk) {
    std::sort(blk.begin(), blk.end());
    return std::find(p.blocks.begin(), p.blocks.end(), blk) != p.blocks.end();
  };
  std::vector<SetPartition> bs;
  for (int k = 1; k <= r; ++k) bs.push_back(get_b(k));
  for (int j = 3; j <= r; ++j) {
    int jm3 = ((j - 4) % r + r) % r + 1;
    auto d1 = diagonal_of(bs[j - 2], j);  // B_{j-1}
    auto d2 = diagonal_of(bs[j - 3], j);  // B_{j-2}
    if (d1 != d2 || d1.empty()) return false;
    auto with_joint = d1;
    with_joint.push_back(lab.joint(jm3));
    if (!has_block(bs[j - 2], with_joint)) return false;
    auto with_pens = d2;
    with_pens.push_back(lab.penultimate(jm3));
    with_pens.push_back(lab.penultimate(j - 1));
    if (!has_block(bs[j - 3], with_pens)) return false;
  }
  return true;
}

}  // namespace augsimp
