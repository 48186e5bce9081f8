#include "augsimp/rank2.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace augsimp {

DifferenceSet difference_set(const SimpleGraph& g) { return g.edges; }

RationalMatrix signed_incidence(const RationalMatrix& inc, const DifferenceSet& d) {
  RationalMatrix out(static_cast<int>(d.size()), inc.cols);
  out.col_labels = inc.col_labels;
  for (std::size_t r = 0; r < d.size(); ++r) {
    auto [i, j] = d[r];
    if (i < 1 || j < 1 || i > inc.rows || j > inc.rows)
      throw std::out_of_range("signed_incidence: pair index outside the point range");
    out.row_labels.push_back(std::to_string(i) + "-" + std::to_string(j));
    for (int c = 0; c < inc.cols; ++c)
      out.at(static_cast<int>(r), c) = inc.at(i - 1, c) - inc.at(j - 1, c);
  }
  return out;
}

std::string group_entry_str(GroupEntry e) {
  switch (e) {
    case GroupEntry::zero: return "0";
    case GroupEntry::one: return "1";
    default: return "g";
  }
}

ReesData sandwich_data(const FiniteMonoid& m, const JClassInfo& j) {
  if (!j.is_regular)
    throw std::invalid_argument("sandwich_data: class is not regular");
  if (j.rank != 2)
    throw std::invalid_argument("sandwich_data: class rank is " +
                                std::to_string(j.rank) + ", not 2");

  ReesData r;
  r.n = m.n;

  // Kernels: the block around point 1 plus its complement, deduplicated.
  std::set<std::pair<std::vector<int>, std::vector<int>>> kernels;
  std::set<std::pair<int, int>> images;
  for (int ei : j.elements) {
    const Transformation& t = m.elements[ei];
    auto blocks = kernel_blocks(t);  // two blocks, first contains point 1
    kernels.emplace(blocks[0], blocks[1]);
    auto img = image_set(t);
    images.emplace(img[0], img[1]);
  }

  r.n1_kernels.reserve(kernels.size());
  for (const auto& [b, c] : kernels) {
    r.n1_kernels.push_back(b);
    r.n1_complements.push_back(c);
  }
  // Membership-pattern order: compare characteristic vectors of B_k,
  // larger first, so blocks covering earlier points lead.
  std::vector<std::size_t> order(r.n1_kernels.size());
  std::iota(order.begin(), order.end(), 0);
  auto chi = [&](std::size_t k) {
    std::vector<int> v(m.n, 0);
    for (int w : r.n1_kernels[k]) v[w - 1] = 1;
    return v;
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return chi(a) > chi(b); });
  {
    std::vector<std::vector<int>> ks, cs;
    for (std::size_t k : order) {
      ks.push_back(r.n1_kernels[k]);
      cs.push_back(r.n1_complements[k]);
    }
    r.n1_kernels = std::move(ks);
    r.n1_complements = std::move(cs);
  }

  r.n2_images.assign(images.begin(), images.end());

  for (auto [wi, wj] : r.n2_images) {
    std::vector<GroupEntry> row;
    for (const auto& bk : r.n1_kernels) {
      bool i_in = std::binary_search(bk.begin(), bk.end(), wi);
      bool j_in = std::binary_search(bk.begin(), bk.end(), wj);
      if (i_in == j_in) row.push_back(GroupEntry::zero);
      else if (i_in) row.push_back(GroupEntry::one);
      else row.push_back(GroupEntry::g);
    }
    r.p.push_back(std::move(row));
  }

  // Regularity shows up as a nonzero in every row and column.
  std::vector<bool> col_hit(r.n1_kernels.size(), false);
  for (const auto& row : r.p) {
    bool row_hit = false;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] != GroupEntry::zero) {
        row_hit = true;
        col_hit[c] = true;
      }
    if (!row_hit) throw std::logic_error("sandwich_data: zero row in a regular class");
  }
  for (bool hit : col_hit)
    if (!hit) throw std::logic_error("sandwich_data: zero column in a regular class");

  if (j.idempotents.empty())
    throw std::invalid_argument("sandwich_data: class has no idempotents");
  r.group_order = static_cast<int>(
      maximal_subgroup(m, m.elements[j.idempotents.front()]).perms.size());
  if (r.group_order != 1 && r.group_order != 2)
    throw std::logic_error("sandwich_data: rank-two class with group order " +
                           std::to_string(r.group_order));
  return r;
}

RationalMatrix signed_sandwich(const ReesData& r) {
  RationalMatrix m(static_cast<int>(r.p.size()),
                   static_cast<int>(r.n1_kernels.size()));
  for (const auto& [i, j] : r.n2_images)
    m.row_labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (const auto& bk : r.n1_kernels) m.col_labels.push_back(block_str(bk));
  for (std::size_t i = 0; i < r.p.size(); ++i)
    for (std::size_t k = 0; k < r.p[i].size(); ++k) {
      switch (r.p[i][k]) {
        case GroupEntry::zero: break;
        case GroupEntry::one: m.at(static_cast<int>(i), static_cast<int>(k)) = 1; break;
        case GroupEntry::g: m.at(static_cast<int>(i), static_cast<int>(k)) = -1; break;
      }
    }
  return m;
}

Rank2Result rank2_verdict(const FiniteMonoid& m) {
  GreenStructure green = green_structure(m);
  if (green.j_classes.size() == 1) throw group_input_error();

  if (std::none_of(m.elements.begin(), m.elements.end(),
                   [](const Transformation& t) { return is_constant(t); }))
    throw hypothesis_error("no-constant", "the minimal ideal has no constant map");

  ZeroMinimal zm = zero_minimal_jclass(m, green);
  if (!zm.jclass)
    throw hypothesis_error("no-unique-minimal",
                           std::to_string(zm.minimal_class_ids.size()) +
                               " incomparable minimal classes above the ideal");
  if (!zm.jclass->is_regular)
    throw hypothesis_error("no-unique-minimal",
                           "minimal class above the ideal is not regular");
  if (zm.jclass->rank != 2)
    throw hypothesis_error("rank-not-2", "minimal class above the ideal has rank " +
                                             std::to_string(zm.jclass->rank));

  Rank2Result res;
  res.n = m.n;
  res.data = sandwich_data(m, *zm.jclass);
  res.pprime = signed_sandwich(res.data);
  res.pprime_rank = rank(res.pprime);
  res.verdict = res.pprime_rank == m.n - 1 ? Verdict::simple : Verdict::not_simple;
  return res;
}

SimpleGraph random_spanning_tree(const SimpleGraph& g, std::mt19937& rng) {
  if (!is_connected(g))
    throw std::invalid_argument("random_spanning_tree: graph is disconnected");
  std::vector<std::pair<int, int>> edges = g.edges;
  std::shuffle(edges.begin(), edges.end(), rng);

  std::vector<int> parent(g.n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };

  SimpleGraph tree;
  tree.n = g.n;
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) continue;
    parent[ra] = rb;
    tree.edges.emplace_back(a, b);
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

std::optional<SimpleGraph> random_disconnected_graph(int n, std::mt19937& rng) {
  // Split the vertices into two nonempty sides and draw n-1 edges that stay
  // within a side. Feasible only when some split offers that many edges.
  std::vector<int> sizes;
  for (int a = 1; a <= n / 2; ++a)
    if (a * (a - 1) / 2 + (n - a) * (n - a - 1) / 2 >= n - 1) sizes.push_back(a);
  if (sizes.empty()) return std::nullopt;

  int a = sizes[std::uniform_int_distribution<std::size_t>(0, sizes.size() - 1)(rng)];
  std::vector<int> verts(n);
  std::iota(verts.begin(), verts.end(), 1);
  std::shuffle(verts.begin(), verts.end(), rng);

  std::vector<std::pair<int, int>> pool;
  auto add_side = [&](int from, int to) {
    for (int i = from; i < to; ++i)
      for (int k = i + 1; k < to; ++k)
        pool.emplace_back(std::min(verts[i], verts[k]), std::max(verts[i], verts[k]));
  };
  add_side(0, a);
  add_side(a, n);
  std::shuffle(pool.begin(), pool.end(), rng);

  SimpleGraph g;
  g.n = n;
  g.edges.assign(pool.begin(), pool.begin() + (n - 1));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace augsimp
