#include "augsimp/aug.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace augsimp {

std::string to_string(CondStatus s) {
  switch (s) {
    case CondStatus::pass: return "pass";
    case CondStatus::fail: return "fail";
    case CondStatus::undetermined: return "undetermined";
    default: return "not-evaluated";
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::simple: return "simple";
    case Verdict::not_simple: return "not-simple";
    default: return "undetermined";
  }
}

std::string block_str(const std::vector<int>& block) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out << ',';
    out << block[i];
  }
  out << '}';
  return out.str();
}

namespace {

std::string map_str(const Transformation& t) {
  std::ostringstream out;
  out << '[';
  for (int i = 1; i <= t.degree(); ++i) {
    if (i > 1) out << ' ';
    out << t(i);
  }
  out << ']';
  return out.str();
}

}  // namespace

SetSystem set_system(const FiniteMonoid& m, const JClassInfo& j) {
  if (j.idempotents.empty())
    throw std::invalid_argument("set_system: class has no idempotents");

  std::map<std::vector<int>, std::string> found;
  for (int ei : j.idempotents) {
    const Transformation& f = m.elements[ei];
    for (int w = 1; w <= m.n; ++w) {
      std::vector<int> block;
      for (int x = 1; x <= m.n; ++x)
        if (f(x) == f(w)) block.push_back(x);
      found.try_emplace(std::move(block),
                        "idempotent " + map_str(f) + ", point " + std::to_string(w));
    }
  }

  SetSystem s;
  s.n = m.n;
  for (auto& [block, prov] : found) {
    s.blocks.push_back(block);
    s.provenance.push_back(prov);
  }
  return s;
}

RationalMatrix incidence_matrix(const SetSystem& s) {
  RationalMatrix m(s.n, static_cast<int>(s.blocks.size()));
  for (int w = 1; w <= s.n; ++w) m.row_labels.push_back(std::to_string(w));
  for (std::size_t b = 0; b < s.blocks.size(); ++b) {
    m.col_labels.push_back(block_str(s.blocks[b]));
    for (int w : s.blocks[b]) m.at(w - 1, static_cast<int>(b)) = 1;
  }
  return m;
}

SimpleGraph gamma_graph(const FiniteMonoid& m, const JClassInfo& j) {
  std::set<std::pair<int, int>> edges;
  for (int ei : j.idempotents) {
    std::vector<int> img = image_set(m.elements[ei]);
    for (std::size_t a = 0; a < img.size(); ++a)
      for (std::size_t b = a + 1; b < img.size(); ++b)
        edges.emplace(img[a], img[b]);
  }
  SimpleGraph g;
  g.n = m.n;
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

std::vector<std::vector<int>> components(const SimpleGraph& g) {
  std::vector<int> parent(g.n + 1);
  for (int v = 1; v <= g.n; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [a, b] : g.edges) parent[find(a)] = find(b);

  std::map<int, std::vector<int>> by_root;
  for (int v = 1; v <= g.n; ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, verts] : by_root) out.push_back(std::move(verts));
  return out;
}

bool is_connected(const SimpleGraph& g) { return components(g).size() == 1; }

std::vector<std::vector<Rational>> wperp(const SetSystem& s) {
  RationalMatrix constraints(static_cast<int>(s.blocks.size()), s.n);
  for (std::size_t b = 0; b < s.blocks.size(); ++b)
    for (int w : s.blocks[b]) constraints.at(static_cast<int>(b), w - 1) = 1;
  return nullspace(constraints);
}

ConditionResult check_condition3(const FiniteMonoid& m, const JClassInfo& j) {
  if (j.idempotents.empty())
    throw std::invalid_argument("check_condition3: class has no idempotents");
  const Transformation& e = m.elements[j.idempotents.front()];
  std::vector<int> img = image_set(e);
  if (img.size() == 2)
    return {CondStatus::pass, "two points fixed: one-dimensional zero-sum space"};
  PermGroup h = maximal_subgroup(m, e);
  if (is_two_transitive(h))
    return {CondStatus::pass,
            "point stabilizer group of order " + std::to_string(h.perms.size()) +
                " is 2-transitive on " + std::to_string(img.size()) + " points"};
  return {CondStatus::fail,
          "point stabilizer group of order " + std::to_string(h.perms.size()) +
              " is not 2-transitive on " + std::to_string(img.size()) + " points"};
}

SimplicityReport simplicity_report(const FiniteMonoid& m) {
  SimplicityReport rep;
  rep.n = m.n;

  GreenStructure green = green_structure(m);
  if (green.j_classes.size() == 1) throw group_input_error();

  // Condition 1: a constant map is present.
  {
    auto it = std::find_if(m.elements.begin(), m.elements.end(),
                           [](const Transformation& t) { return is_constant(t); });
    if (it != m.elements.end())
      rep.conditions[0] = {CondStatus::pass, "contains constant " + map_str(*it)};
    else
      rep.conditions[0] = {CondStatus::fail, "no constant map"};
  }

  // Condition 2: unique minimal class above the ideal, and it is regular.
  ZeroMinimal zm = zero_minimal_jclass(m, green);
  if (!zm.jclass) {
    rep.conditions[1] = {CondStatus::fail,
                         std::to_string(zm.minimal_class_ids.size()) +
                             " incomparable minimal classes above the ideal"};
  } else if (!zm.jclass->is_regular) {
    rep.conditions[1] = {CondStatus::fail, "minimal class above the ideal is not regular"};
    rep.jclass = zm.jclass;
  } else {
    rep.conditions[1] = {CondStatus::pass,
                         "unique regular minimal class of rank " +
                             std::to_string(zm.jclass->rank) + " with " +
                             std::to_string(zm.jclass->elements.size()) + " elements"};
    rep.jclass = zm.jclass;
  }

  if (rep.conditions[0].status != CondStatus::pass ||
      rep.conditions[1].status != CondStatus::pass) {
    rep.verdict = Verdict::not_simple;
    return rep;
  }

  const JClassInfo& j = *rep.jclass;
  rep.conditions[2] = check_condition3(m, j);

  rep.system = set_system(m, j);
  RationalMatrix inc = incidence_matrix(rep.system);
  rep.incidence_rank = rank(inc);
  rep.wperp_basis = wperp(rep.system);
  if ((rep.incidence_rank == m.n) != rep.wperp_basis.empty())
    throw std::logic_error("incidence rank and zero-sum complement disagree");
  if (rep.incidence_rank == m.n)
    rep.conditions[3] = {CondStatus::pass,
                         "incidence rank " + std::to_string(rep.incidence_rank) +
                             " of " + std::to_string(m.n)};
  else
    rep.conditions[3] = {CondStatus::fail,
                         "incidence rank " + std::to_string(rep.incidence_rank) +
                             " of " + std::to_string(m.n) + "; complement dimension " +
                             std::to_string(rep.wperp_basis.size())};

  rep.graph = gamma_graph(m, j);
  if (is_connected(rep.graph)) {
    rep.conditions[4] = {CondStatus::pass,
                         "connected on " + std::to_string(m.n) + " vertices with " +
                             std::to_string(rep.graph.edges.size()) + " edges"};
  } else {
    auto comps = components(rep.graph);
    std::string ev = "disconnected:";
    for (const auto& c : comps) ev += ' ' + block_str(c);
    rep.conditions[4] = {CondStatus::fail, ev};
  }

  bool all_pass = true, any_fail = false;
  for (const auto& c : rep.conditions) {
    all_pass = all_pass && c.status == CondStatus::pass;
    any_fail = any_fail || c.status == CondStatus::fail;
  }
  rep.verdict = all_pass ? Verdict::simple
                         : (any_fail ? Verdict::not_simple : Verdict::undetermined);
  return rep;
}

bool check_bound_B(std::size_t partition_count, int r, int n, bool simple) {
  if (!simple) return true;
  if (partition_count == 1) return n == r;
  return n < r * static_cast<int>(partition_count);
}

std::vector<Rational> act(const Transformation& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(v.size(), Rational(0));
  for (std::size_t w = 0; w < v.size(); ++w)
    out[m(static_cast<int>(w) + 1) - 1] += v[w];
  return out;
}

namespace {

// Incremental row-echelon accumulator over exact rationals.
class SpanBasis {
 public:
  // Returns true when v enlarged the span.
  bool add(std::vector<Rational> v) {
    for (const auto& row : rows_) {
      int p = pivot_of(row);
      if (v[p] != 0) {
        Rational f = v[p] / row[p];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * row[i];
      }
    }
    int p = -1;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        p = static_cast<int>(i);
        break;
      }
    if (p < 0) return false;
    rows_.push_back(std::move(v));
    return true;
  }

  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }

 private:
  static int pivot_of(const std::vector<Rational>& row) {
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) return static_cast<int>(i);
    return -1;
  }
  std::vector<std::vector<Rational>> rows_;
};

}  // namespace

std::optional<FalsifierWitness> cyclic_submodule_falsifier(const FiniteMonoid& m,
                                                           int trials,
                                                           std::uint32_t seed) {
  const int n = m.n;
  if (n < 2) return std::nullopt;

  std::vector<std::vector<Rational>> candidates;

  // Structured candidates: the zero-sum complement of the block system and
  // the edge differences of the graph, when the bottom class is available.
  try {
    GreenStructure green = green_structure(m);
    if (green.j_classes.size() > 1) {
      ZeroMinimal zm = zero_minimal_jclass(m, green);
      if (zm.jclass && zm.jclass->is_regular && !zm.jclass->idempotents.empty()) {
        for (auto& v : wperp(set_system(m, *zm.jclass))) candidates.push_back(std::move(v));
        for (auto [a, b] : gamma_graph(m, *zm.jclass).edges) {
          std::vector<Rational> v(n, Rational(0));
          v[a - 1] = 1;
          v[b - 1] = -1;
          candidates.push_back(std::move(v));
        }
      }
    }
  } catch (const std::exception&) {
    // Structured candidates are a bonus; fall through to random trials.
  }

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> v(n);
    while (true) {
      int sum = 0;
      bool zero = true;
      std::vector<int> draw(n);
      for (int i = 0; i < n; ++i) {
        draw[i] = entry(rng);
        sum += draw[i];
        zero = zero && draw[i] == 0;
      }
      if (sum != 0 || zero) continue;
      for (int i = 0; i < n; ++i) v[i] = draw[i];
      break;
    }
    candidates.push_back(std::move(v));
  }

  for (const auto& v : candidates) {
    SpanBasis span;
    for (const auto& elem : m.elements) span.add(act(elem, v));
    if (span.dim() < static_cast<std::size_t>(n - 1)) {
      FalsifierWitness w;
      w.vec = v;
      w.span_basis = span.rows();
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace augsimp
