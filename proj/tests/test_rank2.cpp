#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "augsimp/rank2.hpp"

using namespace augsimp;

namespace {

Transformation t(std::vector<int> img) { return Transformation(std::move(img)); }

FiniteMonoid full_t3() {
  return generate_closure({t({2, 3, 1}), t({2, 1, 3}), t({1, 1, 2})}, 100);
}

FiniteMonoid disconnected4() {
  return generate_closure({t({1, 2, 1, 2}), t({3, 4, 3, 4}), t({1, 1, 1, 1})}, 100);
}

JClassInfo bottom_class(const FiniteMonoid& m) {
  auto zm = zero_minimal_jclass(m);
  REQUIRE(zm.jclass.has_value());
  return *zm.jclass;
}

using Rows = std::vector<std::vector<Rational>>;

Rows rows_of(const RationalMatrix& m) {
  Rows rows(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) rows[i].push_back(m.at(i, j));
  return rows;
}

}  // namespace

TEST_CASE("difference set lists edges in order") {
  SimpleGraph path;
  path.n = 3;
  path.edges = {{1, 2}, {2, 3}};
  CHECK(difference_set(path) == DifferenceSet{{1, 2}, {2, 3}});

  SimpleGraph k3;
  k3.n = 3;
  k3.edges = {{1, 2}, {1, 3}, {2, 3}};
  CHECK(difference_set(k3) == DifferenceSet{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("signed incidence takes row differences") {
  auto id3 = RationalMatrix::identity(3);
  auto m = signed_incidence(id3, {{1, 2}});
  CHECK(rows_of(m) == Rows{{1, -1, 0}});
  CHECK(m.row_labels == std::vector<std::string>{"1-2"});

  CHECK(signed_incidence(id3, {}).rows == 0);
  CHECK_THROWS_AS(signed_incidence(id3, {{1, 4}}), std::out_of_range);
}

TEST_CASE("signed incidence of the full-monoid system over the complete graph") {
  auto m = full_t3();
  auto inc = incidence_matrix(set_system(m, bottom_class(m)));
  auto d = difference_set(gamma_graph(m, bottom_class(m)));
  auto signed_inc = signed_incidence(inc, d);
  CHECK(signed_inc.rows == 3);
  CHECK(signed_inc.cols == 6);
  CHECK(rank(signed_inc) == 2);
  for (const auto& e : signed_inc.entries)
    CHECK((e == -1 || e == 0 || e == 1));
}

TEST_CASE("rank-two coordinates of the full monoid on three points") {
  auto m = full_t3();
  auto r = sandwich_data(m, bottom_class(m));
  CHECK(r.group_order == 2);
  CHECK(r.n1_kernels == std::vector<std::vector<int>>{{1, 2}, {1, 3}, {1}});
  CHECK(r.n1_complements == std::vector<std::vector<int>>{{3}, {2}, {2, 3}});
  CHECK(r.n2_images == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}});
  using E = GroupEntry;
  CHECK(r.p == std::vector<std::vector<E>>{{E::zero, E::one, E::one},
                                           {E::one, E::zero, E::one},
                                           {E::one, E::g, E::zero}});
}

TEST_CASE("rank-two coordinates of the single-kernel example") {
  auto m = disconnected4();
  auto r = sandwich_data(m, bottom_class(m));
  CHECK(r.n1_kernels == std::vector<std::vector<int>>{{1, 3}});
  CHECK(r.n2_images == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
  using E = GroupEntry;
  CHECK(r.p == std::vector<std::vector<E>>{{E::one}, {E::one}});
}

TEST_CASE("rank-two coordinates reject wrong ranks and irregular classes") {
  auto sym = generate_closure({t({2, 3, 1}), t({2, 1, 3}), t({1, 1, 1})}, 100);
  CHECK_THROWS_AS(sandwich_data(sym, bottom_class(sym)), std::invalid_argument);
}

TEST_CASE("signed structure matrix goldens") {
  auto m = full_t3();
  auto pp = signed_sandwich(sandwich_data(m, bottom_class(m)));
  CHECK(rows_of(pp) == Rows{{0, 1, 1}, {1, 0, 1}, {1, -1, 0}});
  CHECK(rank(pp) == 2);
  CHECK(pp.col_labels == std::vector<std::string>{"{1,2}", "{1,3}", "{1}"});
  CHECK(pp.row_labels == std::vector<std::string>{"(1,2)", "(1,3)", "(2,3)"});

  auto d = disconnected4();
  auto pd = signed_sandwich(sandwich_data(d, bottom_class(d)));
  CHECK(rows_of(pd) == Rows{{1}, {1}});
  CHECK(rank(pd) == 1);
}

TEST_CASE("verdict by rank: simple cases") {
  auto res = rank2_verdict(full_t3());
  CHECK(res.pprime_rank == 2);
  CHECK(res.verdict == Verdict::simple);

  auto two = rank2_verdict(generate_closure({t({2, 1}), t({1, 1})}, 10));
  CHECK(two.data.n1_kernels == std::vector<std::vector<int>>{{1}});
  CHECK(two.data.n2_images == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(two.pprime_rank == 1);
  CHECK(two.verdict == Verdict::simple);
}

TEST_CASE("verdict by rank: not-simple case agrees with the five conditions") {
  auto m = disconnected4();
  auto res = rank2_verdict(m);
  CHECK(res.pprime_rank == 1);
  CHECK(res.verdict == Verdict::not_simple);
  CHECK(simplicity_report(m).verdict == Verdict::not_simple);
}

TEST_CASE("hypothesis violations are named") {
  try {
    rank2_verdict(generate_closure({t({1, 2, 1, 2})}, 10));
    FAIL("expected no-constant");
  } catch (const hypothesis_error& e) {
    CHECK(e.kind == "no-constant");
  }

  try {
    rank2_verdict(generate_closure(
        {t({1, 1, 1, 4, 4}), t({2, 2, 3, 2, 3}), t({1, 1, 1, 1, 1})}, 500));
    FAIL("expected no-unique-minimal");
  } catch (const hypothesis_error& e) {
    CHECK(e.kind == "no-unique-minimal");
  }

  try {
    rank2_verdict(generate_closure({t({2, 3, 1}), t({2, 1, 3}), t({1, 1, 1})}, 100));
    FAIL("expected rank-not-2");
  } catch (const hypothesis_error& e) {
    CHECK(e.kind == "rank-not-2");
  }

  CHECK_THROWS_AS(rank2_verdict(generate_closure({t({2, 3, 1})}, 10)), group_input_error);
}

TEST_CASE("structure matrix columns sit inside the signed incidence matrix") {
  for (auto m : {full_t3(), disconnected4(),
                 generate_closure({t({1, 2, 1}), t({1, 2, 2}), t({1, 1, 1})}, 50)}) {
    auto j = bottom_class(m);
    auto r = sandwich_data(m, j);
    auto pp = signed_sandwich(r);
    auto s = set_system(m, j);
    auto inc = incidence_matrix(s);
    auto signed_inc = signed_incidence(inc, difference_set(gamma_graph(m, j)));

    // The graph's edges are exactly the image pairs.
    REQUIRE(difference_set(gamma_graph(m, j)) == r.n2_images);

    auto col_index = [&](const std::vector<int>& block) {
      auto it = std::find(s.blocks.begin(), s.blocks.end(), block);
      REQUIRE(it != s.blocks.end());
      return static_cast<int>(it - s.blocks.begin());
    };
    for (std::size_t k = 0; k < r.n1_kernels.size(); ++k) {
      int cb = col_index(r.n1_kernels[k]);
      int cc = col_index(r.n1_complements[k]);
      for (int row = 0; row < pp.rows; ++row) {
        CHECK(pp.at(row, static_cast<int>(k)) == signed_inc.at(row, cb));
        CHECK(signed_inc.at(row, cc) == -signed_inc.at(row, cb));
      }
    }
  }
}

TEST_CASE("borderline instance: full incidence rank but deficient structure rank") {
  // Two kernels with crossing pair-images plus a rank-two map gluing point
  // sets: every point is separated, yet the graph stays disconnected.
  auto m = generate_closure(
      {t({1, 2, 1, 2}), t({4, 3, 3, 4}), t({1, 2, 2, 2}), t({1, 1, 1, 1})}, 100);
  REQUIRE(m.size() == 17);

  auto rep = simplicity_report(m);
  CHECK(rep.incidence_rank == 4);
  CHECK(rep.conditions[3].status == CondStatus::pass);
  CHECK(rep.conditions[4].status == CondStatus::fail);
  CHECK(rep.verdict == Verdict::not_simple);

  auto res = rank2_verdict(m);
  CHECK(res.data.n1_kernels ==
        std::vector<std::vector<int>>{{1, 3}, {1, 4}, {1}});
  CHECK(rows_of(res.pprime) == Rows{{1, 1, 1}, {1, -1, 0}});
  CHECK(res.pprime_rank == 2);
  CHECK(res.verdict == Verdict::not_simple);
  // Verdicts agree even though incidence rank alone would suggest otherwise.
}

TEST_CASE("minimal borderline instance on three points") {
  auto m = generate_closure({t({1, 2, 1}), t({1, 2, 2}), t({1, 1, 1})}, 50);
  auto rep = simplicity_report(m);
  CHECK(rep.incidence_rank == 3);
  CHECK(rep.verdict == Verdict::not_simple);
  auto res = rank2_verdict(m);
  CHECK(res.pprime_rank == 1);
  CHECK(res.verdict == Verdict::not_simple);
}

TEST_CASE("random spanning trees preserve or break the rank equivalence") {
  auto m = full_t3();
  auto j = bottom_class(m);
  auto inc = incidence_matrix(set_system(m, j));
  auto g = gamma_graph(m, j);
  REQUIRE(rank(inc) == 3);

  std::mt19937 rng(42u);
  for (int trial = 0; trial < 8; ++trial) {
    auto tree = random_spanning_tree(g, rng);
    CHECK(tree.edges.size() == 2);
    CHECK(is_connected(tree));
    for (auto e : tree.edges)
      CHECK(std::find(g.edges.begin(), g.edges.end(), e) != g.edges.end());
    CHECK(rank(signed_incidence(inc, difference_set(tree))) == 2);
  }
}

TEST_CASE("disconnected graphs with n-1 edges lose rank") {
  std::mt19937 rng(43u);
  CHECK_FALSE(random_disconnected_graph(3, rng).has_value());

  SetSystem singles;
  singles.n = 5;
  for (int w = 1; w <= 5; ++w) {
    singles.blocks.push_back({w});
    singles.provenance.push_back("test");
  }
  auto inc = incidence_matrix(singles);
  REQUIRE(rank(inc) == 5);
  for (int trial = 0; trial < 8; ++trial) {
    auto g = random_disconnected_graph(5, rng);
    REQUIRE(g.has_value());
    CHECK(g->edges.size() == 4);
    CHECK_FALSE(is_connected(*g));
    CHECK(rank(signed_incidence(inc, difference_set(*g))) < 4);
  }
}

TEST_CASE("group entry rendering") {
  CHECK(group_entry_str(GroupEntry::zero) == "0");
  CHECK(group_entry_str(GroupEntry::one) == "1");
  CHECK(group_entry_str(GroupEntry::g) == "g");
}
