#include <doctest.h>

#include <cmath>
#include <numeric>

#include "iota/oracle.hpp"
#include "test_util.hpp"

using namespace iota;

TEST_CASE("expand: single node") {
  auto tree = ChowLiuTree::from_parameters(testutil::make_vocab(1), {-1}, 0,
                                           {0.3, 0.7}, {{}});
  DenseJoint j = expand(tree);
  CHECK(j.table[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(j.table[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("expand: two independent nodes give the outer product") {
  std::vector<std::array<std::array<double, 2>, 2>> cpt(2);
  cpt[1] = {{{0.6, 0.4}, {0.6, 0.4}}};  // independent of parent
  auto tree = ChowLiuTree::from_parameters(testutil::make_vocab(2), {-1, 0}, 0,
                                           {0.2, 0.8}, cpt);
  DenseJoint j = expand(tree);
  CHECK(j.table[0b00] == doctest::Approx(0.2 * 0.6).epsilon(1e-12));
  CHECK(j.table[0b01] == doctest::Approx(0.8 * 0.6).epsilon(1e-12));
  CHECK(j.table[0b10] == doctest::Approx(0.2 * 0.4).epsilon(1e-12));
  CHECK(j.table[0b11] == doctest::Approx(0.8 * 0.4).epsilon(1e-12));
}

TEST_CASE("expand: marginalization reproduces stored node marginals") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    int d = 2 + static_cast<int>(rng.next_index(9));
    auto tree = testutil::random_tree(d, rng);
    DenseJoint j = expand(tree);
    double total = std::accumulate(j.table.begin(), j.table.end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 0; n < d; ++n) {
      auto m = exact_marginal(j, n);
      CHECK(m[1] == doctest::Approx(tree.dist().marginal[n][1]).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact_entropy: uniform and point mass") {
  DenseJoint uniform;
  uniform.d = 4;
  uniform.table.assign(16, 1.0 / 16.0);
  CHECK(exact_entropy(uniform) == doctest::Approx(4.0).epsilon(1e-12));

  DenseJoint point;
  point.d = 3;
  point.table.assign(8, 0.0);
  point.table[5] = 1.0;
  CHECK(exact_entropy(point) == doctest::Approx(0.0));
}

TEST_CASE("exact_condition: empty evidence is the identity") {
  Rng rng(11);
  auto tree = testutil::random_tree(5, rng);
  DenseJoint j = expand(tree);
  DenseJoint c = exact_condition(j, std::vector<int>{});
  for (std::size_t i = 0; i < j.table.size(); ++i)
    CHECK(c.table[i] == doctest::Approx(j.table[i]).epsilon(1e-12));
}

TEST_CASE("exact_condition: conditioning on every label gives a point mass") {
  Rng rng(13);
  auto tree = testutil::random_tree(4, rng);
  DenseJoint j = expand(tree);
  std::vector<int> all = {0, 1, 2, 3};
  DenseJoint c = exact_condition(j, all);
  CHECK(c.table[0b1111] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exact_entropy(c) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("exact_condition: zero-probability evidence throws") {
  DenseJoint j;
  j.d = 2;
  j.table = {0.5, 0.5, 0.0, 0.0};  // label 1 never true
  CHECK_THROWS_AS(exact_condition(j, std::vector<int>{1}), ZeroProbabilityEvidence);
}

TEST_CASE("exact_kl: zero against itself, infinite against a zero cell") {
  Rng rng(17);
  auto tree = testutil::random_tree(5, rng);
  DenseJoint j = expand(tree);
  CHECK(exact_kl(j, j) == doctest::Approx(0.0));

  DenseJoint p = j;
  DenseJoint q = j;
  p.table[3] = 0.0;
  CHECK(std::isinf(exact_kl(q, p)));
}

TEST_CASE("exhaustive_best_tree: d=2 single edge, d=3 direct comparison") {
  std::vector<std::vector<double>> w2 = {{0, 1}, {1, 0}};
  CHECK(exhaustive_best_tree(w2) ==
        std::vector<std::pair<int, int>>{{0, 1}});

  // Three possible trees on 3 nodes; weights make {0-1, 1-2} the best.
  std::vector<std::vector<double>> w3 = {{0, 5, 1}, {5, 0, 4}, {1, 4, 0}};
  auto best = exhaustive_best_tree(w3);
  CHECK(best == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("exhaustive_best_tree: enumeration count sanity via degenerate weights") {
  // With all-equal weights any tree is optimal; just confirm a spanning tree
  // of the right size comes back for each d.
  for (int d = 3; d <= 6; ++d) {
    std::vector<std::vector<double>> w(d, std::vector<double>(d, 1.0));
    auto best = exhaustive_best_tree(w);
    CHECK(best.size() == static_cast<std::size_t>(d - 1));
  }
}

TEST_CASE("exhaustive_best_tree rejects d outside 2..6") {
  std::vector<std::vector<double>> w1 = {{0.0}};
  CHECK_THROWS_AS(exhaustive_best_tree(w1), InvalidArgument);
  std::vector<std::vector<double>> w7(7, std::vector<double>(7, 0.0));
  CHECK_THROWS_AS(exhaustive_best_tree(w7), InvalidArgument);
}

TEST_CASE("expand rejects d > 20") {
  Rng rng(3);
  auto tree = testutil::random_tree(21, rng);
  CHECK_THROWS_AS(expand(tree), InvalidArgument);
}
