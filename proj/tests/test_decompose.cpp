#include <doctest.h>

#include "fixtures.hpp"
#include "substoch/decompose.hpp"
#include "substoch/errors.hpp"
#include "substoch/io.hpp"

using namespace substoch;
using fixtures::grid;
using fixtures::perm;
using fixtures::q;

namespace {

// The trailing side-n block of every term, shifted back to the origin.
ConvexCombination trailing_block(const ConvexCombination& combo, std::size_t k) {
  ConvexCombination out{combo.side - k, {}};
  for (const auto& [w, p] : combo.terms) {
    std::vector<std::optional<std::size_t>> a(out.side);
    for (std::size_t r = 0; r < out.side; ++r) {
      const auto& c = p.assignment()[k + r];
      if (c && *c >= k) a[r] = *c - k;
    }
    out.terms.push_back({w, Subpermutation(out.side, std::move(a))});
  }
  return out;
}

}  // namespace

TEST_CASE("Subpermutation invariants") {
  CHECK_THROWS_AS(Subpermutation(2, {0u, 0u}), ValidationError);
  CHECK_THROWS_AS(Subpermutation(2, {2u, std::nullopt}), ValidationError);
  CHECK_THROWS_AS(Subpermutation::from_pairs(2, {{0, 0}, {0, 1}}), ValidationError);
  CHECK(Subpermutation::zero(3).rank() == 0);
  CHECK(Subpermutation::identity(3).is_permutation());
  CHECK(perm(2, {{2, 1}}).to_matrix() == grid({{"0", "0"}, {"1", "0"}}));
}

TEST_CASE("greedy_birkhoff") {
  const auto half = greedy_birkhoff(grid({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  REQUIRE(half.size() == 2);
  CHECK(half.terms[0].weight == q("1/2"));
  CHECK(half.terms[0].term == Subpermutation::identity(2));
  CHECK(half.terms[1].weight == q("1/2"));
  CHECK(half.terms[1].term == perm(2, {{1, 2}, {2, 1}}));

  const Matrix p = grid({{"0", "1", "0"}, {"0", "0", "1"}, {"1", "0", "0"}});
  const auto single = greedy_birkhoff(p);
  REQUIRE(single.size() == 1);
  CHECK(single.terms[0].weight == 1);
  CHECK(single.terms[0].term.to_matrix() == p);

  const auto a = greedy_birkhoff(fixtures::example_a_completion());
  CHECK(a.size() <= 6);
  CHECK(verify_combination(fixtures::example_a_completion(), a).ok);

  CHECK_THROWS_AS(greedy_birkhoff(fixtures::example_a()), ValidationError);
}

TEST_CASE("caratheodory_reduce") {
  // All six permutations of side 3, weight 1/6 each.
  ConvexCombination all{3, {}};
  std::vector<std::size_t> sigma{0, 1, 2};
  do {
    all.terms.push_back({q("1/6"), Subpermutation(3, {sigma[0], sigma[1], sigma[2]})});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  const auto reduced = caratheodory_reduce(all, SupportPattern::full(3));
  CHECK(reduced.size() <= 5);
  CHECK(reduced.value() == all.value());
  CHECK(verify_combination(all.value(), reduced).ok);

  const auto two = greedy_birkhoff(grid({{"1/2", "1/2"}, {"1/2", "1/2"}}));
  const auto same = caratheodory_reduce(two, SupportPattern::full(2));
  CHECK(same.size() == 2);

  const auto expansion = fixtures::example_a_completion_expansion();
  const auto face = support_pattern(fixtures::example_a_completion());
  const auto kept = caratheodory_reduce(expansion, face);
  CHECK(kept.size() == 4);
  CHECK(kept.value() == expansion.value());

  CHECK_THROWS_AS(caratheodory_reduce(two, SupportPattern::identity(2)), ValidationError);
}

TEST_CASE("truncate_and_merge") {
  const auto truncated = truncate_and_merge(fixtures::example_a_completion_expansion(), 2);
  const auto expected = fixtures::example_a_expansion();
  REQUIRE(truncated.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(truncated.terms[i].weight == expected.terms[i].weight);
    CHECK(truncated.terms[i].term == expected.terms[i].term);
  }

  const auto known = fixtures::example_a_expansion();
  const auto same = truncate_and_merge(known, 2);
  CHECK(same.value() == known.value());
  CHECK(same.size() == known.size());

  ConvexCombination pair{3,
                         {{q("1/3"), perm(3, {{1, 1}, {2, 2}, {3, 3}})},
                          {q("2/3"), perm(3, {{1, 1}, {2, 3}, {3, 2}})}}};
  const auto merged = truncate_and_merge(pair, 2);
  // Rows 1..2 agree on the leading 2×2 block only up to row 2's column 3.
  CHECK(merged.value() == pair.value().block(0, 0, 2, 2));
  ConvexCombination agree{3,
                          {{q("1/3"), perm(3, {{1, 1}, {2, 2}, {3, 3}})},
                           {q("2/3"), perm(3, {{1, 1}, {2, 2}})}}};
  const auto one = truncate_and_merge(agree, 2);
  REQUIRE(one.size() == 1);
  CHECK(one.terms[0].weight == 1);
  CHECK(one.terms[0].term == Subpermutation::identity(2));

  CHECK_THROWS_AS(truncate_and_merge(known, 3), ValidationError);
}

TEST_CASE("decompose_substochastic on the tight example") {
  const auto rep = decompose_substochastic(validate_substochastic(fixtures::example_a()));
  CHECK(rep.term_count <= 4);
  CHECK(rep.bound == 4);
  CHECK(rep.t == 1);
  CHECK(rep.face_dim == 3);
  CHECK(verify_combination(fixtures::example_a(), rep.combination).ok);
}

TEST_CASE("decompose_substochastic on identity and on the worked example") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto rep = decompose_substochastic(validate_substochastic(Matrix::identity(n)));
    REQUIRE(rep.term_count == 1);
    CHECK(rep.combination.terms[0].weight == 1);
    CHECK(rep.combination.terms[0].term == Subpermutation::identity(n));
  }

  const auto rep = decompose_substochastic(validate_substochastic(fixtures::example_d()));
  CHECK(rep.t == fixtures::bipartite_components(support_pattern(fixtures::example_d_completion())));
  CHECK(rep.term_count <= 11 + rep.t);
  CHECK(rep.combination.value() == fixtures::example_d());
  CHECK(verify_combination(fixtures::example_d(), rep.combination).ok);
  CHECK(rep.reduced_count <= static_cast<std::size_t>(rep.face_dim + 1));
}

TEST_CASE("bound") {
  CHECK(bound(validate_substochastic(fixtures::example_a())) == 4);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(bound(validate_substochastic(Matrix::identity(n))) == 2 * n);
    CHECK(bound(validate_substochastic(Matrix::zero(n, n))) == 2 * n);
  }
}

TEST_CASE("verify_combination") {
  CHECK(verify_combination(fixtures::example_a(), fixtures::example_a_expansion()).ok);

  ConvexCombination short_weights{2,
                                  {{q("1/2"), Subpermutation::identity(2)},
                                   {q("1/3"), Subpermutation::zero(2)}}};
  const auto sum = verify_combination(Matrix::identity(2), short_weights);
  CHECK_FALSE(sum.ok);
  CHECK(sum.failure == "weights sum 5/6 != 1");

  auto wrong = fixtures::example_a_expansion();
  wrong.terms[0].term = perm(2, {{1, 2}});
  const auto mismatch = verify_combination(fixtures::example_a(), wrong);
  CHECK_FALSE(mismatch.ok);
  CHECK(mismatch.failure == "reconstruction mismatch at (1,2): expected 0, got 1/6");

  auto negative = fixtures::example_a_expansion();
  negative.terms[0].weight = 0;
  CHECK(verify_combination(fixtures::example_a(), negative).failure ==
        "weight 1 is 0, not positive");
  CHECK_FALSE(verify_combination(Matrix::identity(3), fixtures::example_a_expansion()).ok);
}

TEST_CASE("scale_decomposition") {
  const auto known = fixtures::example_a_expansion();
  const auto third = scale_decomposition(known, q("1/3"));
  REQUIRE(third.size() == 5);
  CHECK(third.terms[0].weight == q("1/18"));
  CHECK(third.terms[1].weight == q("1/12"));
  CHECK(third.terms[2].weight == q("1/12"));
  CHECK(third.terms[3].weight == q("1/9"));
  CHECK(third.terms[4].weight == q("2/3"));
  CHECK(third.terms[4].term == Subpermutation::zero(2));
  CHECK(verify_combination(q("1/3") * fixtures::example_a(), third).ok);

  const auto one = scale_decomposition(known, 1);
  CHECK(one.size() == known.size());
  CHECK(one.value() == known.value());

  const auto zero = scale_decomposition(known, 0);
  REQUIRE(zero.size() == 1);
  CHECK(zero.terms[0].weight == 1);
  CHECK(zero.terms[0].term == Subpermutation::zero(2));

  // An existing zero term absorbs the new weight.
  const auto twice = scale_decomposition(third, q("1/2"));
  CHECK(twice.size() == 5);
  CHECK(verify_combination(q("1/6") * fixtures::example_a(), twice).ok);

  CHECK_THROWS_AS(scale_decomposition(known, q("3/2")), ValidationError);
  CHECK_THROWS_AS(scale_decomposition(known, q("-1/2")), ValidationError);
}

TEST_CASE("direct_sum_lift") {
  const auto lifted = direct_sum_lift(fixtures::example_a_expansion(), 2);
  REQUIRE(lifted.size() == 4);
  CHECK(lifted.side == 4);
  const std::vector<Matrix> displayed{
      grid({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "1", "0"}}),
      grid({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}}),
      grid({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "1"}}),
      grid({{"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "0"}})};
  const std::vector<Rational> weights{q("1/6"), q("1/4"), q("1/4"), q("1/3")};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(lifted.terms[i].term.to_matrix() == displayed[i]);
    CHECK(lifted.terms[i].weight == weights[i]);
  }

  const auto same = direct_sum_lift(fixtures::example_a_expansion(), 0);
  CHECK(same.value() == fixtures::example_a());

  ConvexCombination id{2, {{Rational(1), Subpermutation::identity(2)}}};
  const auto big = direct_sum_lift(id, 3);
  REQUIRE(big.size() == 1);
  CHECK(big.terms[0].term == Subpermutation::identity(5));
}

TEST_CASE("pipeline properties on random inputs") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const auto b = io::random_substochastic(n, make_rational(1 + static_cast<long>(seed % 4), 4),
                                            500 + seed);
    CAPTURE(seed);
    const auto rep = decompose_substochastic(b);
    const std::size_t side = n + b.sub_defect();

    CHECK(rep.combination.value() == b.matrix());
    CHECK(verify_combination(b.matrix(), rep.combination).ok);
    CHECK(verify_combination(rep.completion.full(), rep.completion_combination).ok);
    CHECK(rep.term_count <= rep.bound);
    CHECK(rep.greedy_count_before_reduction + side <= rep.completion.full().nnz() + 1);
    CHECK(rep.reduced_count <= rep.greedy_count_before_reduction);
    CHECK(static_cast<long>(rep.reduced_count) <= rep.face_dim + 1);
    CHECK(rep.face_dim + 1 <= static_cast<long>(rep.nnz + rep.t));
    CHECK(rep.bound == bound(b));

    const auto unreduced = decompose_substochastic(b, DecomposeOptions{false});
    CHECK(unreduced.reduced_count == unreduced.greedy_count_before_reduction);
    CHECK(unreduced.combination.value() == b.matrix());

    const Rational c = make_rational(static_cast<long>(seed % 5), 4);
    const auto scaled = scale_decomposition(rep.combination, c);
    CHECK(verify_combination(c * b.matrix(), scaled).ok);
    CHECK(scaled.size() <= rep.combination.size() + 1);

    const std::size_t k = seed % 3;
    const auto lifted = direct_sum_lift(rep.combination, k);
    CHECK(lifted.size() == rep.combination.size());
    const auto back = trailing_block(lifted, k);
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back.terms[i].term == rep.combination.terms[i].term);
      CHECK(back.terms[i].weight == rep.combination.terms[i].weight);
    }
  }
}
