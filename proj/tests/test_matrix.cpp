#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "substoch/errors.hpp"
#include "substoch/io.hpp"
#include "substoch/linalg.hpp"

using namespace substoch;
using fixtures::q;

TEST_CASE("rational_from_text reads exact decimals and fractions") {
  CHECK(rational_from_text("0.1") == Rational(1, 10));
  CHECK(rational_from_text("7/12") == Rational(7, 12));
  CHECK(rational_from_text("1.25") == Rational(5, 4));
  CHECK(rational_from_text("-3") == -3);
  CHECK(rational_from_text("-0.50") == Rational(-1, 2));
  CHECK(rational_from_text("6/8") == Rational(3, 4));
  CHECK(to_string(rational_from_text("6/8")) == "3/4");
}

TEST_CASE("rational_from_text rejects malformed input") {
  for (const char* bad : {"", "-", "1.", ".5", "1/0", "a", "1/2/3", "1e3", "+1", "1 /2", "--1",
                          "0x10"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(rational_from_text(bad), ParseError);
  }
}

TEST_CASE("parse, print, parse is the identity") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const long num = static_cast<long>(rng() % 2001) - 1000;
    const long den = static_cast<long>(rng() % 97) + 1;
    const Rational canonical = make_rational(num, den);
    const auto text = to_string(canonical);
    CHECK(rational_from_text(text) == canonical);
    CHECK(to_string(rational_from_text(text)) == text);
  }
}

TEST_CASE("sigma") {
  CHECK(sigma(fixtures::example_d()) == Rational(9, 5));
  CHECK(sigma(Matrix::zero(3, 3)) == 0);
  CHECK(sigma(fixtures::example_a()) == Rational(5, 4));
}

TEST_CASE("line_sums") {
  const auto d = line_sums(fixtures::example_d());
  CHECK(d.rows == std::vector<Rational>{q("2/5"), q("3/10"), q("3/10"), q("4/5")});
  CHECK(d.cols == std::vector<Rational>{q("2/5"), q("2/5"), q("3/5"), q("2/5")});
  const auto id = line_sums(Matrix::identity(2));
  CHECK(id.rows == std::vector<Rational>{1, 1});
  CHECK(id.cols == std::vector<Rational>{1, 1});
  const auto z = line_sums(Matrix::zero(2, 2));
  CHECK(z.rows == std::vector<Rational>{0, 0});
}

TEST_CASE("validate_substochastic") {
  const auto d = validate_substochastic(fixtures::example_d());
  CHECK(d.sub_defect() == 3);
  CHECK(d.sigma() == Rational(9, 5));
  CHECK(validate_substochastic(Matrix::identity(2)).sub_defect() == 0);

  try {
    validate_substochastic(fixtures::grid({{"1", "1/2"}, {"0", "0"}}));
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "row 1 sum 3/2 > 1 (excess 1/2)");
  }
  try {
    validate_substochastic(fixtures::grid({{"1/2", "0"}, {"-1/3", "0"}}));
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(2,1)") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(validate_substochastic(fixtures::grid({{"1/2", "0"}, {"3/4", "0"}})),
                       "column 1 sum 5/4 > 1 (excess 1/4)", ValidationError);
  CHECK_THROWS_AS(validate_substochastic(Matrix(2, 3)), ValidationError);
  // Strict: an excess of 10^-30 is still an excess.
  CHECK_THROWS_AS(validate_substochastic(fixtures::grid(
                      {{"1.000000000000000000000000000001", "0"}, {"0", "0"}})),
                  ValidationError);
}

TEST_CASE("sub_defect") {
  CHECK(sub_defect(validate_substochastic(fixtures::example_d())) == 3);
  CHECK(sub_defect(validate_substochastic(fixtures::example_a())) == 1);
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(sub_defect(validate_substochastic(Matrix::zero(n, n))) == n);
    CHECK(sub_defect(validate_substochastic(Matrix::identity(n))) == 0);
  }
}

TEST_CASE("sub_defect properties on random matrices") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const auto b = io::random_substochastic(n, make_rational(static_cast<long>(1 + seed % 4), 4), seed);
    const auto sums = line_sums(b.matrix());
    Rational rows_total, cols_total;
    for (auto& v : sums.rows) rows_total += v;
    for (auto& v : sums.cols) cols_total += v;
    CHECK(rows_total == b.sigma());
    CHECK(cols_total == b.sigma());
    CHECK(b.sub_defect() <= n);
    const bool stochastic = is_doubly_stochastic(b.matrix());
    CHECK((b.sub_defect() == 0) == stochastic);
  }
  // Permutations have sub-defect 0 and are doubly stochastic.
  const Matrix p = fixtures::grid({{"0", "1", "0"}, {"0", "0", "1"}, {"1", "0", "0"}});
  CHECK(validate_substochastic(p).sub_defect() == 0);
}

TEST_CASE("clamp_line_sums divides by the largest line sum") {
  const Matrix m = fixtures::grid({{"0.6", "0.5"}, {"0.1", "0.2"}});
  const Matrix c = clamp_line_sums(m);
  CHECK(c(0, 0) == Rational(6, 11));
  CHECK_NOTHROW(validate_substochastic(c));
  CHECK(clamp_line_sums(fixtures::example_a()) == fixtures::example_a());
}

TEST_CASE("rational_nullspace") {
  CHECK(rational_nullspace(Matrix::identity(3)).empty());

  const auto basis = rational_nullspace(fixtures::grid({{"1", "-1"}}));
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == std::vector<Rational>{1, 1});

  // Row/column sum equations over the 9 cells of the full 3×3 pattern.
  Matrix incidence(6, 9);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      incidence(r, 3 * r + c) = 1;
      incidence(3 + c, 3 * r + c) = 1;
    }
  CHECK(rational_nullspace(incidence).size() == 4);
}

TEST_CASE("rank plus nullity equals columns on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng() % 6;
    const std::size_t cols = 1 + rng() % 6;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (rng() % 3 != 0) m(r, c) = make_rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(1 + rng() % 4));
    // Make some rows dependent.
    if (rows > 2 && rng() % 2) {
      for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * 2 - m(1, c);
    }
    const auto basis = rational_nullspace(m);
    CHECK(rank(m) + basis.size() == cols);
    for (const auto& v : basis) {
      for (std::size_t r = 0; r < rows; ++r) {
        Rational dot;
        for (std::size_t c = 0; c < cols; ++c) dot += m(r, c) * v[c];
        CHECK(dot == 0);
      }
    }
    // Rank is invariant under a column permutation (different pivot path).
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Matrix permuted(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) permuted(r, c) = m(r, order[c]);
    CHECK(rank(permuted) == rank(m));
  }
}
