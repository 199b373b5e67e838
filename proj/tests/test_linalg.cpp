#include <doctest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"
#include "voafin/polynomial.hpp"
#include "voafin/sparse.hpp"

using namespace voafin;

namespace {

std::vector<std::vector<Rational>> random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                                int zero_bias) {
  std::uniform_int_distribution<int> entry(-4, 4), coin(0, 9), den(1, 3);
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols));
  for (auto& row : m)
    for (auto& x : row) x = coin(rng) < zero_bias ? Rational(0) : Rational(entry(rng), den(rng));
  return m;
}

std::vector<SparseVector> rows_of(const std::vector<std::vector<Rational>>& m) {
  std::vector<SparseVector> out;
  for (const auto& r : m) {
    SparseVector v;
    for (std::size_t j = 0; j < r.size(); ++j) v.add(static_cast<Index>(j), r[j]);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("rationals normalize and print as num/den") {
  Rational r(6, -4);
  r.canonicalize();
  CHECK(to_string(r) == "-3/2");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_short_string(Rational(3)) == "3");
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(ceil(Rational(-1, 2)) == 0);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("rank and kernel on small matrices") {
  SparseMatrix id = SparseMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto rk = rank_and_kernel(id);
  CHECK(rk.rank == 3);
  CHECK(rk.kernel.empty());

  auto zero = rank_and_kernel(SparseMatrix(2, 2));
  CHECK(zero.rank == 0);
  CHECK(zero.kernel.size() == 2);

  SparseMatrix m = SparseMatrix::from_dense({{1, 2}, {2, 4}});
  auto r = rank_and_kernel(m);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel.size() == 1);
  CHECK(m.apply(r.kernel[0]).empty());
  // proportional to (-2, 1)
  const SparseVector& k = r.kernel[0];
  CHECK(k[0] == Rational(-2) * k[1]);
  CHECK(k[1] != 0);

  CHECK(rank_and_kernel(SparseMatrix(0, 0)).rank == 0);
}

TEST_CASE("rank agrees with dense elimination and kernels are exact") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    auto dense = random_dense(rng, rows, cols, 6);
    // force some dependent rows
    if (rows > 2) {
      for (std::size_t j = 0; j < cols; ++j) dense[rows - 1][j] = dense[0][j] * 3 - dense[1][j];
    }
    std::vector<std::vector<oracle::Q>> copy = dense;
    std::size_t expected = oracle::dense_rank(copy);
    SparseMatrix m = SparseMatrix::from_dense(dense);
    auto rk = rank_and_kernel(m);
    CHECK(rk.rank == expected);
    CHECK(rk.rank + rk.kernel.size() == cols);
    for (const auto& v : rk.kernel) CHECK(m.apply(v).empty());
    CHECK(rank(rows_of(dense)) == expected);
  }
}

TEST_CASE("rank is invariant under row and column permutations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 2 + rng() % 6, cols = 2 + rng() % 6;
    auto dense = random_dense(rng, rows, cols, 5);
    std::size_t base = rank_and_kernel(SparseMatrix::from_dense(dense)).rank;
    std::vector<std::size_t> rp(rows), cp(cols);
    for (std::size_t i = 0; i < rows; ++i) rp[i] = i;
    for (std::size_t j = 0; j < cols; ++j) cp[j] = j;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    std::vector<std::vector<Rational>> perm(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) perm[i][j] = dense[rp[i]][cp[j]];
    CHECK(rank_and_kernel(SparseMatrix::from_dense(perm)).rank == base);
  }
}

TEST_CASE("reduced echelon and solve_combination") {
  std::vector<SparseVector> rows = {SparseVector{{0, 2}, {1, 4}}, SparseVector{{1, 1}, {2, 1}},
                                    SparseVector{{0, 1}, {1, 3}, {2, 1}}};
  auto re = reduced_echelon(rows, 3);
  CHECK(re.pivots == std::vector<Index>{0, 1});
  for (std::size_t k = 0; k < re.rows.size(); ++k) {
    CHECK(re.rows[k][re.pivots[k]] == 1);
    for (std::size_t l = 0; l < re.rows.size(); ++l)
      if (l != k) CHECK(re.rows[l][re.pivots[k]] == 0);
  }
  SparseVector target{{0, 4}, {1, 9}, {2, 1}};
  auto x = solve_combination(rows, target);
  REQUIRE(x.has_value());
  SparseVector back;
  for (std::size_t j = 0; j < rows.size(); ++j) back.axpy((*x)[j], rows[j]);
  CHECK(back == target);
  CHECK_FALSE(solve_combination({SparseVector{{0, 1}}}, SparseVector{{1, 1}}).has_value());
}

TEST_CASE("echelon basis tracks span membership") {
  EchelonBasis eb;
  CHECK(eb.insert(SparseVector{{3, 1}, {5, 2}}));
  CHECK(eb.insert(SparseVector{{3, 2}, {4, 1}}));
  CHECK_FALSE(eb.insert(SparseVector{{3, 3}, {4, 1}, {5, 2}}));
  CHECK(eb.contains(SparseVector{{4, -1}, {5, 4}}));
  CHECK_FALSE(eb.contains(SparseVector{{6, 1}}));
  CHECK(eb.rank() == 2);
  auto piv = eb.pivots();
  std::sort(piv.begin(), piv.end());
  CHECK(piv == std::vector<Index>{3, 4});
  IntRow prim = to_primitive_row(SparseVector{{1, Rational(-1, 2)}, {2, Rational(3, 4)}});
  REQUIRE(prim.size() == 2);
  CHECK(prim[0].second == 2);
  CHECK(prim[1].second == -3);
}

TEST_CASE("span quotient dims") {
  CHECK(span_quotient_dims({1, 2}, {}) == std::vector<std::size_t>{1, 2});
  CHECK(span_quotient_dims({1}, {GradedVector{0, SparseVector::unit(0)}}) == std::vector<std::size_t>{0});
  // degree 1 occupies index 0, degree 2 indices 1 and 2
  CHECK(span_quotient_dims({0, 1, 2}, {GradedVector{2, SparseVector{{1, 1}, {2, 1}}}}) ==
        std::vector<std::size_t>{0, 1, 1});
  CHECK_THROWS_AS(span_quotient_dims({0, 1, 2}, {GradedVector{1, SparseVector{{0, 1}, {2, 1}}}}),
                  std::invalid_argument);

  // adding vectors never increases a quotient dimension
  std::mt19937_64 rng(3);
  std::vector<std::size_t> ambient = {2, 3, 4};
  std::vector<GradedVector> spanning;
  auto prev = span_quotient_dims(ambient, spanning);
  for (int step = 0; step < 12; ++step) {
    int d = static_cast<int>(rng() % 3);
    Index start = d == 0 ? 0 : d == 1 ? 2 : 5;
    SparseVector v;
    for (std::size_t k = 0; k < ambient[static_cast<std::size_t>(d)]; ++k)
      v.add(start + static_cast<Index>(k), Rational(static_cast<long>(rng() % 5) - 2));
    spanning.push_back({d, v});
    auto now = span_quotient_dims(ambient, spanning);
    for (std::size_t k = 0; k < now.size(); ++k) CHECK(now[k] <= prev[k]);
    prev = now;
  }
}

TEST_CASE("laurent scalar evaluation") {
  LaurentScalar p = LaurentScalar::monomial(1, 1) + LaurentScalar::monomial(1, -1);
  CHECK(p.evaluate(2) == Rational(5, 2));
  CHECK(LaurentScalar(Rational(1)).evaluate(Rational(7, 3)) == 1);
  LaurentScalar t_minus_one = LaurentScalar::monomial(1, 1) - LaurentScalar(Rational(1));
  LaurentScalar sq = t_minus_one * t_minus_one;
  CHECK(sq.coefficient(2) == 1);
  CHECK(sq.coefficient(1) == -2);
  CHECK(sq.coefficient(0) == 1);
  CHECK(sq.evaluate(Rational(4, 3)) == Rational(1, 9));
  CHECK_THROWS_AS(p.evaluate(0), std::domain_error);
  CHECK((p - p).is_zero());
  CHECK(p.to_json()["-1"] == "1/1");
}

TEST_CASE("bivariate polynomials multiply termwise") {
  BivariatePoly x = BivariatePoly::x_power(1);
  BivariatePoly y = BivariatePoly::term(0, 1, LaurentScalar::monomial(1, -1));
  BivariatePoly f = x * x - y;
  BivariatePoly sq = f * f;
  CHECK(sq.coefficient(4, 0) == LaurentScalar(Rational(1)));
  CHECK(sq.coefficient(2, 1) == LaurentScalar::monomial(-2, -1));
  CHECK(sq.coefficient(0, 2) == LaurentScalar::monomial(1, -2));
  CHECK(sq.x_degree() == 4);
  CHECK(sq.y_degree() == 2);
  CHECK(f.at_x_zero().coefficient(0, 1) == LaurentScalar::monomial(-1, -1));
  auto ev = f.evaluate_t(Rational(1, 2));
  CHECK(ev.at({0, 1}) == -2);
}
