#include <doctest.h>

#include <random>
#include <set>

#include "support/oracles.hpp"
#include "voafin/identities.hpp"
#include "voafin/lattice.hpp"

using namespace voafin;

namespace {

using Gram = std::vector<std::vector<long>>;

// Graded dims of V_{lambda+L} by direct count: sum over mu in lambda+L of
// rank-coloured partitions of (n + h_min - <mu|mu>/2).
std::vector<long> brute_dims(const Gram& g, const std::vector<oracle::Q>& lambda_alpha, int depth) {
  int rank = static_cast<int>(g.size());
  std::vector<oracle::Q> norms;
  const long R = 8;
  std::vector<long> idx(static_cast<std::size_t>(rank), -R);
  while (true) {
    std::vector<oracle::Q> mu(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) mu[static_cast<std::size_t>(i)] = lambda_alpha[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
    norms.push_back(oracle::gram_pair(g, mu, mu) / 2);
    int k = 0;
    while (k < rank && ++idx[static_cast<std::size_t>(k)] > R) idx[static_cast<std::size_t>(k++)] = -R;
    if (k == rank) break;
  }
  oracle::Q low = *std::min_element(norms.begin(), norms.end());
  std::vector<long> dims(static_cast<std::size_t>(depth) + 1, 0);
  for (const auto& h : norms) {
    oracle::Q shift = h - low;
    if (shift.get_den() != 1 || shift > depth) continue;
    long s = shift.get_num().get_si();
    for (int n = static_cast<int>(s); n <= depth; ++n)
      dims[static_cast<std::size_t>(n)] += oracle::coloured_partition_count(n - static_cast<int>(s), rank);
  }
  return dims;
}

Gram random_even_gram(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> diag(1, 3), off(-6, 6);
  while (true) {
    long a = 2 * diag(rng), d = 2 * diag(rng), b = off(rng);
    if (a * d - b * b > 0) return {{a, b}, {b, d}};
  }
}

std::set<IntVec> as_set(const std::vector<IntVec>& v) { return {v.begin(), v.end()}; }

std::vector<oracle::Q> alpha_of_dual(const Gram& g, const RatVec& m) {
  auto inv = oracle::inverse2(g);
  return {inv[0][0] * m[0] + inv[0][1] * m[1], inv[1][0] * m[0] + inv[1][1] * m[1]};
}

}  // namespace

TEST_CASE("lattice validation") {
  CHECK_THROWS_AS(EvenLattice(Gram{{1}}), std::invalid_argument);
  CHECK_THROWS_AS(EvenLattice(Gram{{2, 3}, {3, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(EvenLattice(Gram{{2, 1}, {0, 2}}), std::invalid_argument);
  EvenLattice a2(Gram{{2, -1}, {-1, 2}});
  CHECK(a2.rank() == 2);
  CHECK(a2.pair(IntVec{1, 1}, IntVec{1, 1}) == 2);
  CHECK(a2.dual_coords({Rational(1), Rational(0)}) == RatVec{Rational(2), Rational(-1)});
  CHECK(a2.alpha_coords({Rational(1), Rational(0)}) == RatVec{Rational(2, 3), Rational(1, 3)});
  CHECK(EvenLattice::reduce({Rational(-1, 3), Rational(5, 2)}) == RatVec{Rational(2, 3), Rational(1, 2)});
  // epsilon(a, b) / epsilon(b, a) = (-1)^{<a|b>}
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> c(-3, 3);
  for (int t = 0; t < 50; ++t) {
    IntVec a{c(rng), c(rng)}, b{c(rng), c(rng)};
    long sign = (a2.pair(a, b) % 2 == 0) ? 1 : -1;
    CHECK(a2.cocycle(a, b) * a2.cocycle(b, a) == sign);
  }
}

TEST_CASE("Fock space dimensions agree with a direct count") {
  auto a1 = FockModel::lattice_voa({{2}}, 6);
  CHECK(a1->basis().dims() == std::vector<std::size_t>{1, 3, 4, 7, 13, 19, 29});
  struct Case {
    Gram g;
    RatVec lambda_dual;
    int depth;
  };
  for (const auto& [g, lam, depth] : {Case{{{2}}, {Rational(0)}, 6}, Case{{{2}}, {Rational(1)}, 6},
                                       Case{{{4}}, {Rational(1)}, 6}, Case{{{2, -1}, {-1, 2}}, {Rational(0), Rational(0)}, 4},
                                       Case{{{2, -1}, {-1, 2}}, {Rational(1), Rational(0)}, 4}}) {
    auto m = FockModel::lattice_module(g, lam, depth);
    std::vector<oracle::Q> la;
    if (g.size() == 1)
      la = {lam[0] / g[0][0]};
    else
      la = alpha_of_dual(g, lam);
    auto expected = brute_dims(g, la, depth);
    for (int n = 0; n <= depth; ++n)
      CHECK(m->basis().dim(n) == static_cast<std::size_t>(expected[static_cast<std::size_t>(n)]));
  }
  auto half = FockModel::lattice_module({{2}}, {Rational(1)}, 3);
  CHECK(half->lowest_weight() == Rational(1, 4));
}

TEST_CASE("lattice vertex operators") {
  auto v = FockModel::lattice_voa({{2}}, 6);
  State ea = State::unit(v->ground({1})), emina = State::unit(v->ground({-1}));
  State one = v->vacuum();
  State r1 = v->mode(ea, 1, emina);
  CHECK((r1 == one || r1 == -one));
  for (int n = 2; n <= 4; ++n) CHECK(v->mode(ea, n, emina).empty());
  // e_a(0) e_{-a} = +- alpha(-1) 1
  State alpha = State::unit(v->index_of({{{1, 0}}, {0}}));
  State r0 = v->mode(ea, 0, emina);
  CHECK((r0 == alpha || r0 == -alpha));
  CHECK(v->central_charge() == 1);
  CHECK(FockModel::lattice_voa({{2, -1}, {-1, 2}}, 2)->central_charge() == 2);
  // central charge seen through the commutator formula: [L_2, L_{-2}] 1 = c/2
  State omega = v->conformal_vector();
  CHECK(v->mode(omega, 3, v->mode(omega, -1, one)) == Rational(1, 2) * one);
  IdentityArgs args{omega, omega, one, 3, -1, 0, 0};
  CHECK(check_identity(*v, IdentityKind::Commutator, args).empty());
  // Heisenberg bracket [alpha(1), alpha(-1)] = <alpha|alpha>
  State lhs = v->heisenberg_mode(0, 1, v->heisenberg_mode(0, -1, one));
  CHECK(lhs == Rational(2) * one);
}

TEST_CASE("ground states are L0 eigenvectors of weight <mu|mu>/2") {
  auto m = FockModel::lattice_module({{2, -1}, {-1, 2}}, {Rational(1), Rational(0)}, 3);
  State omega = m->voa().conformal_vector();
  for (const auto& gamma : m->momenta()) {
    Index i = m->ground(gamma);
    RatVec mu = m->lambda();
    for (std::size_t k = 0; k < mu.size(); ++k) mu[k] += gamma[k];
    Rational expect = m->lattice().norm(mu) / 2;
    CHECK(m->mode(omega, 1, State::unit(i)) == expect * State::unit(i));
  }
}

TEST_CASE("gamma set examples") {
  EvenLattice a1(Gram{{2}});
  CHECK(gamma_set(a1, {Rational(0)}) == std::vector<IntVec>{{0}, {1}, {-1}});
  auto half = gamma_set(a1, {Rational(1)});
  CHECK(as_set(half) == std::set<IntVec>{{0}, {-1}});
  for (const auto& b : half) CHECK(in_gamma_set(a1, {Rational(1)}, b));
  CHECK_FALSE(in_gamma_set(a1, {Rational(0)}, {2}));
  EvenLattice a2(Gram{{2, -1}, {-1, 2}});
  auto g0 = as_set(gamma_set(a2, {Rational(0), Rational(0)}));
  CHECK(g0.count({0, 0}) == 1);
  // the roots of A2 together with 0
  CHECK(g0 == std::set<IntVec>{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}});
}

TEST_CASE("gamma set agrees with brute force and the box bound") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 8; ++t) {
    Gram g = random_even_gram(rng);
    EvenLattice lat(g);
    for (RatVec lam : {RatVec{0, 0}, RatVec{1, 0}, RatVec{0, 1}, RatVec{1, -1}}) {
      auto got = gamma_set(lat, lam);
      auto expected = oracle::brute_gamma_set(g, alpha_of_dual(g, lam));
      INFO("gram " << g[0][0] << " " << g[0][1] << " " << g[1][1]);
      CHECK(as_set(got) == expected);
      CHECK(got.size() <= static_cast<std::size_t>((2 * g[0][0] + 1) * (2 * g[1][1] + 1) + 4));
      if (lam == RatVec{0, 0}) CHECK(as_set(got).count({0, 0}) == 1);
    }
  }
}

TEST_CASE("gamma set does not depend on the lattice basis") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> e(-2, 2);
  for (int t = 0; t < 10; ++t) {
    Gram g = random_even_gram(rng);
    // P = [[1, a], [0, 1]] [[1, 0], [b, 1]], determinant 1
    long a = e(rng), b = e(rng);
    long P[2][2] = {{1 + a * b, a}, {b, 1}};
    Gram h(2, std::vector<long>(2, 0));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += P[k][i] * g[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] * P[l][j];
    RatVec lam{Rational(e(rng)), Rational(e(rng))};
    RatVec lam_new{P[0][0] * lam[0] + P[1][0] * lam[1], P[0][1] * lam[0] + P[1][1] * lam[1]};
    auto old_set = as_set(gamma_set(EvenLattice(g), lam));
    std::set<IntVec> mapped;
    for (const auto& x : gamma_set(EvenLattice(h), lam_new))
      mapped.insert({P[0][0] * x[0] + P[0][1] * x[1], P[1][0] * x[0] + P[1][1] * x[1]});
    CHECK(mapped == old_set);
  }
}

TEST_CASE("single jumps") {
  EvenLattice a1(Gram{{2}});
  CHECK(single_jump_check(a1, {Rational(0)}, {1}, {1}) == 1);
  int s = single_jump_check(a1, {Rational(0)}, {0}, {1});
  CHECK((s == 1 || s == -1));
  s = single_jump_check(a1, {Rational(1)}, {0}, {-1});
  CHECK((s == 1 || s == -1));
  EvenLattice a2(Gram{{2, -1}, {-1, 2}});
  for (const auto& beta : gamma_set(a2, {Rational(0), Rational(0)})) {
    int sign = single_jump_check(a2, {Rational(0), Rational(0)}, {0, 0}, beta);
    CHECK((sign == 1 || sign == -1));
  }
}

TEST_CASE("B1 spanning check") {
  for (RatVec lam : {RatVec{Rational(0)}, RatVec{Rational(1)}}) {
    auto r = b1_span_check({{2}}, lam, 6);
    CHECK(r.passed);
    for (auto d : r.deficiency) CHECK(d == 0);
  }
  auto a2 = b1_span_check({{2, -1}, {-1, 2}}, {Rational(1), Rational(0)}, 3);
  CHECK(a2.passed);
  auto a4 = b1_span_check({{4}}, {Rational(1)}, 4);
  CHECK(a4.passed);
}
