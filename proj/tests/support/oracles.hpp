#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's linear algebra or model code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;

// Number of partitions of n (Euler's recurrence is overkill; plain DP).
inline long partition_count(int n) {
  if (n < 0) return 0;
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int k = part; k <= n; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
  return p[static_cast<std::size_t>(n)];
}

// Number of ways to write n as an ordered tuple of partitions coloured by `colours`.
inline long coloured_partition_count(int n, int colours) {
  if (n < 0) return 0;
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int c = 0; c < colours; ++c)
    for (int part = 1; part <= n; ++part)
      for (int k = part; k <= n; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
  return p[static_cast<std::size_t>(n)];
}

inline Q kac_weight(long p, long q, long r, long s) {
  return Q((r * p - s * q) * (r * p - s * q) - (p - q) * (p - q), 4 * p * q);
}

// Graded dimensions of the irreducible minimal-model module L(c_{p,q}, h_{r,s})
// from the alternating-sum character formula, levels 0..depth.
inline std::vector<long> minimal_character(long p, long q, long r, long s, int depth) {
  Q h = kac_weight(p, q, r, s);
  std::vector<long> dims(static_cast<std::size_t>(depth) + 1, 0);
  for (long k = -depth - 2; k <= depth + 2; ++k) {
    Q plus = kac_weight(p, q, r + 2 * k * q, s) - h;
    Q minus = kac_weight(p, q, -r + 2 * k * q, s) - h;
    for (int n = 0; n <= depth; ++n) {
      Q a = Q(n) - plus, b = Q(n) - minus;
      if (a.get_den() == 1) dims[static_cast<std::size_t>(n)] += partition_count(static_cast<int>(a.get_num().get_si()));
      if (b.get_den() == 1) dims[static_cast<std::size_t>(n)] -= partition_count(static_cast<int>(b.get_num().get_si()));
    }
  }
  return dims;
}

// Rank by textbook Gaussian elimination over the rationals on a dense copy.
inline std::size_t dense_rank(std::vector<std::vector<Q>> m) {
  std::size_t rank = 0;
  if (m.empty()) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Q f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Pairing <x|y> for a Gram matrix, x and y in alpha-coordinates.
inline Q gram_pair(const std::vector<std::vector<long>>& g, const std::vector<Q>& x, const std::vector<Q>& y) {
  Q s = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) s += x[i] * y[j] * g[i][j];
  return s;
}

// Inverse of a rank-2 Gram matrix.
inline std::vector<std::vector<Q>> inverse2(const std::vector<std::vector<long>>& g) {
  Q det = Q(g[0][0] * g[1][1] - g[0][1] * g[1][0]);
  return {{Q(g[1][1]) / det, Q(-g[0][1]) / det}, {Q(-g[1][0]) / det, Q(g[0][0]) / det}};
}

// Brute-force membership: gamma = lambda + beta fails when some delta in L,
// delta not in {0, gamma}, has <delta|gamma> >= <delta|delta>. Such a delta has
// <delta|delta> <= <gamma|gamma>, so a coordinate box from the inverse Gram
// diagonal covers every witness.
inline bool brute_gamma_member(const std::vector<std::vector<long>>& g, const std::vector<Q>& lambda_alpha,
                               const std::vector<long>& beta) {
  auto inv = inverse2(g);
  std::vector<Q> gamma = {lambda_alpha[0] + beta[0], lambda_alpha[1] + beta[1]};
  // the basis vectors and their negatives rule out most candidates cheaply
  for (std::vector<Q> delta : {std::vector<Q>{1, 0}, std::vector<Q>{-1, 0}, std::vector<Q>{0, 1}, std::vector<Q>{0, -1}}) {
    if (delta == gamma) continue;
    if (gram_pair(g, delta, gamma) >= gram_pair(g, delta, delta)) return false;
  }
  Q ng = gram_pair(g, gamma, gamma);
  long r0 = static_cast<long>(std::ceil(std::sqrt(ng.get_d() * inv[0][0].get_d()))) + 1;
  long r1 = static_cast<long>(std::ceil(std::sqrt(ng.get_d() * inv[1][1].get_d()))) + 1;
  for (long d0 = -r0; d0 <= r0; ++d0)
    for (long d1 = -r1; d1 <= r1; ++d1) {
      if (d0 == 0 && d1 == 0) continue;
      std::vector<Q> delta = {Q(d0), Q(d1)};
      if (delta == gamma) continue;
      if (gram_pair(g, delta, gamma) >= gram_pair(g, delta, delta)) return false;
    }
  return true;
}

// Every member of Gamma_lambda in the box where delta = +-alpha_i cannot
// disqualify it: |<gamma|alpha_i>| <= <alpha_i|alpha_i> in each direction.
inline std::set<std::vector<long>> brute_gamma_set(const std::vector<std::vector<long>>& g,
                                                   const std::vector<Q>& lambda_alpha) {
  auto inv = inverse2(g);
  double bound = 0;
  for (int i = 0; i < 2; ++i)
    bound = std::max(bound, (std::abs(inv[static_cast<std::size_t>(i)][0].get_d()) +
                             std::abs(inv[static_cast<std::size_t>(i)][1].get_d())) *
                                static_cast<double>(std::max(g[0][0], g[1][1])));
  for (const auto& x : lambda_alpha) bound += std::abs(x.get_d());
  long R = static_cast<long>(std::ceil(bound)) + 2;
  std::set<std::vector<long>> out;
  for (long b0 = -R; b0 <= R; ++b0)
    for (long b1 = -R; b1 <= R; ++b1)
      if (brute_gamma_member(g, lambda_alpha, {b0, b1})) out.insert({b0, b1});
  return out;
}

}  // namespace oracle
