#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voafin/model.hpp"

namespace voafin {

/// Distinct rational points Q_1..Q_N on the affine chart, local coordinates z - Q_i.
class PointedLine {
 public:
  explicit PointedLine(std::vector<Rational> points);
  std::size_t size() const { return points_.size(); }
  const Rational& point(std::size_t i) const { return points_.at(i); }
  const std::vector<Rational>& points() const { return points_; }

 private:
  std::vector<Rational> points_;
};

/// Global section of kappa^{1-d} in partial fractions: sum_j poly[j] z^j plus
/// sum poles[i][m] (z - Q_i)^{-m}.
struct MeromorphicSection {
  int weight = 0;
  std::vector<Rational> poly;
  std::vector<std::map<int, Rational>> poles;

  /// max pole order over the marked points
  int order() const;
  int pole_order(std::size_t i) const;
  std::string to_string(const PointedLine& line) const;
};

/// Basis of sections of kappa^{1-d} with pole order at Q_i at most bounds[i].
std::vector<MeromorphicSection> section_basis(const PointedLine& line, int d, const std::vector<int>& bounds);

/// Coefficients of the expansion of f in z_i = z - Q_i, from the pole order down
/// to z_i^order_cutoff.
std::map<int, Rational> laurent_expand(const PointedLine& line, const MeromorphicSection& f, std::size_t i,
                                       int order_cutoff);

/// Residue of f dz at infinity, from the expansion in w = 1/z.
Rational residue_at_infinity(const MeromorphicSection& f);

/// Sum of residues of f dz over the marked points and infinity.
Rational residue_sum(const MeromorphicSection& f);

/// Pointed line with one module per point, all over the same VOA.
struct LabeledLine {
  PointedLine line;
  std::vector<ModelPtr> modules;

  LabeledLine(PointedLine l, std::vector<ModelPtr> m);
  const VertexModel& voa() const { return modules.front()->voa(); }
};

/// Pure tensors of module basis vectors with total degree <= max_degree. Indices
/// run from the top degree down, so a vector's smallest index is its
/// highest-degree component.
class TensorSpace {
 public:
  TensorSpace(const std::vector<ModelPtr>& modules, int max_degree);

  std::size_t size() const { return tuples_.size(); }
  int max_degree() const { return max_degree_; }
  int degree(Index i) const { return degrees_.at(static_cast<std::size_t>(i)); }
  const std::vector<Index>& tuple(Index i) const { return tuples_.at(static_cast<std::size_t>(i)); }
  std::optional<Index> find(const std::vector<Index>& tuple) const;
  std::size_t dim(int d) const;
  /// Indices of the pure tensors of degree d.
  std::vector<Index> of_degree(int d) const;
  int max_degree_of(const SparseVector& v) const;
  std::string format(const SparseVector& v) const;

 private:
  std::vector<ModelPtr> modules_;
  int max_degree_;
  std::vector<std::vector<Index>> tuples_;
  std::vector<int> degrees_;
  std::map<std::vector<Index>, Index> lookup_;
};

/// sum_i Res_{z_i} Y(a, z_i) iota_{z_i} f on slot i. Components above
/// `truncate_above` (if set) are dropped; otherwise every output must fit in the
/// tensor space.
SparseVector qgvo_apply(const LabeledLine& surface, const TensorSpace& space, const State& a,
                        const MeromorphicSection& f, const SparseVector& w,
                        std::optional<int> truncate_above = std::nullopt);

/// wt a - 1 + ord f
int qgvo_raise(int weight, const MeromorphicSection& f);

struct BracketReport {
  bool contained = false;
  std::size_t candidates = 0;
  std::size_t span_rank = 0;
  bool commutator_zero = false;
};

/// Tests whether [a(f), b(g)] restricted to F_domain W_A (outputs cut at the
/// commutator's top degree) lies in the span of quasi-global operators c(h) with
/// c quasi-primary of weight < wt a + wt b and h with pole orders up to
/// ord f + ord g + wt a + wt b - 1.
BracketReport bracket_closure_check(const LabeledLine& surface, const State& a, const MeromorphicSection& f,
                                    const State& b, const MeromorphicSection& g, int domain_degree = 1);

/// Basis of quasi-primary vectors of the VOA in weights 1..max_weight.
std::vector<State> quasi_primary_basis(const VertexModel& voa, int max_weight);

struct TheoremBound {
  std::vector<std::size_t> factors;
  std::vector<bool> stabilized;
  std::size_t product = 1;
  bool provisional = false;
  int M = 1;
};

/// prod_i cumulative dim W^i / C_M(U+, W^i) with U+ the positive-weight part of
/// the complement of C_2(V) in ker L_1 and M from the genus-0 gap calculus.
TheoremBound theorem_bound(const LabeledLine& surface);

struct CoinvariantReport {
  int D = 0;
  int P = 0;
  int w_max = 0;
  int headroom = 0;
  int D_valid = 0;
  std::vector<std::size_t> est;  // p = 0..D_valid
  std::size_t total = 0;
  std::size_t relations = 0;
  bool tail_zero = false;
};

/// gr-estimate of the coinvariant space: relations a(f)w for a quasi-primary with
/// 1 <= wt a <= w_max, f in section_basis(wt a, P at every point) and w of degree
/// <= D - H, H = w_max + P - 1; est_p counts degree-p pure tensors left after
/// leading-term reduction. w_max <= 0 selects r_U.
CoinvariantReport coinvariant_report(const LabeledLine& surface, int D, int P, int w_max = 0);

struct CoinvariantSweep {
  std::vector<CoinvariantReport> runs;
  bool stabilized = false;
  std::size_t total = 0;
  TheoremBound bound;
};

/// Runs every (D, P) pair; stabilized when the last two runs with D_valid >= 1
/// have a zero top estimate and equal totals.
CoinvariantSweep coinvariant_sweep(const LabeledLine& surface, const std::vector<std::pair<int, int>>& DP,
                                   int w_max = 0);

/// h^0(kappa^{1-n}(mQ)) on a genus-g curve when Riemann-Roch determines it.
std::optional<long> rr_h0(long g, long n, long m);

struct GapReport {
  long M = 1;
  std::map<long, std::vector<long>> gaps;    // n -> uncertified pole orders
  std::map<long, long> m0;                   // n -> first order from which every order is certified
};

GapReport m_constant_and_gaps(long g, long r_U);

}  // namespace voafin
