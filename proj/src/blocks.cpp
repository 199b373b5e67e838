#include "voafin/blocks.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "voafin/finiteness.hpp"
#include "voafin/identities.hpp"

namespace voafin {

PointedLine::PointedLine(std::vector<Rational> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("a pointed line needs at least one point");
  std::set<Rational> seen(points_.begin(), points_.end());
  if (seen.size() != points_.size()) throw std::invalid_argument("marked points must be distinct");
}

int MeromorphicSection::pole_order(std::size_t i) const {
  int best = 0;
  for (const auto& [m, c] : poles.at(i)) {
    if (c != 0) best = std::max(best, m);
  }
  return best;
}

int MeromorphicSection::order() const {
  int best = 0;
  for (std::size_t i = 0; i < poles.size(); ++i) best = std::max(best, pole_order(i));
  return best;
}

std::string MeromorphicSection::to_string(const PointedLine& line) const {
  std::ostringstream out;
  bool first = true;
  auto term = [&](const Rational& c, const std::string& monomial) {
    if (c == 0) return;
    if (!first) out << " + ";
    first = false;
    if (monomial.empty()) {
      out << to_short_string(c);
    } else if (c == 1) {
      out << monomial;
    } else {
      out << "(" << to_short_string(c) << ")" << monomial;
    }
  };
  for (std::size_t j = 0; j < poly.size(); ++j) term(poly[j], j == 0 ? "" : j == 1 ? "z" : "z^" + std::to_string(j));
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (const auto& [m, c] : poles[i]) {
      term(c, "(z-(" + to_short_string(line.point(i)) + "))^-" + std::to_string(m));
    }
  }
  if (first) out << "0";
  return out.str();
}

std::vector<MeromorphicSection> section_basis(const PointedLine& line, int d, const std::vector<int>& bounds) {
  if (d < 0) throw std::invalid_argument("section weight must be >= 0");
  if (bounds.size() != line.size()) throw std::invalid_argument("one pole bound per point");
  std::size_t n = line.size();
  auto blank = [&] {
    MeromorphicSection s;
    s.weight = d;
    s.poles.assign(n, {});
    return s;
  };
  std::vector<MeromorphicSection> out;
  if (d >= 1) {
    for (int j = 0; j <= 2 * d - 2; ++j) {
      auto s = blank();
      s.poly.assign(static_cast<std::size_t>(j) + 1, Rational(0));
      s.poly.back() = 1;
      out.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (int m = 1; m <= bounds[i]; ++m) {
        auto s = blank();
        s.poles[i][m] = 1;
        out.push_back(std::move(s));
      }
    }
    return out;
  }
  // d = 0: sections of kappa, holomorphic at infinity only when the simple
  // poles are residue balanced
  for (std::size_t i = 0; i < n; ++i) {
    for (int m = 2; m <= bounds[i]; ++m) {
      auto s = blank();
      s.poles[i][m] = 1;
      out.push_back(std::move(s));
    }
  }
  std::size_t anchor = 0;
  while (anchor < n && bounds[anchor] < 1) ++anchor;
  for (std::size_t i = anchor + 1; i < n; ++i) {
    if (bounds[i] < 1) continue;
    auto s = blank();
    s.poles[i][1] = 1;
    s.poles[anchor][1] = -1;
    out.push_back(std::move(s));
  }
  return out;
}

std::map<int, Rational> laurent_expand(const PointedLine& line, const MeromorphicSection& f, std::size_t i,
                                       int order_cutoff) {
  std::map<int, Rational> out;
  auto add = [&](int k, const Rational& c) {
    if (k > order_cutoff || c == 0) return;
    Rational& slot = out[k];
    slot += c;
    if (slot == 0) out.erase(k);
  };
  const Rational& qi = line.point(i);
  // z^j = (Q_i + z_i)^j
  for (std::size_t j = 0; j < f.poly.size(); ++j) {
    if (f.poly[j] == 0) continue;
    for (std::size_t k = 0; k <= j; ++k) {
      add(static_cast<int>(k), f.poly[j] * Rational(binomial(static_cast<long>(j), static_cast<long>(k))) *
                                   pow(qi, static_cast<long>(j - k)));
    }
  }
  for (std::size_t j = 0; j < f.poles.size(); ++j) {
    for (const auto& [m, c] : f.poles[j]) {
      if (j == i) {
        add(-m, c);
        continue;
      }
      // (z_i + delta)^{-m} = sum_k C(-m,k) delta^{-m-k} z_i^k
      Rational delta = qi - line.point(j);
      for (int k = 0; k <= order_cutoff; ++k) {
        add(k, c * Rational(binomial(-m, k)) * pow(delta, -m - k));
      }
    }
  }
  return out;
}

Rational residue_at_infinity(const MeromorphicSection& f) {
  // f(z)dz with z = 1/w: -f(1/w) w^{-2} dw. z^j gives w^{-j-2}, never w^{-1}.
  // (z-Q)^{-m} = w^m (1-Qw)^{-m} = sum_k C(m+k-1,k) Q^k w^{m+k}; times -w^{-2}
  // the w^{-1} coefficient needs m + k = 1.
  Rational r = 0;
  for (const auto& pole : f.poles) {
    for (const auto& [m, c] : pole) {
      int k = 1 - m;
      if (k >= 0) r -= c * Rational(binomial(m + k - 1, k));
    }
  }
  return r;
}

Rational residue_sum(const MeromorphicSection& f) {
  Rational r = residue_at_infinity(f);
  for (const auto& pole : f.poles) {
    auto it = pole.find(1);
    if (it != pole.end()) r += it->second;
  }
  return r;
}

LabeledLine::LabeledLine(PointedLine l, std::vector<ModelPtr> m) : line(std::move(l)), modules(std::move(m)) {
  if (modules.size() != line.size()) throw std::invalid_argument("one module label per marked point");
  const VertexModel& v = modules.front()->voa();
  for (const auto& mod : modules) {
    const VertexModel& w = mod->voa();
    if (w.name() != v.name() || w.central_charge() != v.central_charge() || w.basis().size() != v.basis().size()) {
      throw std::invalid_argument("all labels must be modules over the same VOA");
    }
  }
}

TensorSpace::TensorSpace(const std::vector<ModelPtr>& modules, int max_degree)
    : modules_(modules), max_degree_(max_degree) {
  std::size_t n = modules_.size();
  for (int d = max_degree; d >= 0; --d) {
    std::vector<Index> cur(n);
    auto rec = [&](auto&& self, std::size_t slot, int left) -> void {
      if (slot + 1 == n) {
        const GradedBasis& b = modules_[slot]->basis();
        if (left > modules_[slot]->cutoff()) return;
        for (Index w = b.offset(left); w < b.offset(left) + static_cast<Index>(b.dim(left)); ++w) {
          cur[slot] = w;
          lookup_.emplace(cur, static_cast<Index>(tuples_.size()));
          tuples_.push_back(cur);
          degrees_.push_back(d);
        }
        return;
      }
      const GradedBasis& b = modules_[slot]->basis();
      for (int e = 0; e <= std::min(left, modules_[slot]->cutoff()); ++e) {
        for (Index w = b.offset(e); w < b.offset(e) + static_cast<Index>(b.dim(e)); ++w) {
          cur[slot] = w;
          self(self, slot + 1, left - e);
        }
      }
    };
    rec(rec, 0, d);
  }
}

std::optional<Index> TensorSpace::find(const std::vector<Index>& tuple) const {
  auto it = lookup_.find(tuple);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t TensorSpace::dim(int d) const { return static_cast<std::size_t>(std::count(degrees_.begin(), degrees_.end(), d)); }

std::vector<Index> TensorSpace::of_degree(int d) const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] == d) out.push_back(static_cast<Index>(i));
  }
  return out;
}

int TensorSpace::max_degree_of(const SparseVector& v) const { return v.empty() ? -1 : degree(v.leading_index()); }

std::string TensorSpace::format(const SparseVector& v) const {
  if (v.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) out << " + ";
    first = false;
    out << "(" << to_short_string(c) << ")";
    const auto& t = tuple(i);
    for (std::size_t s = 0; s < t.size(); ++s) out << (s ? " x " : " ") << modules_[s]->basis().label(t[s]);
  }
  return out.str();
}

int qgvo_raise(int weight, const MeromorphicSection& f) { return weight - 1 + f.order(); }

SparseVector qgvo_apply(const LabeledLine& surface, const TensorSpace& space, const State& a,
                        const MeromorphicSection& f, const SparseVector& w, std::optional<int> truncate_above) {
  const VertexModel& v = surface.voa();
  if (a.empty()) return {};
  int wt = v.degree_of(a);
  if (f.weight != wt) throw std::invalid_argument("section weight does not match wt a");
  if (!v.virasoro(1, a).empty()) throw std::invalid_argument("qgvo_apply needs a quasi-primary vector");
  std::size_t n = surface.modules.size();
  int top = space.max_degree_of(w);
  // expansion coefficients up to the largest mode that can act nontrivially
  std::vector<std::map<int, Rational>> expansions;
  for (std::size_t i = 0; i < n; ++i) {
    int max_k = wt + std::max(top, 0) + surface.modules[i]->cutoff();
    expansions.push_back(laurent_expand(surface.line, f, i, max_k));
  }
  SparseVector out;
  for (const auto& [t, coeff] : w) {
    const auto& tuple = space.tuple(t);
    int deg = space.degree(t);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexModel& m = *surface.modules[i];
      int di = m.basis().degree(tuple[i]);
      State wi = State::unit(tuple[i]);
      for (const auto& [k, c] : expansions[i]) {
        // a(k) w_i has degree di + wt - k - 1
        int out_slot = di + wt - k - 1;
        if (out_slot < 0) break;
        int out_total = deg - di + out_slot;
        if (truncate_above && out_total > *truncate_above) continue;
        State r = m.mode(a, k, wi);
        for (const auto& [x, rc] : r) {
          std::vector<Index> nt = tuple;
          nt[i] = x;
          auto idx = space.find(nt);
          if (!idx) throw TruncationError("qgvo_apply output above the tensor space degree");
          out.add(*idx, coeff * c * rc);
        }
      }
    }
  }
  return out;
}

std::vector<State> quasi_primary_basis(const VertexModel& voa, int max_weight) {
  std::vector<State> out;
  for (int d = 1; d <= std::min(max_weight, voa.cutoff()); ++d) {
    for (auto& s : quasi_primary_slice(voa, d)) out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::vector<int> uniform_bounds(std::size_t n, int bound) { return std::vector<int>(n, bound); }

// Operator restricted to F_domain, flattened to (source, target) pairs.
SparseVector flatten(const LabeledLine& surface, const TensorSpace& space, const std::vector<Index>& domain,
                     int truncate, const std::function<SparseVector(const SparseVector&)>& op) {
  SparseVector out;
  auto cols = static_cast<Index>(space.size());
  for (std::size_t s = 0; s < domain.size(); ++s) {
    SparseVector img = op(SparseVector::unit(domain[s]));
    for (const auto& [x, c] : img) {
      if (space.degree(x) <= truncate) out.add(static_cast<Index>(s) * cols + x, c);
    }
  }
  (void)surface;
  return out;
}

}  // namespace

BracketReport bracket_closure_check(const LabeledLine& surface, const State& a, const MeromorphicSection& f,
                                    const State& b, const MeromorphicSection& g, int domain_degree) {
  const VertexModel& v = surface.voa();
  BracketReport report;
  if (a.empty() || b.empty()) {
    report.contained = true;
    report.commutator_zero = true;
    return report;
  }
  int wa = v.degree_of(a), wb = v.degree_of(b);
  int rf = std::max(0, qgvo_raise(wa, f)), rg = std::max(0, qgvo_raise(wb, g));
  int top = domain_degree + rf + rg;
  TensorSpace space(surface.modules, top);
  std::vector<Index> domain;
  for (int d = 0; d <= domain_degree; ++d) {
    for (Index i : space.of_degree(d)) domain.push_back(i);
  }
  auto apply = [&](const State& x, const MeromorphicSection& h, const SparseVector& w) {
    return qgvo_apply(surface, space, x, h, w, top);
  };
  SparseVector comm = flatten(surface, space, domain, top, [&](const SparseVector& w) {
    return apply(a, f, apply(b, g, w)) - apply(b, g, apply(a, f, w));
  });
  report.commutator_zero = comm.empty();
  int bound = f.order() + g.order() + wa + wb - 1;
  EchelonBasis span;
  for (int wc = 1; wc <= wa + wb - 1; ++wc) {
    if (wc > v.cutoff()) throw TruncationError("bracket candidates need VOA weight above the cutoff");
    for (const auto& c : quasi_primary_slice(v, wc)) {
      for (const auto& h : section_basis(surface.line, wc, uniform_bounds(surface.line.size(), bound))) {
        SparseVector op = flatten(surface, space, domain, top,
                                  [&](const SparseVector& w) { return apply(c, h, w); });
        ++report.candidates;
        if (!op.empty()) span.insert(op);
      }
    }
  }
  report.span_rank = span.rank();
  report.contained = span.contains(comm);
  return report;
}

TheoremBound theorem_bound(const LabeledLine& surface) {
  TheoremBound out;
  const VertexModel& v = surface.voa();
  ComplementU cu = complement_U(v);
  SubspaceSpec spec;
  spec.kind = SubspaceKind::CmU;
  GapReport gaps = m_constant_and_gaps(0, std::max(1, cu.r_U));
  out.M = static_cast<int>(gaps.M);
  spec.m = out.M;
  for (std::size_t k = 0; k < cu.basis.size(); ++k) {
    if (cu.weights[k] > 0) spec.U.push_back(cu.basis[k]);
  }
  int window = stabilization_window(cu.r_U);
  out.provisional = !cu.stabilized;
  for (const auto& m : surface.modules) {
    QuotientReport q = quotient_report(*m, spec, window);
    out.factors.push_back(q.cumulative);
    out.stabilized.push_back(q.stabilized);
    out.product *= q.cumulative;
    if (!q.stabilized) out.provisional = true;
  }
  return out;
}

CoinvariantReport coinvariant_report(const LabeledLine& surface, int D, int P, int w_max) {
  const VertexModel& v = surface.voa();
  if (D < 0 || P < 0) throw std::invalid_argument("D and P must be >= 0");
  if (w_max <= 0) w_max = complement_U(v).r_U;
  CoinvariantReport r;
  r.D = D;
  r.P = P;
  r.w_max = w_max;
  r.headroom = w_max + P - 1;
  r.D_valid = D - r.headroom;
  if (r.D_valid < 0) throw std::invalid_argument("D is below the headroom w_max + P - 1");
  for (const auto& m : surface.modules) {
    if (m->cutoff() < D) throw TruncationError("module cutoff below D");
  }
  TensorSpace space(surface.modules, D);
  std::vector<State> qp = quasi_primary_basis(v, w_max);
  EchelonBasis span;
  for (const auto& a : qp) {
    int wt = v.degree_of(a);
    for (const auto& f : section_basis(surface.line, wt, uniform_bounds(surface.line.size(), P))) {
      int raise = qgvo_raise(wt, f);
      for (int d = 0; d <= r.D_valid; ++d) {
        for (Index t : space.of_degree(d)) {
          SparseVector rel = qgvo_apply(surface, space, a, f, SparseVector::unit(t));
          if (rel.empty()) continue;
          if (space.max_degree_of(rel) > d + raise) throw VerificationError("relation exceeds its filtration degree");
          ++r.relations;
          span.insert(rel);
        }
      }
    }
  }
  std::vector<std::size_t> pivots_at(static_cast<std::size_t>(D) + 1, 0);
  for (Index p : span.pivots()) ++pivots_at[static_cast<std::size_t>(space.degree(p))];
  for (int p = 0; p <= r.D_valid; ++p) {
    r.est.push_back(space.dim(p) - pivots_at[static_cast<std::size_t>(p)]);
    r.total += r.est.back();
  }
  r.tail_zero = r.est.back() == 0;
  return r;
}

CoinvariantSweep coinvariant_sweep(const LabeledLine& surface, const std::vector<std::pair<int, int>>& DP,
                                   int w_max) {
  CoinvariantSweep s;
  for (const auto& [D, P] : DP) s.runs.push_back(coinvariant_report(surface, D, P, w_max));
  std::vector<const CoinvariantReport*> usable;
  for (const auto& r : s.runs) {
    if (r.D_valid >= 1) usable.push_back(&r);
  }
  if (usable.size() >= 2) {
    const auto* x = usable[usable.size() - 2];
    const auto* y = usable.back();
    s.stabilized = x->tail_zero && y->tail_zero && x->total == y->total;
  }
  if (!s.runs.empty()) s.total = s.runs.back().total;
  s.bound = theorem_bound(surface);
  return s;
}

std::optional<long> rr_h0(long g, long n, long m) {
  if (g < 0 || n < 0 || m < 0) throw std::invalid_argument("rr_h0 needs g, n, m >= 0");
  long deg = (1 - n) * (2 * g - 2) + m;
  if (deg > 2 * g - 2) return deg + 1 - g;
  if (deg < 0) return 0;
  // cases fixed without Riemann-Roch: constants, holomorphic differentials, and
  // the residue theorem for a single simple pole
  if (n == 1 && m == 0) return 1;
  if (n == 1 && m == 1) return 1;
  if (n == 0 && (m == 0 || m == 1)) return g;
  return std::nullopt;
}

GapReport m_constant_and_gaps(long g, long r_U) {
  if (r_U < 1) throw std::invalid_argument("r_U must be >= 1");
  GapReport out;
  out.M = 1;
  for (long n = 1; n <= r_U; ++n) {
    // beyond this order every step is in the Riemann-Roch range
    long safe = 2 * g - 2 - (1 - n) * (2 * g - 2) + 2;
    long m0 = 1;
    std::vector<long> gaps;
    for (long m = 1; m <= std::max(safe, 1L); ++m) {
      auto hi = rr_h0(g, n, m), lo = rr_h0(g, n, m - 1);
      bool certified = hi && lo && *hi == *lo + 1;
      if (!certified) {
        gaps.push_back(m);
        m0 = m + 1;
      }
    }
    out.gaps[n] = gaps;
    out.m0[n] = m0;
    out.M = std::max(out.M, m0);
  }
  return out;
}

}  // namespace voafin
