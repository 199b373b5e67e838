#include "voafin/identities.hpp"

#include <algorithm>

namespace voafin {

IdentityKind parse_identity_kind(std::string_view name) {
  if (name == "borcherds") return IdentityKind::Borcherds;
  if (name == "associativity") return IdentityKind::Associativity;
  if (name == "commutator") return IdentityKind::Commutator;
  if (name == "translation") return IdentityKind::Translation;
  throw std::invalid_argument("unknown identity kind: " + std::string(name));
}

std::string_view to_string(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::Borcherds: return "borcherds";
    case IdentityKind::Associativity: return "associativity";
    case IdentityKind::Commutator: return "commutator";
    case IdentityKind::Translation: return "translation";
  }
  return "unknown";
}

namespace {

Rational sign(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

// sum_i (-1)^i C(r,i) [a(p+r-i) b(q+i) w - (-1)^r b(q+r-i) a(p+i) w]
State borcherds_rhs(const VertexModel& m, const State& a, const State& b, const State& w, int p, int q, int r) {
  const VertexModel& v = m.voa();
  int wa = v.max_degree_of(a), wb = v.max_degree_of(b), dw = m.max_degree_of(w);
  // b(q+i)w vanishes once wb + dw - q - i - 1 < 0; likewise a(p+i)w.
  int last = std::max(wb + dw - q - 1, wa + dw - p - 1);
  if (r >= 0) last = std::min(last, r);
  State out;
  for (int i = 0; i <= last; ++i) {
    Rational coeff = sign(i) * Rational(binomial(r, i));
    if (coeff == 0) continue;
    State bw = m.mode(b, q + i, w);
    if (!bw.empty()) out.axpy(coeff, m.mode(a, p + r - i, bw));
    State aw = m.mode(a, p + i, w);
    if (!aw.empty()) out.axpy(-coeff * sign(r), m.mode(b, q + r - i, aw));
  }
  return out;
}

// sum_i C(p,i) (a(r+i)b)(p+q-i) w
State borcherds_lhs(const VertexModel& m, const State& a, const State& b, const State& w, int p, int q, int r) {
  const VertexModel& v = m.voa();
  int last = v.max_degree_of(a) + v.max_degree_of(b) - r - 1;
  if (p >= 0) last = std::min(last, p);
  State out;
  for (int i = 0; i <= last; ++i) {
    Rational coeff(binomial(p, i));
    if (coeff == 0) continue;
    State ab = v.mode(a, r + i, b);
    if (!ab.empty()) out.axpy(coeff, m.mode(ab, p + q - i, w));
  }
  return out;
}

}  // namespace

State check_identity(const VertexModel& m, IdentityKind kind, const IdentityArgs& x) {
  const VertexModel& v = m.voa();
  switch (kind) {
    case IdentityKind::Borcherds:
      return borcherds_lhs(m, x.a, x.b, x.w, x.p, x.q, x.r) - borcherds_rhs(m, x.a, x.b, x.w, x.p, x.q, x.r);
    case IdentityKind::Associativity: {
      State lhs = m.mode(v.mode(x.a, -x.n, x.b), -x.q, x.w);
      return lhs - borcherds_rhs(m, x.a, x.b, x.w, 0, -x.q, -x.n);
    }
    case IdentityKind::Commutator: {
      State lhs = m.mode(x.a, x.p, m.mode(x.b, x.q, x.w)) - m.mode(x.b, x.q, m.mode(x.a, x.p, x.w));
      return lhs - borcherds_lhs(m, x.a, x.b, x.w, x.p, x.q, 0);
    }
    case IdentityKind::Translation: {
      State la = v.virasoro(-1, x.a);
      State out = m.mode(la, x.q, x.w);
      out.axpy(Rational(x.q), m.mode(x.a, x.q - 1, x.w));
      return out;
    }
  }
  throw std::logic_error("unhandled identity kind");
}

std::vector<State> quasi_primary_slice(const VertexModel& m, int d) {
  if (d > m.cutoff()) throw TruncationError("weight above cutoff");
  const GradedBasis& basis = m.basis();
  std::size_t cols = basis.dim(d);
  if (cols == 0) return {};
  Index off = basis.offset(d);
  std::map<Index, std::size_t> row_of;
  std::vector<SparseVector> rows;
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& [t, x] : m.virasoro(1, State::unit(off + static_cast<Index>(j)))) {
      auto [it, inserted] = row_of.try_emplace(t, rows.size());
      if (inserted) rows.emplace_back();
      rows[it->second].set(static_cast<Index>(j), x);
    }
  }
  auto rk = rank_and_kernel(SparseMatrix::from_rows(std::move(rows), cols));
  std::vector<State> out;
  for (const auto& k : rk.kernel) {
    State s;
    for (const auto& [j, x] : k) s.set(off + j, x);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<State> quasi_primary_space(const VertexModel& m, const Rational& weight) {
  Rational d = weight - m.lowest_weight();
  if (!is_integer(d) || d < 0) return {};
  return quasi_primary_slice(m, static_cast<int>(to_long(d)));
}

bool is_quasi_primary_generated(const VertexModel& m) {
  if (!m.is_voa()) throw std::invalid_argument("quasi-primary generation is a VOA property");
  if (m.cutoff() < 1) throw TruncationError("cutoff must be at least 1");
  const GradedBasis& basis = m.basis();
  for (Index i = basis.offset(1); i < basis.offset(1) + static_cast<Index>(basis.dim(1)); ++i) {
    if (!m.virasoro(1, State::unit(i)).empty()) return false;
  }
  return true;
}

}  // namespace voafin
