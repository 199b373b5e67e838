#include "voafin/finiteness.hpp"

#include <algorithm>
#include <map>

#include "voafin/identities.hpp"

namespace voafin {

std::string_view to_string(SubspaceKind kind) {
  switch (kind) {
    case SubspaceKind::Cn: return "cn";
    case SubspaceKind::B1: return "b1";
    case SubspaceKind::CmU: return "cmu";
    case SubspaceKind::Cmq: return "cmq";
  }
  return "unknown";
}

namespace {

Index slice_begin(const GradedBasis& b, int d) { return b.offset(d); }
Index slice_end(const GradedBasis& b, int d) { return b.offset(d) + static_cast<Index>(b.dim(d)); }

void require_voa_weight(const VertexModel& module, int weight) {
  if (weight > module.voa().cutoff()) {
    throw TruncationError("generator enumeration needs VOA weight " + std::to_string(weight) + " above the VOA cutoff");
  }
}

// Appends a(-n) applied to every module basis vector of degree dw.
void append_modes(const VertexModel& module, const State& a, int n, int dw, int degree, std::vector<GradedVector>& out) {
  const GradedBasis& basis = module.basis();
  for (Index w = slice_begin(basis, dw); w < slice_end(basis, dw); ++w) {
    State v = module.mode(a, -n, State::unit(w));
    if (!v.empty()) out.push_back({degree, std::move(v)});
  }
}

}  // namespace

std::vector<GradedVector> subspace_span(const VertexModel& module, const SubspaceSpec& spec, int d) {
  std::vector<GradedVector> out;
  if (d < 0 || d > module.cutoff()) return out;
  const VertexModel& v = module.voa();
  const GradedBasis& vb = v.basis();
  switch (spec.kind) {
    case SubspaceKind::Cn:
    case SubspaceKind::B1: {
      int n = spec.kind == SubspaceKind::Cn ? spec.n : 1;
      if (spec.kind == SubspaceKind::Cn && n < 2) throw std::invalid_argument("C_n needs n >= 2");
      int min_wa = spec.kind == SubspaceKind::B1 ? 1 : 0;
      // wt a + dw + n - 1 = d with dw >= 0
      int max_wa = d - n + 1;
      require_voa_weight(module, max_wa);
      for (int wa = min_wa; wa <= max_wa; ++wa) {
        for (Index a = slice_begin(vb, wa); a < slice_end(vb, wa); ++a) {
          append_modes(module, State::unit(a), n, d - wa - n + 1, d, out);
        }
      }
      break;
    }
    case SubspaceKind::CmU: {
      for (const auto& a : spec.U) {
        if (a.empty()) continue;
        int wa = v.degree_of(a);
        for (int dw = 0; dw <= d; ++dw) {
          int n = d - wa - dw + 1;
          if (n >= spec.m) append_modes(module, a, n, dw, d, out);
        }
      }
      break;
    }
    case SubspaceKind::Cmq: {
      require_voa_weight(module, d);
      for (const auto& mono : u_monomials(v, spec.U, d, spec.m)) {
        for (int dw = 0; dw <= d; ++dw) {
          int p = d - mono.degree - dw + 1;
          if (p >= spec.q) append_modes(module, mono.vector, p, dw, d, out);
        }
      }
      break;
    }
  }
  return out;
}

std::vector<GradedVector> subspace_span(const VertexModel& module, const SubspaceSpec& spec) {
  std::vector<GradedVector> out;
  for (int d = 0; d <= module.cutoff(); ++d) {
    auto part = subspace_span(module, spec, d);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

QuotientReport quotient_report(const VertexModel& module, const SubspaceSpec& spec, int window) {
  QuotientReport r;
  r.window = window;
  const GradedBasis& basis = module.basis();
  for (int d = 0; d <= module.cutoff(); ++d) {
    EchelonBasis span;
    for (const auto& g : subspace_span(module, spec, d)) span.insert(g.vector);
    r.dims.push_back(basis.dim(d) - span.rank());
    r.cumulative += r.dims.back();
  }
  int n = static_cast<int>(r.dims.size());
  r.stabilized = n >= window && std::all_of(r.dims.end() - window, r.dims.end(), [](std::size_t x) { return x == 0; });
  return r;
}

int stabilization_window(int r_U) { return std::max(3, r_U); }

ComplementU complement_U(const VertexModel& voa) {
  if (!voa.is_voa()) throw std::invalid_argument("complement_U needs a VOA model");
  if (voa.basis().dim(0) != 1) throw std::invalid_argument("complement_U needs V(0) = C1");
  ComplementU out;
  SubspaceSpec c2;
  c2.kind = SubspaceKind::Cn;
  c2.n = 2;
  for (int d = 0; d <= voa.cutoff(); ++d) {
    EchelonBasis span;
    for (const auto& g : subspace_span(voa, c2, d)) span.insert(g.vector);
    std::size_t added = 0;
    for (auto& k : quasi_primary_slice(voa, d)) {
      if (span.rank() == voa.basis().dim(d)) break;
      if (span.insert(k)) {
        out.basis.push_back(std::move(k));
        out.weights.push_back(d);
        ++added;
      }
    }
    if (span.rank() != voa.basis().dim(d)) {
      throw VerificationError("ker L_1 + C_2(V) does not fill degree " + std::to_string(d));
    }
    out.per_degree.push_back(added);
  }
  out.r_U = out.weights.empty() ? 0 : *std::max_element(out.weights.begin(), out.weights.end());
  out.s_U = out.r_U;
  int window = stabilization_window(out.r_U);
  int n = static_cast<int>(out.per_degree.size());
  out.stabilized = n >= window && std::all_of(out.per_degree.end() - window, out.per_degree.end(),
                                              [](std::size_t x) { return x == 0; });
  return out;
}

std::vector<GradedVector> u_monomials(const VertexModel& voa, const std::vector<State>& U, int max_weight,
                                      int max_mode) {
  std::vector<GradedVector> out;
  std::vector<int> wts;
  for (const auto& u : U) wts.push_back(u.empty() ? -1 : voa.degree_of(u));
  auto rec = [&](auto&& self, const State& s, int weight, int min_n) -> void {
    for (std::size_t k = 0; k < U.size(); ++k) {
      if (wts[k] < 0) continue;
      for (int n = min_n;; ++n) {
        if (max_mode > 0 && n > max_mode) break;
        int nw = weight + wts[k] + n - 1;
        if (nw > max_weight) break;
        State t = voa.mode(U[k], -n, s);
        if (t.empty()) continue;
        out.push_back({nw, t});
        self(self, t, nw, n + 1);
      }
    }
  };
  rec(rec, voa.vacuum(), 0, 1);
  return out;
}

std::vector<bool> spanning_set_check(const VertexModel& voa, const std::vector<State>& U) {
  std::vector<EchelonBasis> span(static_cast<std::size_t>(voa.cutoff()) + 1);
  span[0].insert(voa.vacuum());
  for (const auto& g : u_monomials(voa, U, voa.cutoff())) span[static_cast<std::size_t>(g.degree)].insert(g.vector);
  std::vector<bool> out;
  for (int d = 0; d <= voa.cutoff(); ++d) out.push_back(span[static_cast<std::size_t>(d)].rank() == voa.basis().dim(d));
  return out;
}

long bound_k(long s_U, long m) {
  if (s_U < 1 || m < 1) throw std::invalid_argument("bound_k needs s_U, m >= 1");
  Rational t = Rational(s_U + m) - Rational(1, 2);
  Rational k0 = t * t / 2;
  return to_long(ceil(k0)) * m;
}

bool span_contained(const VertexModel& module, const SubspaceSpec& inner, const SubspaceSpec& outer) {
  for (int d = 0; d <= module.cutoff(); ++d) {
    EchelonBasis span;
    for (const auto& g : subspace_span(module, outer, d)) span.insert(g.vector);
    for (const auto& g : subspace_span(module, inner, d)) {
      if (!span.contains(g.vector)) return false;
    }
  }
  return true;
}

std::optional<int> empirical_min_k(const VertexModel& module, const std::vector<State>& U, int m, int limit) {
  SubspaceSpec outer;
  outer.kind = SubspaceKind::CmU;
  outer.m = m;
  outer.U = U;
  for (int k = 2; k <= limit; ++k) {
    SubspaceSpec inner;
    inner.kind = SubspaceKind::Cn;
    inner.n = k;
    if (span_contained(module, inner, outer)) return k;
  }
  return std::nullopt;
}

namespace {

class Reducer {
 public:
  Reducer(const VertexModel& module, const std::vector<State>& U, int m)
      : w_(module), v_(module.voa()), U_(U), m_(m) {
    for (const auto& u : U_) u_weights_.push_back(u.empty() ? -1 : v_.degree_of(u));
  }

  void reduce(const State& a, int q, const State& w, const Rational& scale) {
    if (a.empty() || w.empty() || scale == 0) return;
    int wt = v_.degree_of(a);
    if (wt == 0) {
      if (q == 1) throw std::invalid_argument("a(-1)w with wt a = 0 is not in C_m(U,W)");
      return;
    }
    if (q < m_ * wt) throw std::logic_error("reduction reached q < m wt a");
    const Decomposition& dec = decomposition(wt);
    auto x = solve_combination(dec.vectors, a);
    if (!x) throw VerificationError("U + C_2(V) does not span weight " + std::to_string(wt));
    for (std::size_t k = 0; k < dec.gens.size(); ++k) {
      const Rational& coeff = (*x)[k];
      if (coeff == 0) continue;
      const Generator& g = dec.gens[k];
      Rational sc = scale * coeff;
      if (g.u >= 0) {
        acc_[{static_cast<std::size_t>(g.u), q}].axpy(sc, w);
        continue;
      }
      reduce_c2(g.bprime, g.c, q, w, sc);
    }
  }

  std::vector<CertificateEntry> entries() const {
    std::vector<CertificateEntry> out;
    for (const auto& [key, w] : acc_) {
      if (!w.empty()) out.push_back({key.first, key.second, w, Rational(1)});
    }
    return out;
  }

 private:
  struct Generator {
    int u = -1;  // index into U, or -1 for b'(-2)c
    Index bprime = -1, c = -1;
  };
  struct Decomposition {
    std::vector<Generator> gens;
    std::vector<SparseVector> vectors;
  };

  const Decomposition& decomposition(int wt) {
    auto it = dec_.find(wt);
    if (it != dec_.end()) return it->second;
    Decomposition d;
    EchelonBasis eb;
    for (std::size_t k = 0; k < U_.size(); ++k) {
      if (u_weights_[k] == wt && eb.insert(U_[k])) {
        d.gens.push_back({static_cast<int>(k), -1, -1});
        d.vectors.push_back(U_[k]);
      }
    }
    const GradedBasis& vb = v_.basis();
    for (int wb = 1; wb <= wt - 1; ++wb) {
      int wc = wt - wb - 1;
      for (Index b = vb.offset(wb); b < vb.offset(wb) + static_cast<Index>(vb.dim(wb)); ++b) {
        for (Index c = vb.offset(wc); c < vb.offset(wc) + static_cast<Index>(vb.dim(wc)); ++c) {
          State s = v_.mode(State::unit(b), -2, State::unit(c));
          if (!s.empty() && eb.insert(s)) {
            d.gens.push_back({-1, b, c});
            d.vectors.push_back(std::move(s));
          }
        }
      }
    }
    return dec_.emplace(wt, std::move(d)).first->second;
  }

  // (b'(-2)c)(-q)w with b = L_{-1}b', so b'(-2)c = b(-1)c.
  void reduce_c2(Index bprime, Index c, int q, const State& w, const Rational& scale) {
    const GradedBasis& vb = v_.basis();
    State cs = State::unit(c);
    if (vb.degree(c) == 0) {
      // c is a multiple of the vacuum: (L_{-1}b')(-q)w = q b'(-q-1)w.
      reduce(Rational(cs.begin()->second) * State::unit(bprime), q + 1, w, scale * q);
      return;
    }
    State b = v_.virasoro(-1, State::unit(bprime));
    if (b.empty()) return;
    int wb = vb.degree(bprime) + 1;
    int wc = vb.degree(c);
    int dw = w_.max_degree_of(w);
    // (b(-1)c)(-q)w = sum_i [b(-1-i) c(-q+i) w + c(-1-q-i) b(i) w]
    for (int i = 0; i <= wb + dw - 1; ++i) {
      State bw = w_.mode(b, i, w);
      if (!bw.empty()) reduce(cs, q + 1 + i, bw, scale);
    }
    for (int i = 0; i <= wc + dw + q - 1; ++i) {
      State cw = w_.mode(cs, -q + i, w);
      if (cw.empty()) continue;
      if (1 + i >= m_ * wb) {
        reduce(b, 1 + i, cw, scale);
        continue;
      }
      // b(-1-i)c(-q+i)w = c(-q+i)b(-1-i)w + sum_j C(-1-i,j) (b(j)c)(-1-q-j)w
      reduce(cs, q - i, w_.mode(b, -1 - i, w), scale);
      for (int j = 0; j <= wb + wc - 1; ++j) {
        State bjc = v_.mode(b, j, cs);
        if (!bjc.empty()) reduce(bjc, q + 1 + j, w, scale * Rational(binomial(-1 - i, j)));
      }
    }
  }

  const VertexModel& w_;
  const VertexModel& v_;
  const std::vector<State>& U_;
  int m_;
  std::vector<int> u_weights_;
  std::map<int, Decomposition> dec_;
  std::map<std::pair<std::size_t, int>, State> acc_;
};

}  // namespace

ReductionCertificate reduce_certificate(const VertexModel& module, const State& a, int q, const State& w,
                                        const std::vector<State>& U, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  int wt = module.voa().degree_of(a);
  if (wt < 1) throw std::invalid_argument("reduce_certificate needs wt a >= 1");
  if (q < m * wt) throw std::invalid_argument("reduce_certificate needs q >= m wt a");
  Reducer r(module, U, m);
  r.reduce(a, q, w, Rational(1));
  return {a, q, w, m, r.entries()};
}

State replay(const VertexModel& module, const ReductionCertificate& cert, const std::vector<State>& U) {
  State out;
  for (const auto& e : cert.entries) out.axpy(e.coeff, module.mode(U.at(e.generator), -e.n, e.w));
  return out;
}

}  // namespace voafin
