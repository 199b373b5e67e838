#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voafin/model.hpp"

namespace voafin {

enum class SubspaceKind { Cn, B1, CmU, Cmq };

std::string_view to_string(SubspaceKind kind);

/// Which mode-generated subspace: C_n (a(-n)w), B_1 (a(-1)w, wt a > 0),
/// C_m(U,.) (a(-n)w, a in U, n >= m) or C_{m,q} ((a_1(-n_1)...a_r(-n_r)1)(-p)w with
/// m >= n_1 > ... > n_r > 0, a_i in U, p >= q).
struct SubspaceSpec {
  SubspaceKind kind = SubspaceKind::Cn;
  int n = 2;
  int m = 1;
  int q = 1;
  std::vector<State> U;  // homogeneous states of the VOA
};

/// Every generator of the subspace landing in the given degree of the module.
std::vector<GradedVector> subspace_span(const VertexModel& module, const SubspaceSpec& spec, int degree);
std::vector<GradedVector> subspace_span(const VertexModel& module, const SubspaceSpec& spec);

struct QuotientReport {
  std::vector<std::size_t> dims;  // per degree 0..cutoff
  std::size_t cumulative = 0;
  bool stabilized = false;
  int window = 3;
};

/// Per-degree dims of module / span(spec); stabilized when the last `window`
/// degrees contribute 0.
QuotientReport quotient_report(const VertexModel& module, const SubspaceSpec& spec, int window = 3);

struct ComplementU {
  std::vector<State> basis;
  std::vector<int> weights;
  std::vector<std::size_t> per_degree;
  int r_U = 0;
  int s_U = 0;
  /// No complement vectors in the last max(3, r_U) degrees.
  bool stabilized = false;
};

/// Graded complement of C_2(V) inside ker L_1, degree by degree, choosing the
/// lexicographically first kernel basis vectors. Throws VerificationError when
/// ker L_1 + C_2(V) does not fill some degree.
ComplementU complement_U(const VertexModel& voa);

int stabilization_window(int r_U);

/// States a_1(-n_1)...a_r(-n_r)1 with n_1 > ... > n_r > 0, a_i in U, r >= 1,
/// weight <= max_weight and (if max_mode > 0) n_1 <= max_mode.
std::vector<GradedVector> u_monomials(const VertexModel& voa, const std::vector<State>& U, int max_weight,
                                      int max_mode = 0);

/// Per degree: do the strictly decreasing U-monomials (with the vacuum) span V there?
std::vector<bool> spanning_set_check(const VertexModel& voa, const std::vector<State>& U);

/// k = k0 m with k0 = ceil((s_U + m - 1/2)^2 / 2).
long bound_k(long s_U, long m);

/// Is span(inner) contained in span(outer) in every degree up to the cutoff?
bool span_contained(const VertexModel& module, const SubspaceSpec& inner, const SubspaceSpec& outer);

/// Smallest k >= 2 with C_k(W) inside C_m(U,W) at every degree up to the cutoff
/// (nullopt if none up to limit). Evidence at desk scale only.
std::optional<int> empirical_min_k(const VertexModel& module, const std::vector<State>& U, int m, int limit);

struct CertificateEntry {
  std::size_t generator;  // index into U
  int n;                  // the mode is -n, n >= m
  State w;
  Rational coeff;
};

struct ReductionCertificate {
  State a;
  int q = 0;
  State w;
  int m = 0;
  std::vector<CertificateEntry> entries;
};

/// Rewrites a(-q)w (a homogeneous of weight >= 1, q >= m wt a) as a combination of
/// u(-n)w' with u in U and n >= m, following the weight induction: a = u + sum b'(-2)c,
/// b = L_{-1}b', associativity, and the commutator formula when i < m wt b.
ReductionCertificate reduce_certificate(const VertexModel& module, const State& a, int q, const State& w,
                                        const std::vector<State>& U, int m);

/// sum coeff u(-n) w over the entries.
State replay(const VertexModel& module, const ReductionCertificate& cert, const std::vector<State>& U);

}  // namespace voafin
