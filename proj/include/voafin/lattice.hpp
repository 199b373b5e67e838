#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "voafin/model.hpp"

namespace voafin {

using IntVec = std::vector<long>;
using RatVec = std::vector<Rational>;

/// Even positive-definite lattice given by its Gram matrix in the basis
/// alpha_1..alpha_l. Lattice vectors are integer alpha-coordinates; elements of
/// the rational span are rational alpha-coordinates.
class EvenLattice {
 public:
  /// Rejects asymmetric, indefinite or (when require_even) odd Gram matrices.
  explicit EvenLattice(std::vector<std::vector<long>> gram, bool require_even = true);

  int rank() const { return static_cast<int>(gram_.size()); }
  const std::vector<std::vector<long>>& gram() const { return gram_; }
  long gram(int i, int j) const { return gram_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const std::vector<RatVec>& gram_inverse() const { return inverse_; }

  long pair(const IntVec& a, const IntVec& b) const;
  Rational pair(const RatVec& a, const RatVec& b) const;
  Rational norm(const RatVec& a) const { return pair(a, a); }

  /// Lambda-coordinates (m_i = <v|alpha_i>) of a vector in alpha-coordinates, and back.
  RatVec dual_coords(const RatVec& alpha_coords) const;
  RatVec alpha_coords(const RatVec& dual_coords) const;
  /// Representative of x + L with every alpha-coordinate in [0,1).
  static RatVec reduce(const RatVec& alpha_coords);

  /// All gamma in L with <shift+gamma|shift+gamma> <= max_norm.
  std::vector<IntVec> short_vectors(const RatVec& shift, const Rational& max_norm) const;

  /// epsilon(beta, gamma) = prod_{i>j} (-1)^{b_i g_j <alpha_i|alpha_j>}.
  int cocycle(const IntVec& beta, const IntVec& gamma) const;

 private:
  std::vector<std::vector<long>> gram_;
  std::vector<RatVec> inverse_;
};

RatVec to_ratvec(const IntVec& v);
IntVec add(const IntVec& a, const IntVec& b);
IntVec negate(const IntVec& a);
/// "0", "a1", "-a1", "2a1-a2", ...
std::string lattice_vector_label(const IntVec& v);

/// Basis label of a Fock space: a multiset of Heisenberg factors alpha_i(-n)
/// stored as (n, i) pairs sorted in decreasing order, and a lattice part gamma
/// (the momentum is lambda + gamma).
struct FockLabel {
  std::vector<std::pair<int, int>> heis;
  IntVec gamma;
  int heis_degree() const;
  friend auto operator<=>(const FockLabel&, const FockLabel&) = default;
};

/// Fock-space model: the lattice VOA V_L (lambda = 0), its modules V_{lambda+L},
/// or, for the heisenberg kind, the Heisenberg VOA (gamma = 0 only) and its
/// Fock modules of arbitrary momentum.
class FockModel : public VertexModel {
 public:
  using Ptr = std::shared_ptr<const FockModel>;

  FockModel(ModelKind kind, std::shared_ptr<const EvenLattice> lattice, RatVec lambda, int cutoff, Ptr voa);

  /// lambda_dual in Lambda-coordinates; reduced modulo L before construction.
  static Ptr lattice_module(const std::vector<std::vector<long>>& gram, const RatVec& lambda_dual, int cutoff);
  static Ptr lattice_voa(const std::vector<std::vector<long>>& gram, int cutoff);
  /// Heisenberg VOA on the given Gram matrix (need not be even) and its Fock module of momentum p (alpha-coords).
  static Ptr heisenberg(const std::vector<std::vector<long>>& gram, const RatVec& momentum, int cutoff);

  ModelKind kind() const override { return kind_; }
  std::string name() const override { return name_; }
  const VertexModel& voa() const override { return voa_ ? *voa_ : *this; }
  State conformal_vector() const override;

  const EvenLattice& lattice() const { return *lattice_; }
  /// Reduced lambda in alpha-coordinates.
  const RatVec& lambda() const { return lambda_; }
  const FockLabel& label(Index i) const { return labels_.at(static_cast<std::size_t>(i)); }
  Index index_of(const FockLabel& label) const;
  bool contains(const FockLabel& label) const { return lookup_.count(label) != 0; }
  /// Ground vector e_{lambda+gamma}.
  Index ground(const IntVec& gamma) const { return index_of({{}, gamma}); }
  /// Lattice parts gamma present in the basis.
  const std::vector<IntVec>& momenta() const { return gammas_; }

  /// alpha_i(k) on a state.
  State heisenberg_mode(int i, int k, const State& w) const;

 protected:
  State mode_on_basis(Index a, int n, Index w) const override;

 private:
  State heisenberg_mode(int i, int k, Index w) const;
  State beta_mode(const RatVec& beta, int k, const State& w) const;
  State vertex_operator(const IntVec& beta, int n, Index w) const;
  State mode_label(Index a, int n, Index w) const;
  std::string format_label(const FockLabel& l) const;

  ModelKind kind_;
  std::string name_;
  std::shared_ptr<const EvenLattice> lattice_;
  RatVec lambda_;
  Ptr voa_;
  std::vector<FockLabel> labels_;
  std::map<FockLabel, Index> lookup_;
  std::vector<IntVec> gammas_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<Index, int, Index>, State> memo_;
};

/// Gamma_lambda = {beta in L : <delta|gamma> < <delta|delta> for every delta in L
/// other than 0 and gamma}, gamma = lambda + beta. lambda_dual is in
/// Lambda-coordinates and is used as given (no reduction).
std::vector<IntVec> gamma_set(const EvenLattice& lattice, const RatVec& lambda_dual);

/// Exact membership test for Gamma_lambda.
bool in_gamma_set(const EvenLattice& lattice, const RatVec& lambda_dual, const IntVec& beta);

/// Candidate set used by gamma_set: the Lambda-coordinate box |m_i| <= <alpha_i|alpha_i>
/// together with the translates gamma = +-alpha_i and beta = +-alpha_i.
std::vector<IntVec> gamma_candidates(const EvenLattice& lattice, const RatVec& lambda_dual);

/// e_{beta-alpha}(-<beta-alpha|lambda+alpha> - 1) e_{lambda+alpha} computed in the
/// model of V_{lambda+L}; returns the sign s with result = s e_{lambda+beta},
/// throwing VerificationError otherwise.
int single_jump_check(const EvenLattice& lattice, const RatVec& lambda_dual, const IntVec& alpha, const IntVec& beta);

struct B1SpanReport {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> deficiency;
  std::vector<IntVec> gamma;
  bool passed = false;
};

/// Checks V_{lambda+L} = sum_{alpha in Gamma} C e_{lambda+alpha} + B_1 degree by degree.
B1SpanReport b1_span_check(const std::vector<std::vector<long>>& gram, const RatVec& lambda_dual, int cutoff);

}  // namespace voafin
