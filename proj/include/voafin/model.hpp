#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "voafin/rational.hpp"
#include "voafin/sparse.hpp"

namespace voafin {

/// Raised whenever an exact result would need weights above a model's cutoff.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (an identity residual is
/// nonzero, a projection is not proportional, ...). Signals a bug.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state is a sparse combination of basis labels of one model.
using State = SparseVector;

/// Basis labels laid out degree by degree: indices of degree d occupy the
/// contiguous block [offset(d), offset(d) + dim(d)).
class GradedBasis {
 public:
  /// Labels must be appended in nondecreasing degree order.
  Index add(int degree, std::string label);

  std::size_t size() const { return degrees_.size(); }
  int degree(Index i) const { return degrees_.at(static_cast<std::size_t>(i)); }
  const std::string& label(Index i) const { return labels_.at(static_cast<std::size_t>(i)); }
  std::size_t dim(int d) const;
  Index offset(int d) const;
  int max_degree() const { return static_cast<int>(offsets_.size()) - 2; }
  /// dims(max_degree) as a vector indexed by degree.
  std::vector<std::size_t> dims() const;
  void finish(int max_degree);

 private:
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
  std::vector<Index> offsets_{0};
};

enum class ModelKind { VirasoroVerma, VirasoroIrreducible, Lattice, Heisenberg };

std::string_view to_string(ModelKind kind);

/// A truncated VOA or module: a graded basis up to a degree cutoff together with
/// an exact mode action a(n)w for states a of the acting VOA. Degrees are
/// weights measured from the lowest weight. Models are immutable after
/// construction; internal caches are synchronized.
class VertexModel {
 public:
  virtual ~VertexModel() = default;

  virtual ModelKind kind() const = 0;
  virtual std::string name() const = 0;

  const GradedBasis& basis() const { return basis_; }
  int cutoff() const { return cutoff_; }
  const Rational& lowest_weight() const { return lowest_weight_; }
  const Rational& central_charge() const { return central_charge_; }
  Rational weight(Index i) const { return lowest_weight_ + basis_.degree(i); }

  /// The VOA acting on this module; returns *this for VOA models.
  virtual const VertexModel& voa() const = 0;
  bool is_voa() const { return &voa() == this; }

  State basis_state(Index i) const { return State::unit(i); }
  /// Vacuum and conformal vector; only meaningful for VOA models.
  virtual State vacuum() const;
  virtual State conformal_vector() const = 0;

  /// Exact a(n)w. Throws TruncationError if an output weight exceeds the cutoff.
  State mode(const State& a, int n, const State& w) const;

  /// L_n w.
  virtual State virasoro(int n, const State& w) const;

  /// Degree of a homogeneous state; throws std::invalid_argument otherwise.
  int degree_of(const State& w) const;
  /// Largest degree present (-1 for the zero state).
  int max_degree_of(const State& w) const;

  std::string format(const State& w) const;

 protected:
  /// a(n)w for basis labels; a indexes voa().basis().
  virtual State mode_on_basis(Index a, int n, Index w) const = 0;

  /// Output degree of a(n)w, throwing TruncationError above the cutoff.
  int checked_output_degree(int a_weight, int n, int w_degree) const;

  GradedBasis basis_;
  int cutoff_ = 0;
  Rational lowest_weight_ = 0;
  Rational central_charge_ = 0;
};

using ModelPtr = std::shared_ptr<const VertexModel>;

}  // namespace voafin
