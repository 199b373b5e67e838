#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "voafin/model.hpp"
#include "voafin/polynomial.hpp"

namespace voafin {

struct MinimalParams {
  long p = 0, q = 0, r = 0, s = 0;
};

struct MinimalValues {
  Rational c;
  Rational h;
};

/// c_{p,q} and h_{p,q;r,s}. Validates coprimality and ranges, and checks the
/// symmetry h_{r,s} = h_{q-r,p-s}.
MinimalValues minimal_params_values(const MinimalParams& mp);
Rational minimal_central_charge(long p, long q);

/// Weakly decreasing positive parts; {n1,...,nk} is L_{-n1}...L_{-nk}v.
using Partition = std::vector<int>;

std::vector<Partition> partitions_of(int n);
std::string partition_label(const Partition& part, const std::string& ground = "v");

/// Exchange form of a Verma vector.
using VermaVector = std::map<Partition, Rational>;

/// Verma module M(c,h) truncated at a level cutoff, PBW basis ordered by level
/// and then by partition.
class VermaSpace {
 public:
  VermaSpace(Rational c, Rational h, int cutoff);

  const Rational& c() const { return c_; }
  const Rational& h() const { return h_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return parts_.size(); }
  const Partition& partition(Index i) const { return parts_.at(static_cast<std::size_t>(i)); }
  int level(Index i) const { return levels_.at(static_cast<std::size_t>(i)); }
  Index index(const Partition& part) const;
  Index offset(int level) const { return offsets_.at(static_cast<std::size_t>(level)); }
  std::size_t dim(int level) const;

  /// L_n on a basis monomial. Throws TruncationError above the cutoff.
  SparseVector apply(int n, Index i) const;
  SparseVector apply(int n, const SparseVector& v) const;
  /// L_{-n1}...L_{-nk} applied to v.
  SparseVector apply_word(const Partition& word, const SparseVector& v) const;

  SparseVector from_exchange(const VermaVector& v) const;
  VermaVector to_exchange(const SparseVector& v) const;

 private:
  SparseVector compute(int n, Index i) const;

  Rational c_, h_;
  int cutoff_;
  std::vector<Partition> parts_;
  std::vector<int> levels_;
  std::vector<Index> offsets_;
  std::map<Partition, Index> lookup_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, Index>, SparseVector> memo_;
};

/// Basis of {u at `level` : L_1 u = L_2 u = 0}. A one-dimensional result is
/// normalized so that its L_{-1}^level coefficient is 1 (when nonzero).
std::vector<VermaVector> singular_vectors(const Rational& c, const Rational& h, int level);

/// Quotient of M(c,h) by the submodule generated by the given Verma vectors,
/// truncated at a level cutoff. Covers the Verma model itself (no generators),
/// the universal VOA (generator L_{-1}v at h = 0) and irreducible minimal
/// models (generators u_{r,s}, u_{q-r,p-s}).
class VirasoroModel : public VertexModel {
 public:
  using Ptr = std::shared_ptr<const VirasoroModel>;

  VirasoroModel(ModelKind kind, std::string name, Rational c, Rational h, int cutoff,
                const std::vector<VermaVector>& generators, Ptr voa);

  static Ptr universal_voa(const Rational& c, int cutoff);
  static Ptr verma(const Rational& c, const Rational& h, int cutoff);
  static Ptr irreducible(const MinimalParams& mp, int cutoff);

  ModelKind kind() const override { return kind_; }
  std::string name() const override { return name_; }
  const VertexModel& voa() const override { return voa_ ? *voa_ : *this; }
  State conformal_vector() const override;
  State virasoro(int n, const State& w) const override;

  const VermaSpace& verma_space() const { return *verma_; }
  /// Verma monomial representing basis label i.
  const Partition& partition_of(Index i) const { return verma_->partition(lift_.at(static_cast<std::size_t>(i))); }
  /// Image of a Verma vector in the quotient.
  State project(const SparseVector& verma_vector) const;
  State project(const VermaVector& v) const { return project(verma_->from_exchange(v)); }
  State monomial(const Partition& part) const;

 protected:
  State mode_on_basis(Index a, int n, Index w) const override;

 private:
  State mode_partition(const Partition& a, int n, const State& w) const;
  State mode_partition(const Partition& a, int n, Index w) const;

  ModelKind kind_;
  std::string name_;
  Ptr voa_;
  std::shared_ptr<const VermaSpace> verma_;
  std::vector<Index> lift_;          // basis index -> Verma index
  std::vector<SparseVector> proj_;   // Verma index -> state
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<Partition, int, Index>, State> memo_;
};

/// Feigin-Fuchs polynomial F_{r,s}(x,y;t), the square root of the product
/// over (k,l) of (x^2 - {(r-2k-1)t^{1/2} - (s-2l-1)t^{-1/2}}^2 y), assembled
/// by pairing (k,l) with (r-1-k, s-1-l).
BivariatePoly feigin_fuchs(int r, int s);
/// The product itself, expanded.
BivariatePoly feigin_fuchs_square(int r, int s);

/// Drops Verma monomials with a part >= 3 and reads L_{-2}^j L_{-1}^i as x^i y^j.
std::map<std::pair<int, int>, Rational> ff_projection(const VermaVector& v);

struct FFVerification {
  VermaVector singular_vector;
  std::map<std::pair<int, int>, Rational> projection;
  std::map<std::pair<int, int>, Rational> polynomial;  // F at t = p/q
  Rational alpha;
};

/// Throws VerificationError when the singular space is not one-dimensional or
/// the projection is not proportional to F_{r,s}(x,y;p/q).
FFVerification ff_verify(const MinimalParams& mp);

struct QuotientRingBounds {
  long c2_vacuum_bound = 0;
  long b1_bound = 0;
  std::map<int, Rational> vacuum_restriction;  // F_{q-1,p-1}(0,y;p/q) by y-degree
};

QuotientRingBounds quotient_ring_bounds(const MinimalParams& mp);

}  // namespace voafin
