#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "voafin/rational.hpp"

namespace voafin {

using Index = std::int64_t;

/// Sparse vector over the rationals. Zero entries are never stored.
class SparseVector {
 public:
  using Storage = std::map<Index, Rational>;
  using const_iterator = Storage::const_iterator;

  SparseVector() = default;
  SparseVector(std::initializer_list<std::pair<const Index, Rational>> init);

  static SparseVector unit(Index i) { return SparseVector{{i, Rational(1)}}; }

  Rational operator[](Index i) const;
  void add(Index i, const Rational& value);
  void set(Index i, const Rational& value);
  /// this += scale * other
  void axpy(const Rational& scale, const SparseVector& other);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }
  Index leading_index() const { return entries_.begin()->first; }
  Index max_index() const { return entries_.rbegin()->first; }

  SparseVector& operator+=(const SparseVector& other);
  SparseVector& operator-=(const SparseVector& other);
  SparseVector& operator*=(const Rational& scale);

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Rational& s, SparseVector a) { return a *= s; }
  friend SparseVector operator-(SparseVector a) { return a *= Rational(-1); }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.entries_ == b.entries_; }

 private:
  Storage entries_;
};

/// Row-major sparse matrix with declared dimensions.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols);
  static SparseMatrix from_rows(std::vector<SparseVector> rows, std::size_t cols);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseVector& row(std::size_t r) const { return rows_.at(r); }
  void set(std::size_t r, std::size_t c, const Rational& value);
  SparseVector apply(const SparseVector& v) const;

 private:
  std::size_t cols_;
  std::vector<SparseVector> rows_;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseVector> kernel;
};

/// Exact rank and a kernel basis via fraction-free elimination on primitive
/// integer rows; pivots are chosen with minimal bit length.
RankKernel rank_and_kernel(const SparseMatrix& m);

/// Reduced row-echelon form: rows[k][pivots[k]] = 1 and every other row is
/// zero in column pivots[k]. Pivots increase; earlier columns are preferred.
struct ReducedEchelon {
  std::vector<Index> pivots;
  std::vector<SparseVector> rows;
};

ReducedEchelon reduced_echelon(const std::vector<SparseVector>& rows, std::size_t cols);

std::size_t rank(const std::vector<SparseVector>& rows);

/// Finds x with sum_j x_j generators[j] == target, or nullopt if none exists.
std::optional<std::vector<Rational>> solve_combination(const std::vector<SparseVector>& generators,
                                                       const SparseVector& target);

/// A vector tagged with the degree it is declared homogeneous of. Indices are
/// global positions in a graded ambient space laid out degree by degree.
struct GradedVector {
  int degree = 0;
  SparseVector vector;
};

/// dim(ambient_d) - rank(span restricted to degree d), for every degree d.
/// Throws std::invalid_argument if a vector has an index outside its
/// declared degree block.
std::vector<std::size_t> span_quotient_dims(const std::vector<std::size_t>& ambient_dims,
                                            const std::vector<GradedVector>& spanning);

/// Primitive integer row: sorted (index, nonzero integer) pairs.
using IntRow = std::vector<std::pair<Index, Integer>>;

/// Clears denominators and removes content; leading entry made positive.
IntRow to_primitive_row(const SparseVector& v);

/// Incrementally maintained row-echelon basis. A row's pivot is its smallest
/// index; callers choose the column order by choosing the indices.
class EchelonBasis {
 public:
  /// Reduces and inserts; returns true when the rank grew.
  bool insert(const SparseVector& v);
  bool insert_row(IntRow row);
  /// True when v lies in the span.
  bool contains(const SparseVector& v) const;
  std::size_t rank() const { return rows_.size(); }
  /// Pivot column of every basis row.
  std::vector<Index> pivots() const;

 private:
  IntRow reduce(IntRow row) const;

  std::vector<IntRow> rows_;
  std::unordered_map<Index, std::size_t> pivot_row_;
};

}  // namespace voafin
