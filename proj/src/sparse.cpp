#include "voafin/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace voafin {

SparseVector::SparseVector(std::initializer_list<std::pair<const Index, Rational>> init) {
  for (const auto& [i, v] : init) add(i, v);
}

Rational SparseVector::operator[](Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Rational(0) : it->second;
}

void SparseVector::add(Index i, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = entries_.try_emplace(i, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

void SparseVector::set(Index i, const Rational& value) {
  if (value == 0) {
    entries_.erase(i);
  } else {
    entries_[i] = value;
  }
}

void SparseVector::axpy(const Rational& scale, const SparseVector& other) {
  if (scale == 0) return;
  for (const auto& [i, v] : other.entries_) add(i, scale * v);
}

SparseVector& SparseVector::operator+=(const SparseVector& other) {
  for (const auto& [i, v] : other.entries_) add(i, v);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other) {
  for (const auto& [i, v] : other.entries_) add(i, -v);
  return *this;
}

SparseVector& SparseVector::operator*=(const Rational& scale) {
  if (scale == 0) {
    entries_.clear();
  } else {
    for (auto& entry : entries_) entry.second *= scale;
  }
  return *this;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

SparseMatrix SparseMatrix::from_rows(std::vector<SparseVector> rows, std::size_t cols) {
  SparseMatrix m(0, cols);
  for (const auto& r : rows) {
    if (!r.empty() && (r.leading_index() < 0 || static_cast<std::size_t>(r.max_index()) >= cols)) {
      throw std::out_of_range("sparse row index outside declared column count");
    }
  }
  m.rows_ = std::move(rows);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& dense) {
  std::size_t cols = dense.empty() ? 0 : dense.front().size();
  SparseMatrix m(dense.size(), cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dense[r][c]);
  }
  return m;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_.size() || c >= cols_) throw std::out_of_range("matrix index out of range");
  rows_[r].set(static_cast<Index>(c), value);
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational acc = 0;
    for (const auto& [c, x] : rows_[r]) acc += x * v[c];
    out.add(static_cast<Index>(r), acc);
  }
  return out;
}

namespace {

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& entry : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), entry.second.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& entry : row) mpz_divexact(entry.second.get_mpz_t(), entry.second.get_mpz_t(), g.get_mpz_t());
  }
}

const Integer* entry_at(const IntRow& row, Index col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, Index c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Returns primitive(a*target - b*pivot) where b/a eliminates `col` from target.
IntRow eliminate(const IntRow& target, const IntRow& pivot, Index col) {
  const Integer* t = entry_at(target, col);
  const Integer* p = entry_at(pivot, col);
  Integer g;
  mpz_gcd(g.get_mpz_t(), t->get_mpz_t(), p->get_mpz_t());
  Integer a = *p / g;
  Integer b = *t / g;
  IntRow out;
  out.reserve(target.size() + pivot.size());
  auto it = target.begin();
  auto jt = pivot.begin();
  while (it != target.end() || jt != pivot.end()) {
    if (jt == pivot.end() || (it != target.end() && it->first < jt->first)) {
      out.emplace_back(it->first, a * it->second);
      ++it;
    } else if (it == target.end() || jt->first < it->first) {
      out.emplace_back(jt->first, -b * jt->second);
      ++jt;
    } else {
      Integer v = a * it->second - b * jt->second;
      if (v != 0) out.emplace_back(it->first, std::move(v));
      ++it;
      ++jt;
    }
  }
  make_primitive(out);
  return out;
}

}  // namespace

IntRow to_primitive_row(const SparseVector& v) {
  IntRow row;
  if (v.empty()) return row;
  Integer lcm = 1;
  for (const auto& [i, x] : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  row.reserve(v.size());
  for (const auto& [i, x] : v) {
    Integer scaled = lcm / x.get_den() * x.get_num();
    row.emplace_back(i, std::move(scaled));
  }
  make_primitive(row);
  return row;
}

namespace {

struct IntEchelon {
  std::vector<IntRow> rows;
  std::vector<std::pair<Index, std::size_t>> pivots;  // (column, row)
};

// Reduced row-echelon form over Z: every pivot column is cleared in all other rows.
IntEchelon integer_rref(const std::vector<SparseVector>& input, std::size_t cols) {
  IntEchelon e;
  e.rows.reserve(input.size());
  for (const auto& v : input) {
    IntRow row = to_primitive_row(v);
    if (!row.empty()) e.rows.push_back(std::move(row));
  }
  std::vector<bool> used(e.rows.size(), false);
  for (std::size_t col = 0; col < cols && e.pivots.size() < e.rows.size(); ++col) {
    Index c = static_cast<Index>(col);
    std::size_t best = e.rows.size();
    std::size_t best_bits = 0;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      if (used[r]) continue;
      const Integer* x = entry_at(e.rows[r], c);
      if (!x) continue;
      std::size_t bits = mpz_sizeinbase(x->get_mpz_t(), 2);
      if (best == e.rows.size() || bits < best_bits) {
        best = r;
        best_bits = bits;
      }
    }
    if (best == e.rows.size()) continue;
    used[best] = true;
    e.pivots.emplace_back(c, best);
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      if (r == best || !entry_at(e.rows[r], c)) continue;
      e.rows[r] = eliminate(e.rows[r], e.rows[best], c);
    }
  }
  return e;
}

}  // namespace

RankKernel rank_and_kernel(const SparseMatrix& m) {
  std::vector<SparseVector> input;
  input.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) input.push_back(m.row(r));
  IntEchelon e = integer_rref(input, m.cols());

  RankKernel out;
  out.rank = e.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& [c, r] : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseVector k;
    k.set(static_cast<Index>(f), 1);
    for (const auto& [c, r] : e.pivots) {
      const Integer* af = entry_at(e.rows[r], static_cast<Index>(f));
      if (!af) continue;
      const Integer* ap = entry_at(e.rows[r], c);
      k.set(c, -Rational(*af) / Rational(*ap));
    }
    out.kernel.push_back(std::move(k));
  }
  return out;
}

ReducedEchelon reduced_echelon(const std::vector<SparseVector>& rows, std::size_t cols) {
  IntEchelon e = integer_rref(rows, cols);
  ReducedEchelon out;
  for (const auto& [c, r] : e.pivots) {
    const IntRow& row = e.rows[r];
    Rational lead(*entry_at(row, c));
    SparseVector v;
    for (const auto& [i, x] : row) v.set(i, Rational(x) / lead);
    out.pivots.push_back(c);
    out.rows.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const std::vector<SparseVector>& rows) {
  EchelonBasis basis;
  for (const auto& r : rows) basis.insert(r);
  return basis.rank();
}

std::optional<std::vector<Rational>> solve_combination(const std::vector<SparseVector>& generators,
                                                       const SparseVector& target) {
  // Columns are generators followed by the target; a kernel vector with a
  // nonzero target coordinate yields the combination.
  Index max_row = -1;
  for (const auto& g : generators) {
    if (!g.empty()) max_row = std::max(max_row, g.max_index());
  }
  if (!target.empty()) max_row = std::max(max_row, target.max_index());
  if (target.empty()) return std::vector<Rational>(generators.size(), Rational(0));
  if (max_row < 0) return std::nullopt;

  std::size_t n = generators.size();
  std::vector<SparseVector> rows(static_cast<std::size_t>(max_row) + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [i, v] : generators[j]) {
      if (i < 0) throw std::out_of_range("negative index in solve_combination");
      rows[static_cast<std::size_t>(i)].set(static_cast<Index>(j), v);
    }
  }
  for (const auto& [i, v] : target) {
    if (i < 0) throw std::out_of_range("negative index in solve_combination");
    rows[static_cast<std::size_t>(i)].set(static_cast<Index>(n), v);
  }
  auto rk = rank_and_kernel(SparseMatrix::from_rows(std::move(rows), n + 1));
  for (const auto& k : rk.kernel) {
    Rational t = k[static_cast<Index>(n)];
    if (t == 0) continue;
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = -k[static_cast<Index>(j)] / t;
    return x;
  }
  return std::nullopt;
}

std::vector<std::size_t> span_quotient_dims(const std::vector<std::size_t>& ambient_dims,
                                            const std::vector<GradedVector>& spanning) {
  std::vector<Index> offset(ambient_dims.size() + 1, 0);
  for (std::size_t d = 0; d < ambient_dims.size(); ++d) {
    offset[d + 1] = offset[d] + static_cast<Index>(ambient_dims[d]);
  }
  std::vector<EchelonBasis> per_degree(ambient_dims.size());
  for (const auto& g : spanning) {
    if (g.degree < 0 || static_cast<std::size_t>(g.degree) >= ambient_dims.size()) {
      throw std::invalid_argument("spanning vector declared in degree " + std::to_string(g.degree) +
                                  " outside the ambient range");
    }
    auto d = static_cast<std::size_t>(g.degree);
    for (const auto& [i, v] : g.vector) {
      if (i < offset[d] || i >= offset[d + 1]) {
        throw std::invalid_argument("spanning vector is not homogeneous of declared degree " +
                                    std::to_string(g.degree));
      }
    }
    per_degree[d].insert(g.vector);
  }
  std::vector<std::size_t> out(ambient_dims.size());
  for (std::size_t d = 0; d < ambient_dims.size(); ++d) out[d] = ambient_dims[d] - per_degree[d].rank();
  return out;
}

IntRow EchelonBasis::reduce(IntRow row) const {
  while (!row.empty()) {
    auto it = pivot_row_.find(row.front().first);
    if (it == pivot_row_.end()) break;
    row = eliminate(row, rows_[it->second], row.front().first);
  }
  return row;
}

bool EchelonBasis::insert(const SparseVector& v) { return insert_row(to_primitive_row(v)); }

bool EchelonBasis::insert_row(IntRow row) {
  make_primitive(row);
  row = reduce(std::move(row));
  if (row.empty()) return false;
  pivot_row_.emplace(row.front().first, rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

bool EchelonBasis::contains(const SparseVector& v) const { return reduce(to_primitive_row(v)).empty(); }

std::vector<Index> EchelonBasis::pivots() const {
  std::vector<Index> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.front().first);
  return out;
}

}  // namespace voafin
