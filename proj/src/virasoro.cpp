#include "voafin/virasoro.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace voafin {

Rational minimal_central_charge(long p, long q) {
  Rational d = p - q;
  return Rational(1) - Rational(6) * d * d / Rational(p * q);
}

MinimalValues minimal_params_values(const MinimalParams& mp) {
  auto [p, q, r, s] = mp;
  if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime positive integers");
  if (r < 1 || r >= q || s < 1 || s >= p) throw std::invalid_argument("need 1 <= r < q and 1 <= s < p");
  auto h_of = [&](long rr, long ss) -> Rational {
    Rational a = rr * p - ss * q;
    Rational b = p - q;
    return (a * a - b * b) / Rational(4 * p * q);
  };
  MinimalValues out{minimal_central_charge(p, q), h_of(r, s)};
  if (out.h != h_of(q - r, p - s)) throw VerificationError("h_{r,s} != h_{q-r,p-s}");
  return out;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  Partition cur;
  // Reverse-lexicographic generation: (n), (n-1,1), ...
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(remaining, max_part); k >= 1; --k) {
      cur.push_back(k);
      self(self, remaining - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

std::string partition_label(const Partition& part, const std::string& ground) {
  std::string out;
  for (int k : part) out += "L_{-" + std::to_string(k) + "}";
  return out + ground;
}

VermaSpace::VermaSpace(Rational c, Rational h, int cutoff) : c_(std::move(c)), h_(std::move(h)), cutoff_(cutoff) {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  for (int d = 0; d <= cutoff; ++d) {
    offsets_.push_back(static_cast<Index>(parts_.size()));
    for (auto& part : partitions_of(d)) {
      lookup_.emplace(part, static_cast<Index>(parts_.size()));
      parts_.push_back(std::move(part));
      levels_.push_back(d);
    }
  }
  offsets_.push_back(static_cast<Index>(parts_.size()));
}

Index VermaSpace::index(const Partition& part) const {
  auto it = lookup_.find(part);
  if (it == lookup_.end()) throw TruncationError("Verma monomial " + partition_label(part) + " beyond cutoff");
  return it->second;
}

std::size_t VermaSpace::dim(int level) const {
  if (level < 0 || level > cutoff_) return 0;
  return static_cast<std::size_t>(offsets_[static_cast<std::size_t>(level) + 1] - offsets_[static_cast<std::size_t>(level)]);
}

SparseVector VermaSpace::apply(int n, Index i) const {
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find({n, i});
    if (it != memo_.end()) return it->second;
  }
  SparseVector v = compute(n, i);
  std::lock_guard lock(mutex_);
  return memo_.try_emplace({n, i}, std::move(v)).first->second;
}

SparseVector VermaSpace::apply(int n, const SparseVector& v) const {
  SparseVector out;
  for (const auto& [i, x] : v) out.axpy(x, apply(n, i));
  return out;
}

SparseVector VermaSpace::apply_word(const Partition& word, const SparseVector& v) const {
  SparseVector out = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) out = apply(-*it, out);
  return out;
}

SparseVector VermaSpace::compute(int n, Index i) const {
  const Partition& part = partition(i);
  int out_level = level(i) - n;
  if (out_level < 0) return {};
  if (out_level > cutoff_) {
    throw TruncationError("Verma action L_" + std::to_string(n) + " on level " + std::to_string(level(i)) +
                          " exceeds cutoff " + std::to_string(cutoff_));
  }
  if (n == 0) return (h_ + level(i)) * SparseVector::unit(i);
  if (part.empty()) {
    if (n > 0) return {};
    return SparseVector::unit(index({-n}));
  }
  int lead = part.front();
  if (-n >= lead) {
    Partition np{-n};
    np.insert(np.end(), part.begin(), part.end());
    return SparseVector::unit(index(np));
  }
  // L_n L_{-lead} R = L_{-lead} L_n R + (n + lead) L_{n-lead} R + (c/12)(n^3 - n) delta_{n,lead} R
  Index rest = index(Partition(part.begin() + 1, part.end()));
  SparseVector out = apply(-lead, apply(n, rest));
  out.axpy(Rational(n + lead), apply(n - lead, rest));
  if (n == lead) out.add(rest, c_ / 12 * (Rational(n) * n * n - n));
  return out;
}

SparseVector VermaSpace::from_exchange(const VermaVector& v) const {
  SparseVector out;
  for (const auto& [part, x] : v) out.add(index(part), x);
  return out;
}

VermaVector VermaSpace::to_exchange(const SparseVector& v) const {
  VermaVector out;
  for (const auto& [i, x] : v) out.emplace(partition(i), x);
  return out;
}

std::vector<VermaVector> singular_vectors(const Rational& c, const Rational& h, int level) {
  if (level < 0) throw std::invalid_argument("negative level");
  VermaSpace space(c, h, level);
  std::size_t cols = space.dim(level);
  Index off = space.offset(level);
  std::map<Index, std::size_t> row_of;
  std::vector<SparseVector> rows;
  for (std::size_t j = 0; j < cols; ++j) {
    for (int n : {1, 2}) {
      for (const auto& [t, x] : space.apply(n, off + static_cast<Index>(j))) {
        auto [it, inserted] = row_of.try_emplace(t, rows.size());
        if (inserted) rows.emplace_back();
        rows[it->second].set(static_cast<Index>(j), x);
      }
    }
  }
  RankKernel rk = rank_and_kernel(SparseMatrix::from_rows(std::move(rows), cols));
  std::vector<VermaVector> out;
  Index ones = space.index(Partition(static_cast<std::size_t>(level), 1));
  for (auto& k : rk.kernel) {
    SparseVector v;
    for (const auto& [j, x] : k) v.set(off + j, x);
    Rational lead = v[ones] != 0 ? v[ones] : v.begin()->second;
    v *= 1 / lead;
    out.push_back(space.to_exchange(v));
  }
  return out;
}

namespace {

// Preferred pivot columns first: more L_{-1} factors, then longer partitions.
bool pivot_preferred(const Partition& a, const Partition& b) {
  auto ones = [](const Partition& p) { return std::count(p.begin(), p.end(), 1); };
  if (ones(a) != ones(b)) return ones(a) > ones(b);
  if (a.size() != b.size()) return a.size() > b.size();
  return a > b;
}

}  // namespace

VirasoroModel::VirasoroModel(ModelKind kind, std::string name, Rational c, Rational h, int cutoff,
                             const std::vector<VermaVector>& generators, Ptr voa)
    : kind_(kind), name_(std::move(name)), voa_(std::move(voa)) {
  if (!voa_ && h != 0) throw std::invalid_argument("a Virasoro VOA model needs h = 0");
  cutoff_ = cutoff;
  lowest_weight_ = h;
  central_charge_ = c;
  verma_ = std::make_shared<VermaSpace>(c, h, cutoff);
  const VermaSpace& vs = *verma_;
  std::vector<std::pair<int, SparseVector>> gens;
  for (const auto& g : generators) {
    if (g.empty()) continue;
    int lvl = 0;
    for (int k : g.begin()->first) lvl += k;
    if (lvl > cutoff) continue;
    gens.emplace_back(lvl, vs.from_exchange(g));
  }

  proj_.resize(vs.size());
  const std::string ground = voa_ ? "v" : "1";
  for (int d = 0; d <= cutoff; ++d) {
    Index off = vs.offset(d);
    std::size_t dim = vs.dim(d);
    std::vector<Index> order(dim);
    std::iota(order.begin(), order.end(), off);
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return pivot_preferred(vs.partition(a), vs.partition(b)); });
    std::vector<Index> column_of(dim);
    for (std::size_t k = 0; k < dim; ++k) column_of[static_cast<std::size_t>(order[k] - off)] = static_cast<Index>(k);

    std::vector<SparseVector> sub;
    for (const auto& [lvl, g] : gens) {
      if (lvl > d) continue;
      for (const auto& word : partitions_of(d - lvl)) {
        SparseVector v;
        for (const auto& [i, x] : vs.apply_word(word, g)) v.set(column_of[static_cast<std::size_t>(i - off)], x);
        sub.push_back(std::move(v));
      }
    }
    ReducedEchelon re = reduced_echelon(sub, dim);
    std::vector<bool> is_pivot(dim, false);
    for (Index col : re.pivots) is_pivot[static_cast<std::size_t>(col)] = true;
    std::map<Index, Index> basis_of;  // local column -> basis index
    for (std::size_t k = 0; k < dim; ++k) {
      Index vi = off + static_cast<Index>(k);
      Index col = column_of[k];
      if (is_pivot[static_cast<std::size_t>(col)]) continue;
      Index b = basis_.add(d, partition_label(vs.partition(vi), ground));
      lift_.push_back(vi);
      basis_of[col] = b;
      proj_[static_cast<std::size_t>(vi)] = State::unit(b);
    }
    for (std::size_t r = 0; r < re.pivots.size(); ++r) {
      State image;
      for (const auto& [col, x] : re.rows[r]) {
        if (col == re.pivots[r]) continue;
        image.add(basis_of.at(col), -x);
      }
      proj_[static_cast<std::size_t>(order[static_cast<std::size_t>(re.pivots[r])])] = std::move(image);
    }
  }
  basis_.finish(cutoff);
}

VirasoroModel::Ptr VirasoroModel::universal_voa(const Rational& c, int cutoff) {
  return std::make_shared<VirasoroModel>(ModelKind::VirasoroVerma, "V_c(c=" + to_short_string(c) + ")", c, 0, cutoff,
                                         std::vector<VermaVector>{{{{1}, Rational(1)}}}, nullptr);
}

VirasoroModel::Ptr VirasoroModel::verma(const Rational& c, const Rational& h, int cutoff) {
  return std::make_shared<VirasoroModel>(ModelKind::VirasoroVerma,
                                         "M(" + to_short_string(c) + "," + to_short_string(h) + ")", c, h, cutoff,
                                         std::vector<VermaVector>{}, universal_voa(c, cutoff));
}

VirasoroModel::Ptr VirasoroModel::irreducible(const MinimalParams& mp, int cutoff) {
  MinimalValues vals = minimal_params_values(mp);
  std::vector<VermaVector> gens;
  for (auto [r, s] : {std::pair{mp.r, mp.s}, std::pair{mp.q - mp.r, mp.p - mp.s}}) {
    long level = r * s;
    if (level > cutoff) continue;
    auto sv = singular_vectors(vals.c, vals.h, static_cast<int>(level));
    if (sv.size() != 1) {
      throw VerificationError("singular space at level " + std::to_string(level) + " has dimension " +
                              std::to_string(sv.size()));
    }
    gens.push_back(sv.front());
  }
  Ptr voa = vals.h == 0 ? nullptr : irreducible({mp.p, mp.q, 1, 1}, cutoff);
  std::string name = "L(" + to_short_string(vals.c) + "," + to_short_string(vals.h) + ")";
  return std::make_shared<VirasoroModel>(ModelKind::VirasoroIrreducible, name, vals.c, vals.h, cutoff, gens,
                                         std::move(voa));
}

State VirasoroModel::project(const SparseVector& verma_vector) const {
  State out;
  for (const auto& [i, x] : verma_vector) out.axpy(x, proj_.at(static_cast<std::size_t>(i)));
  return out;
}

State VirasoroModel::monomial(const Partition& part) const { return project(SparseVector::unit(verma_->index(part))); }

State VirasoroModel::conformal_vector() const {
  if (!is_voa()) return voa().conformal_vector();
  if (cutoff_ < 2) throw TruncationError("conformal vector needs cutoff >= 2");
  return monomial({2});
}

State VirasoroModel::virasoro(int n, const State& w) const {
  State out;
  for (const auto& [i, x] : w) out.axpy(x, project(verma_->apply(n, lift_.at(static_cast<std::size_t>(i)))));
  return out;
}

State VirasoroModel::mode_on_basis(Index a, int n, Index w) const {
  const auto& v = static_cast<const VirasoroModel&>(voa());
  return mode_partition(v.partition_of(a), n, w);
}

State VirasoroModel::mode_partition(const Partition& a, int n, const State& w) const {
  State out;
  for (const auto& [i, x] : w) out.axpy(x, mode_partition(a, n, i));
  return out;
}

// Peels the leftmost factor: a = L_{-p} b = omega(-j-1) b with j = p - 2, and
// (omega(-j-1)b)(n) = sum_i C(j+i,i) [omega(-j-1-i) b(n+i) + (-1)^j b(n-j-1-i) omega(i)].
// The i = 0 term of the second family is rewritten as L_{-1} b(k) + k b(k-1) so
// that no intermediate state exceeds the output weight.
State VirasoroModel::mode_partition(const Partition& a, int n, Index w) const {
  int wt_a = std::accumulate(a.begin(), a.end(), 0);
  int deg_w = basis_.degree(w);
  int out_degree = checked_output_degree(wt_a, n, deg_w);
  if (out_degree < 0) return {};
  if (a.empty()) return n == -1 ? State::unit(w) : State{};

  auto key = std::make_tuple(a, n, w);
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  int p = a.front();
  Partition b(a.begin() + 1, a.end());
  int wt_b = wt_a - p;
  State out;
  if (p == 1) {
    out.axpy(Rational(-n), mode_partition(b, n - 1, w));
  } else {
    int j = p - 2;
    for (int i = 0; wt_b + deg_w - n - i - 1 >= 0; ++i) {
      State bw = mode_partition(b, n + i, w);
      if (!bw.empty()) out.axpy(binomial(j + i, i), virasoro(-p - i, bw));
    }
    Rational sign = (j % 2 == 0) ? 1 : -1;
    int k = n - p + 1;
    State bw = mode_partition(b, k, w);
    out.axpy(sign, virasoro(-1, bw));
    out.axpy(sign * k, mode_partition(b, k - 1, w));
    for (int i = 1; i - 1 <= deg_w; ++i) {
      State lw = virasoro(i - 1, State::unit(w));
      if (lw.empty()) continue;
      out.axpy(sign * binomial(j + i, i), mode_partition(b, k - i, lw));
    }
  }
  std::lock_guard lock(mutex_);
  return memo_.try_emplace(key, std::move(out)).first->second;
}

BivariatePoly feigin_fuchs_square(int r, int s) {
  if (r < 1 || s < 1) throw std::invalid_argument("r, s must be positive");
  BivariatePoly out = BivariatePoly::constant(LaurentScalar(Rational(1)));
  for (int k = 0; k < r; ++k) {
    for (int l = 0; l < s; ++l) {
      long a = r - 2 * k - 1;
      long b = s - 2 * l - 1;
      LaurentScalar a2 = LaurentScalar::monomial(Rational(a * a), 1) + LaurentScalar(Rational(-2 * a * b)) +
                         LaurentScalar::monomial(Rational(b * b), -1);
      out *= BivariatePoly::x_power(2) - BivariatePoly::term(0, 1, a2);
    }
  }
  return out;
}

BivariatePoly feigin_fuchs(int r, int s) {
  if (r < 1 || s < 1) throw std::invalid_argument("r, s must be positive");
  BivariatePoly out = BivariatePoly::constant(LaurentScalar(Rational(1)));
  for (int k = 0; k < r; ++k) {
    for (int l = 0; l < s; ++l) {
      std::pair<int, int> self{k, l}, partner{r - 1 - k, s - 1 - l};
      if (self == partner) {
        out *= BivariatePoly::x_power(1);
        continue;
      }
      if (partner < self) continue;
      long a = r - 2 * k - 1;
      long b = s - 2 * l - 1;
      LaurentScalar a2 = LaurentScalar::monomial(Rational(a * a), 1) + LaurentScalar(Rational(-2 * a * b)) +
                         LaurentScalar::monomial(Rational(b * b), -1);
      out *= BivariatePoly::x_power(2) - BivariatePoly::term(0, 1, a2);
    }
  }
  return out;
}

std::map<std::pair<int, int>, Rational> ff_projection(const VermaVector& v) {
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [part, x] : v) {
    if (std::any_of(part.begin(), part.end(), [](int k) { return k >= 3; })) continue;
    int i = static_cast<int>(std::count(part.begin(), part.end(), 1));
    int j = static_cast<int>(std::count(part.begin(), part.end(), 2));
    out[{i, j}] += x;
    if (out[{i, j}] == 0) out.erase({i, j});
  }
  return out;
}

FFVerification ff_verify(const MinimalParams& mp) {
  MinimalValues vals = minimal_params_values(mp);
  int level = static_cast<int>(mp.r * mp.s);
  auto sv = singular_vectors(vals.c, vals.h, level);
  if (sv.size() != 1) {
    throw VerificationError("singular space at level " + std::to_string(level) + " has dimension " +
                            std::to_string(sv.size()));
  }
  FFVerification out;
  out.singular_vector = sv.front();
  out.projection = ff_projection(out.singular_vector);
  out.polynomial = feigin_fuchs(static_cast<int>(mp.r), static_cast<int>(mp.s)).evaluate_t(Rational(mp.p, mp.q));
  auto top = out.polynomial.find({level, 0});
  if (top == out.polynomial.end()) throw VerificationError("F has no x^rs term");
  out.alpha = out.projection.count({level, 0}) ? out.projection.at({level, 0}) / top->second : Rational(0);
  if (out.alpha == 0) throw VerificationError("projection has no x^rs term");
  std::map<std::pair<int, int>, Rational> diff = out.projection;
  for (const auto& [k, x] : out.polynomial) diff[k] -= out.alpha * x;
  for (const auto& [k, x] : diff) {
    if (x != 0) {
      std::ostringstream os;
      os << "projection not proportional to F at x^" << k.first << " y^" << k.second;
      throw VerificationError(os.str());
    }
  }
  return out;
}

QuotientRingBounds quotient_ring_bounds(const MinimalParams& mp) {
  minimal_params_values(mp);
  QuotientRingBounds out;
  auto g = feigin_fuchs(static_cast<int>(mp.q - 1), static_cast<int>(mp.p - 1)).at_x_zero().evaluate_t(Rational(mp.p, mp.q));
  for (const auto& [k, x] : g) out.vacuum_restriction[k.second] = x;
  if (out.vacuum_restriction.empty()) throw VerificationError("F_{q-1,p-1}(0,y) vanishes identically");
  out.c2_vacuum_bound = out.vacuum_restriction.rbegin()->first;
  out.b1_bound = std::min(mp.r * mp.s, (mp.q - mp.r) * (mp.p - mp.s));
  return out;
}

}  // namespace voafin
