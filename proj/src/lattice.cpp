#include "voafin/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "voafin/finiteness.hpp"

namespace voafin {

RatVec to_ratvec(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVec negate(const IntVec& a) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

std::string lattice_vector_label(const IntVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (std::abs(v[i]) != 1) out += std::to_string(std::abs(v[i]));
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

EvenLattice::EvenLattice(std::vector<std::vector<long>> gram, bool require_even) : gram_(std::move(gram)) {
  std::size_t n = gram_.size();
  if (n == 0) throw std::invalid_argument("empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw std::invalid_argument("Gram matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("Gram matrix is not symmetric");
    }
    if (require_even && gram_[i][i] % 2 != 0) throw std::invalid_argument("lattice is not even");
  }
  // Gauss-Jordan on [G | I]; positive pivots without row swaps certify positive definiteness.
  std::vector<RatVec> a(n, RatVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram_[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c][c] <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
    Rational piv = a[c][c];
    for (auto& x : a[c]) x /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  inverse_.assign(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inverse_[i][j] = a[i][n + j];
  }
}

long EvenLattice::pair(const IntVec& a, const IntVec& b) const {
  long out = 0;
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) out += a[static_cast<std::size_t>(i)] * gram(i, j) * b[static_cast<std::size_t>(j)];
  }
  return out;
}

Rational EvenLattice::pair(const RatVec& a, const RatVec& b) const {
  Rational out = 0;
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) out += a[static_cast<std::size_t>(i)] * gram(i, j) * b[static_cast<std::size_t>(j)];
  }
  return out;
}

RatVec EvenLattice::dual_coords(const RatVec& x) const {
  RatVec out(static_cast<std::size_t>(rank()));
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < rank(); ++j) out[static_cast<std::size_t>(i)] += gram(i, j) * x[static_cast<std::size_t>(j)];
  }
  return out;
}

RatVec EvenLattice::alpha_coords(const RatVec& m) const {
  std::size_t n = static_cast<std::size_t>(rank());
  if (m.size() != n) throw std::invalid_argument("coordinate vector has the wrong length");
  RatVec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += inverse_[i][j] * m[j];
  }
  return out;
}

RatVec EvenLattice::reduce(const RatVec& x) {
  RatVec out;
  for (const auto& v : x) out.push_back(v - Rational(floor(v)));
  return out;
}

std::vector<IntVec> EvenLattice::short_vectors(const RatVec& shift, const Rational& max_norm) const {
  std::vector<IntVec> out;
  if (max_norm < 0) return out;
  // <y|y> >= y_i^2 / (G^{-1})_{ii}, so |y_i| <= sqrt(max_norm * (G^{-1})_{ii}).
  std::size_t n = static_cast<std::size_t>(rank());
  std::vector<long> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::sqrt(Rational(max_norm * inverse_[i][i]).get_d()) + 1.0;
    double s = shift[i].get_d();
    lo[i] = static_cast<long>(std::floor(-r - s));
    hi[i] = static_cast<long>(std::ceil(r - s));
  }
  IntVec cur(n);
  RatVec y(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      for (std::size_t k = 0; k < n; ++k) y[k] = shift[k] + cur[k];
      if (norm(y) <= max_norm) out.push_back(cur);
      return;
    }
    for (long v = lo[i]; v <= hi[i]; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

int EvenLattice::cocycle(const IntVec& beta, const IntVec& gamma) const {
  long e = 0;
  for (int i = 0; i < rank(); ++i) {
    for (int j = 0; j < i; ++j) e += beta[static_cast<std::size_t>(i)] * gamma[static_cast<std::size_t>(j)] * gram(i, j);
  }
  return (e % 2 == 0) ? 1 : -1;
}

int FockLabel::heis_degree() const {
  int d = 0;
  for (const auto& [n, i] : heis) d += n;
  return d;
}

namespace {

// Multisets of (mode, direction) pairs of total mode k, each sorted decreasingly.
std::vector<std::vector<std::pair<int, int>>> colored_partitions(int k, int rank) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur;
  auto rec = [&](auto&& self, int remaining, std::pair<int, int> max) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int n = std::min(remaining, max.first); n >= 1; --n) {
      for (int i = rank - 1; i >= 0; --i) {
        std::pair<int, int> p{n, i};
        if (p > max) continue;
        cur.push_back(p);
        self(self, remaining - n, p);
        cur.pop_back();
      }
    }
  };
  rec(rec, k, {k, rank - 1});
  return out;
}

std::string ratvec_label(const RatVec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += to_short_string(v[i]);
  }
  return out + "]";
}

}  // namespace

FockModel::FockModel(ModelKind kind, std::shared_ptr<const EvenLattice> lattice, RatVec lambda, int cutoff, Ptr voa)
    : kind_(kind), lattice_(std::move(lattice)), lambda_(std::move(lambda)), voa_(std::move(voa)) {
  if (kind != ModelKind::Lattice && kind != ModelKind::Heisenberg) throw std::invalid_argument("not a Fock model kind");
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  if (static_cast<int>(lambda_.size()) != lattice_->rank()) throw std::invalid_argument("lambda has the wrong length");
  cutoff_ = cutoff;
  central_charge_ = lattice_->rank();
  IntVec zero(static_cast<std::size_t>(lattice_->rank()), 0);

  std::vector<std::pair<int, IntVec>> sectors;  // (degree offset, gamma)
  if (kind == ModelKind::Heisenberg) {
    lowest_weight_ = lattice_->norm(lambda_) / 2;
    sectors.emplace_back(0, zero);
  } else {
    Rational min_norm = lattice_->norm(lambda_);
    for (const auto& g : lattice_->short_vectors(lambda_, min_norm)) {
      RatVec y = lambda_;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] += g[k];
      min_norm = std::min(min_norm, Rational(lattice_->norm(y)));
    }
    lowest_weight_ = min_norm / 2;
    for (const auto& g : lattice_->short_vectors(lambda_, 2 * (lowest_weight_ + cutoff))) {
      RatVec y = lambda_;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] += g[k];
      Rational d = lattice_->norm(y) / 2 - lowest_weight_;
      if (!is_integer(d)) throw std::invalid_argument("lambda is not in the dual lattice");
      sectors.emplace_back(static_cast<int>(to_long(d)), g);
    }
    std::sort(sectors.begin(), sectors.end());
  }
  for (const auto& s : sectors) gammas_.push_back(s.second);

  for (int d = 0; d <= cutoff; ++d) {
    for (const auto& [g0, gamma] : sectors) {
      if (g0 > d) continue;
      for (auto& heis : colored_partitions(d - g0, lattice_->rank())) {
        FockLabel label{std::move(heis), gamma};
        Index i = basis_.add(d, format_label(label));
        lookup_.emplace(label, i);
        labels_.push_back(std::move(label));
      }
    }
  }
  basis_.finish(cutoff);

  std::ostringstream os;
  if (kind == ModelKind::Heisenberg) {
    os << "Heis(rank " << lattice_->rank() << ", p=" << ratvec_label(lambda_) << ")";
  } else {
    os << "V_{lambda+L}(lambda=" << ratvec_label(lambda_) << ")";
  }
  name_ = os.str();
}

std::string FockModel::format_label(const FockLabel& l) const {
  std::string out;
  for (const auto& [n, i] : l.heis) out += "a" + std::to_string(i + 1) + "(-" + std::to_string(n) + ")";
  if (kind_ == ModelKind::Heisenberg) return out + (lambda_ == RatVec(lambda_.size()) ? "1" : "e" + ratvec_label(lambda_));
  RatVec mu = lambda_;
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] += l.gamma[k];
  return out + "e" + ratvec_label(mu);
}

FockModel::Ptr FockModel::lattice_voa(const std::vector<std::vector<long>>& gram, int cutoff) {
  auto lat = std::make_shared<const EvenLattice>(gram);
  return std::make_shared<FockModel>(ModelKind::Lattice, lat, RatVec(gram.size()), cutoff, nullptr);
}

FockModel::Ptr FockModel::lattice_module(const std::vector<std::vector<long>>& gram, const RatVec& lambda_dual,
                                         int cutoff) {
  auto lat = std::make_shared<const EvenLattice>(gram);
  for (const auto& m : lambda_dual) {
    if (!is_integer(m)) throw std::invalid_argument("lambda must lie in the dual lattice (integral Lambda-coordinates)");
  }
  RatVec x = EvenLattice::reduce(lat->alpha_coords(lambda_dual));
  auto voa = std::make_shared<FockModel>(ModelKind::Lattice, lat, RatVec(gram.size()), cutoff, nullptr);
  if (x == RatVec(gram.size())) return voa;
  return std::make_shared<FockModel>(ModelKind::Lattice, lat, x, cutoff, voa);
}

FockModel::Ptr FockModel::heisenberg(const std::vector<std::vector<long>>& gram, const RatVec& momentum, int cutoff) {
  auto lat = std::make_shared<const EvenLattice>(gram, false);
  auto voa = std::make_shared<FockModel>(ModelKind::Heisenberg, lat, RatVec(gram.size()), cutoff, nullptr);
  if (momentum == RatVec(gram.size())) return voa;
  return std::make_shared<FockModel>(ModelKind::Heisenberg, lat, momentum, cutoff, voa);
}

Index FockModel::index_of(const FockLabel& label) const {
  auto it = lookup_.find(label);
  if (it == lookup_.end()) throw TruncationError(name_ + ": label " + format_label(label) + " beyond cutoff");
  return it->second;
}

State FockModel::conformal_vector() const {
  if (!is_voa()) return voa().conformal_vector();
  if (cutoff_ < 2) throw TruncationError("conformal vector needs cutoff >= 2");
  int r = lattice_->rank();
  IntVec zero(static_cast<std::size_t>(r), 0);
  State out;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      FockLabel l{{{1, std::max(i, j)}, {1, std::min(i, j)}}, zero};
      out.add(index_of(l), lattice_->gram_inverse()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / 2);
    }
  }
  return out;
}

State FockModel::heisenberg_mode(int i, int k, Index w) const {
  const FockLabel& l = label(w);
  if (k < 0) {
    FockLabel nl = l;
    nl.heis.emplace_back(-k, i);
    std::sort(nl.heis.rbegin(), nl.heis.rend());
    checked_output_degree(1, k, basis_.degree(w));
    return State::unit(index_of(nl));
  }
  if (k == 0) {
    Rational mu_i = 0;
    for (int j = 0; j < lattice_->rank(); ++j) {
      mu_i += lattice_->gram(i, j) * (lambda_[static_cast<std::size_t>(j)] + l.gamma[static_cast<std::size_t>(j)]);
    }
    return mu_i * State::unit(w);
  }
  State out;
  for (std::size_t p = 0; p < l.heis.size(); ++p) {
    if (l.heis[p].first != k) continue;
    if (p > 0 && l.heis[p] == l.heis[p - 1]) continue;
    long mult = std::count(l.heis.begin(), l.heis.end(), l.heis[p]);
    long g = lattice_->gram(i, l.heis[p].second);
    if (g == 0) continue;
    FockLabel nl = l;
    nl.heis.erase(nl.heis.begin() + static_cast<long>(p));
    out.add(index_of(nl), Rational(mult * k * g));
  }
  return out;
}

State FockModel::heisenberg_mode(int i, int k, const State& w) const {
  State out;
  for (const auto& [j, x] : w) out.axpy(x, heisenberg_mode(i, k, j));
  return out;
}

State FockModel::beta_mode(const RatVec& beta, int k, const State& w) const {
  State out;
  for (int i = 0; i < lattice_->rank(); ++i) {
    if (beta[static_cast<std::size_t>(i)] != 0) out.axpy(beta[static_cast<std::size_t>(i)], heisenberg_mode(i, k, w));
  }
  return out;
}

// Coefficient of z^{-n-1} in E^-(beta,z) E^+(beta,z) e_beta z^{beta(0)} applied to w:
// z^{<beta|mu>} from the zero mode, z^{-N} from the lowering exponential and z^R
// from the raising one, with R = -n-1-<beta|mu>+N.
State FockModel::vertex_operator(const IntVec& beta, int n, Index w) const {
  const FockLabel& l = label(w);
  RatVec b = to_ratvec(beta);
  RatVec mu = lambda_;
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] += l.gamma[k];
  Rational bm = lattice_->pair(b, mu);
  if (!is_integer(bm)) throw std::logic_error("non-integral <beta|mu> in a lattice module");
  long base = -n - 1 - to_long(bm);
  int sign = lattice_->cocycle(beta, l.gamma);

  // exp(A) with A = -sum_k beta(k) z^{-k} / k: N S_N = -sum_{k=1}^N beta(k) S_{N-k}.
  std::vector<State> lowered{State::unit(w)};
  for (int N = 1; N <= l.heis_degree(); ++N) {
    State s;
    for (int k = 1; k <= N; ++k) s.axpy(Rational(-1, N), beta_mode(b, k, lowered[static_cast<std::size_t>(N - k)]));
    lowered.push_back(std::move(s));
  }

  State out;
  for (int N = 0; N < static_cast<int>(lowered.size()); ++N) {
    long R = base + N;
    if (R < 0 || lowered[static_cast<std::size_t>(N)].empty()) continue;
    State shifted;
    for (const auto& [j, x] : lowered[static_cast<std::size_t>(N)]) {
      FockLabel nl = label(j);
      nl.gamma = add(nl.gamma, beta);
      shifted.add(index_of(nl), sign * x);
    }
    // exp(B) with B = sum_k beta(-k) z^k / k: r T_r = sum_{k=1}^r beta(-k) T_{r-k}.
    std::vector<State> raised{shifted};
    for (long r = 1; r <= R; ++r) {
      State t;
      for (long k = 1; k <= r; ++k) {
        t.axpy(Rational(1, r), beta_mode(b, static_cast<int>(-k), raised[static_cast<std::size_t>(r - k)]));
      }
      raised.push_back(std::move(t));
    }
    out += raised.back();
  }
  return out;
}

State FockModel::mode_on_basis(Index a, int n, Index w) const { return mode_label(a, n, w); }

// a = alpha_i(-m) b with j = m - 1:
// (alpha_i(-j-1)b)(n) = sum_k C(j+k,k) [alpha_i(-j-1-k) b(n+k) + (-1)^j b(n-j-1-k) alpha_i(k)].
State FockModel::mode_label(Index a, int n, Index w) const {
  const auto& v = static_cast<const FockModel&>(voa());
  int wt_a = v.basis().degree(a);
  int deg_w = basis_.degree(w);
  int out_degree = checked_output_degree(wt_a, n, deg_w);
  if (out_degree < 0) return {};
  const FockLabel& la = v.label(a);
  if (la.heis.empty()) {
    if (std::all_of(la.gamma.begin(), la.gamma.end(), [](long x) { return x == 0; })) {
      return n == -1 ? State::unit(w) : State{};
    }
    return vertex_operator(la.gamma, n, w);
  }

  auto key = std::make_tuple(a, n, w);
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }

  auto [m, i] = la.heis.front();
  FockLabel lb{std::vector<std::pair<int, int>>(la.heis.begin() + 1, la.heis.end()), la.gamma};
  Index b = v.index_of(lb);
  int wt_b = wt_a - m;
  int j = m - 1;
  State out;
  for (int k = 0; wt_b + deg_w - n - k - 1 >= 0; ++k) {
    State bw = mode_label(b, n + k, w);
    if (!bw.empty()) out.axpy(binomial(j + k, k), heisenberg_mode(i, -j - 1 - k, bw));
  }
  Rational sign = (j % 2 == 0) ? 1 : -1;
  for (int k = 0; k <= deg_w; ++k) {
    State aw = heisenberg_mode(i, k, w);
    for (const auto& [wi, x] : aw) out.axpy(sign * binomial(j + k, k) * x, mode_label(b, n - j - 1 - k, wi));
  }
  std::lock_guard lock(mutex_);
  return memo_.try_emplace(key, std::move(out)).first->second;
}

std::vector<IntVec> gamma_candidates(const EvenLattice& lattice, const RatVec& lambda_dual) {
  std::size_t n = static_cast<std::size_t>(lattice.rank());
  RatVec x = lattice.alpha_coords(lambda_dual);
  std::set<IntVec> out;
  auto add_if_integral = [&](const RatVec& beta) {
    IntVec b;
    for (const auto& v : beta) {
      if (!is_integer(v)) return;
      b.push_back(to_long(v));
    }
    out.insert(b);
  };
  // gamma = lambda + beta with Lambda-coordinates m = lambda_dual + G beta and |m_i| <= G_ii.
  std::vector<long> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    long g = lattice.gram(static_cast<int>(i), static_cast<int>(i));
    lo[i] = to_long(ceil(Rational(-g) - lambda_dual[i]));
    hi[i] = to_long(floor(Rational(g) - lambda_dual[i]));
  }
  RatVec k(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      add_if_integral(lattice.alpha_coords(k));
      return;
    }
    for (long v = lo[i]; v <= hi[i]; ++v) {
      k[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      RatVec beta(n);
      beta[i] = s;
      add_if_integral(beta);
      for (std::size_t t = 0; t < n; ++t) beta[t] -= x[t];
      add_if_integral(beta);
    }
  }
  return {out.begin(), out.end()};
}

bool in_gamma_set(const EvenLattice& lattice, const RatVec& lambda_dual, const IntVec& beta) {
  RatVec gamma = lattice.alpha_coords(lambda_dual);
  for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] += beta[i];
  // the basis vectors and their negatives reject most candidates before the full search
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    for (int sgn : {1, -1}) {
      RatVec delta(gamma.size());
      delta[i] = sgn;
      if (delta == gamma) continue;
      if (!(lattice.pair(delta, gamma) < lattice.norm(delta))) return false;
    }
  }
  Rational gg = lattice.norm(gamma);
  // Cauchy-Schwarz: <delta|gamma> < <delta|delta> holds automatically once <delta|delta> > <gamma|gamma>.
  for (const auto& d : lattice.short_vectors(RatVec(gamma.size()), gg)) {
    RatVec delta = to_ratvec(d);
    if (std::all_of(d.begin(), d.end(), [](long v) { return v == 0; }) || delta == gamma) continue;
    if (!(lattice.pair(delta, gamma) < lattice.norm(delta))) return false;
  }
  return true;
}

std::vector<IntVec> gamma_set(const EvenLattice& lattice, const RatVec& lambda_dual) {
  std::vector<IntVec> out;
  // Screen against lattice vectors of norm <= sum_i G_ii first. That bound is at least
  // four times the squared covering radius, so it contains every Voronoi-relevant vector
  // and nearly every non-member fails here. Survivors get the exact test.
  Rational screen_norm = 0;
  for (int i = 0; i < lattice.rank(); ++i) screen_norm += lattice.gram(i, i);
  std::vector<std::pair<Rational, RatVec>> screen;
  for (const auto& d : lattice.short_vectors(RatVec(static_cast<std::size_t>(lattice.rank())), screen_norm)) {
    if (std::all_of(d.begin(), d.end(), [](long v) { return v == 0; })) continue;
    RatVec delta = to_ratvec(d);
    screen.emplace_back(lattice.norm(delta), std::move(delta));
  }
  std::sort(screen.begin(), screen.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  RatVec x0 = lattice.alpha_coords(lambda_dual);
  for (const auto& beta : gamma_candidates(lattice, lambda_dual)) {
    RatVec gamma = x0;
    for (std::size_t i = 0; i < gamma.size(); ++i) gamma[i] += beta[i];
    bool rejected = false;
    for (const auto& [nd, delta] : screen) {
      if (delta == gamma) continue;
      if (!(lattice.pair(delta, gamma) < nd)) {
        rejected = true;
        break;
      }
    }
    if (!rejected && in_gamma_set(lattice, lambda_dual, beta)) out.push_back(beta);
  }
  // shortest gamma = lambda + beta first, then beta in decreasing lexicographic order
  RatVec x = lattice.alpha_coords(lambda_dual);
  auto gnorm = [&](const IntVec& b) -> Rational {
    RatVec y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += b[i];
    return lattice.norm(y);
  };
  std::sort(out.begin(), out.end(), [&](const IntVec& a, const IntVec& b) {
    Rational na = gnorm(a), nb = gnorm(b);
    if (na != nb) return na < nb;
    return a > b;
  });
  return out;
}

int single_jump_check(const EvenLattice& lattice, const RatVec& lambda_dual, const IntVec& alpha, const IntVec& beta) {
  RatVec x = lattice.alpha_coords(lambda_dual);
  RatVec xr = EvenLattice::reduce(x);
  IntVec shift;
  for (std::size_t i = 0; i < x.size(); ++i) shift.push_back(to_long(x[i] - xr[i]));
  IntVec a = add(alpha, shift), b = add(beta, shift);
  IntVec diff = add(beta, negate(alpha));
  auto norm_of = [&](const IntVec& g) -> Rational {
    RatVec y = xr;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += g[i];
    return lattice.norm(y) / 2;
  };
  Rational top = std::max({norm_of(a), norm_of(b), Rational(lattice.pair(diff, diff), 2)});
  int cutoff = static_cast<int>(to_long(ceil(top)));
  auto module = FockModel::lattice_module(lattice.gram(), lattice.dual_coords(xr), cutoff);
  RatVec mu = xr;
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += a[i];
  Rational ip = lattice.pair(to_ratvec(diff), mu);
  int n = static_cast<int>(-to_long(ip) - 1);
  const auto& v = static_cast<const FockModel&>(module->voa());
  State result = module->mode(State::unit(v.ground(diff)), n, State::unit(module->ground(a)));
  Index target = module->ground(b);
  if (result.size() != 1 || result.begin()->first != target || abs(result.begin()->second) != 1) {
    throw VerificationError("single jump did not produce +-e_{lambda+beta}: " + module->format(result));
  }
  return result.begin()->second > 0 ? 1 : -1;
}

B1SpanReport b1_span_check(const std::vector<std::vector<long>>& gram, const RatVec& lambda_dual, int cutoff) {
  auto module = FockModel::lattice_module(gram, lambda_dual, cutoff);
  const EvenLattice& lat = module->lattice();
  RatVec reduced_dual = lat.dual_coords(module->lambda());
  B1SpanReport out;
  out.gamma = gamma_set(lat, reduced_dual);
  SubspaceSpec spec;
  spec.kind = SubspaceKind::B1;
  const GradedBasis& basis = module->basis();
  out.passed = true;
  for (int d = 0; d <= cutoff; ++d) {
    EchelonBasis span;
    for (const auto& g : subspace_span(*module, spec, d)) span.insert(g.vector);
    for (const auto& beta : out.gamma) {
      FockLabel l{{}, beta};
      if (module->contains(l) && basis.degree(module->index_of(l)) == d) span.insert(State::unit(module->index_of(l)));
    }
    out.dims.push_back(basis.dim(d));
    out.deficiency.push_back(basis.dim(d) - span.rank());
    if (out.deficiency.back() != 0) out.passed = false;
  }
  return out;
}

}  // namespace voafin
