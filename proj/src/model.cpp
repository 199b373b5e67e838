#include "voafin/model.hpp"

#include <sstream>

namespace voafin {

Index GradedBasis::add(int degree, std::string label) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  if (!degrees_.empty() && degree < degrees_.back()) {
    throw std::logic_error("graded basis labels must be appended in degree order");
  }
  while (static_cast<int>(offsets_.size()) <= degree + 1) offsets_.push_back(static_cast<Index>(degrees_.size()));
  degrees_.push_back(degree);
  labels_.push_back(std::move(label));
  offsets_.back() = static_cast<Index>(degrees_.size());
  return static_cast<Index>(degrees_.size()) - 1;
}

void GradedBasis::finish(int max_degree) {
  while (static_cast<int>(offsets_.size()) <= max_degree + 1) offsets_.push_back(static_cast<Index>(degrees_.size()));
}

std::size_t GradedBasis::dim(int d) const {
  if (d < 0 || d > max_degree()) return 0;
  return static_cast<std::size_t>(offsets_[static_cast<std::size_t>(d) + 1] - offsets_[static_cast<std::size_t>(d)]);
}

Index GradedBasis::offset(int d) const {
  if (d < 0) return 0;
  if (d > max_degree()) return static_cast<Index>(size());
  return offsets_[static_cast<std::size_t>(d)];
}

std::vector<std::size_t> GradedBasis::dims() const {
  std::vector<std::size_t> out;
  for (int d = 0; d <= max_degree(); ++d) out.push_back(dim(d));
  return out;
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::VirasoroVerma: return "virasoro-verma";
    case ModelKind::VirasoroIrreducible: return "virasoro-irreducible";
    case ModelKind::Lattice: return "lattice";
    case ModelKind::Heisenberg: return "heisenberg";
  }
  return "unknown";
}

State VertexModel::vacuum() const {
  if (!is_voa()) throw std::logic_error("vacuum requested from a non-VOA model");
  return State::unit(0);
}

int VertexModel::checked_output_degree(int a_weight, int n, int w_degree) const {
  long out = static_cast<long>(a_weight) + w_degree - n - 1;
  if (out > cutoff_) {
    std::ostringstream os;
    os << name() << ": mode output degree " << out << " exceeds cutoff " << cutoff_;
    throw TruncationError(os.str());
  }
  return static_cast<int>(out);
}

State VertexModel::mode(const State& a, int n, const State& w) const {
  State out;
  const VertexModel& v = voa();
  for (const auto& [ai, ac] : a) {
    int a_weight = v.basis().degree(ai);
    for (const auto& [wi, wc] : w) {
      int out_degree = checked_output_degree(a_weight, n, basis_.degree(wi));
      if (out_degree < 0) continue;
      out.axpy(ac * wc, mode_on_basis(ai, n, wi));
    }
  }
  return out;
}

State VertexModel::virasoro(int n, const State& w) const { return mode(voa().conformal_vector(), n + 1, w); }

int VertexModel::degree_of(const State& w) const {
  if (w.empty()) throw std::invalid_argument("degree of the zero state");
  int d = basis_.degree(w.leading_index());
  for (const auto& [i, c] : w) {
    if (basis_.degree(i) != d) throw std::invalid_argument("state is not homogeneous");
  }
  return d;
}

int VertexModel::max_degree_of(const State& w) const {
  int d = -1;
  for (const auto& [i, c] : w) d = std::max(d, basis_.degree(i));
  return d;
}

std::string VertexModel::format(const State& w) const {
  if (w.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : w) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_short_string(c) << ")" << basis_.label(i);
  }
  return os.str();
}

}  // namespace voafin
