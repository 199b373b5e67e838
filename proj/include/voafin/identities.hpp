#pragma once

#include <string_view>
#include <vector>

#include "voafin/model.hpp"

namespace voafin {

enum class IdentityKind { Borcherds, Associativity, Commutator, Translation };

IdentityKind parse_identity_kind(std::string_view name);
std::string_view to_string(IdentityKind kind);

/// a, b are states of the model's VOA, w a state of the model. Borcherds uses
/// (p, q, r); associativity uses (n, q) for (a(-n)b)(-q)w; commutator uses
/// (p, q); translation uses q.
struct IdentityArgs {
  State a, b, w;
  int p = 0, q = 0, r = 0, n = 0;
};

/// LHS - RHS of the selected identity, exactly.
State check_identity(const VertexModel& model, IdentityKind kind, const IdentityArgs& args);

/// Basis of ker L_1 in the weight space of the given weight.
std::vector<State> quasi_primary_space(const VertexModel& model, const Rational& weight);

/// Kernel of L_1 on the degree-d slice (degree measured from the lowest weight).
std::vector<State> quasi_primary_slice(const VertexModel& model, int degree);

/// L_1 V(1) = 0; model must be a VOA with cutoff >= 1.
bool is_quasi_primary_generated(const VertexModel& model);

}  // namespace voafin
