// Copyright 2026 The ncineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ncineq/dense.hpp"
#include "ncineq/errors.hpp"
#include "ncineq/graph_state.hpp"
#include "ncineq/inequality.hpp"
#include "ncineq/pauli.hpp"

namespace ncineq {

enum class Backend { symbolic, dense };

inline constexpr double kInvolutionTolerance = 1e-9;
inline constexpr double kStateNormTolerance = 1e-12;
inline constexpr double kImaginaryTolerance = 1e-9;
inline constexpr double kCompatibilityTolerance = 1e-9;

struct SymbolicData {
  std::vector<PauliString> a;
  std::vector<PauliString> b;
  StabilizerGroup state;
};

/// Explicit-matrix backend. Operators are held in compressed sparse form;
/// the Hilbert space dimension is arbitrary and need not be 2^n.
struct DenseData {
  std::vector<SparseMatrix> a;
  std::vector<SparseMatrix> b;
  Vector state;
};

/// A state together with observables A_1..A_n, B_1..B_n. Immutable once
/// built; the factories check that every observable is a Hermitian
/// involution and that the state is normalized.
class Realization {
 public:
  static Realization symbolic(std::vector<PauliString> a, std::vector<PauliString> b,
                              StabilizerGroup state) {
    check_counts(a.size(), b.size());
    const std::size_t m = state.size();
    auto check = [&](const PauliString& p, const ObservableLabel& l) {
      if (p.size() != m) {
        throw DimensionError("observable " + l.to_string() + " acts on " + std::to_string(p.size()) +
                             " qubits, state on " + std::to_string(m));
      }
      if (!p.is_hermitian()) throw DomainError("observable " + l.to_string() + " is not Hermitian");
    };
    for (std::uint32_t i = 0; i < a.size(); ++i) {
      check(a[i], {ObservableLabel::Kind::A, i + 1});
      check(b[i], {ObservableLabel::Kind::B, i + 1});
    }
    Realization r;
    r.data_ = SymbolicData{std::move(a), std::move(b), std::move(state)};
    return r;
  }

  static Realization dense(std::vector<SparseMatrix> a, std::vector<SparseMatrix> b, Vector state) {
    check_counts(a.size(), b.size());
    const auto dim = state.size();
    if (dim == 0 || static_cast<std::size_t>(dim) > kDenseRealizationDimCap) {
      throw CapacityError("dense realization dimension " + std::to_string(dim) + " outside 1.." +
                          std::to_string(kDenseRealizationDimCap));
    }
    if (std::abs(state.norm() - 1.0) > kStateNormTolerance) {
      throw DomainError("state norm " + std::to_string(state.norm()) + " is not 1");
    }
    SparseMatrix id(dim, dim);
    id.setIdentity();
    auto check = [&](SparseMatrix& o, const ObservableLabel& l) {
      if (o.rows() != dim || o.cols() != dim) {
        throw DimensionError("observable " + l.to_string() + " is " + std::to_string(o.rows()) + "x" +
                             std::to_string(o.cols()) + ", state has dimension " + std::to_string(dim));
      }
      o.makeCompressed();
      const SparseMatrix adj = o.adjoint();
      if ((o - adj).norm() > kInvolutionTolerance) {
        throw DomainError("observable " + l.to_string() + " is not Hermitian");
      }
      const SparseMatrix sq = o * o;
      if ((sq - id).norm() > kInvolutionTolerance) {
        throw DomainError("observable " + l.to_string() + " does not square to identity");
      }
    };
    for (std::uint32_t i = 0; i < a.size(); ++i) {
      check(a[i], {ObservableLabel::Kind::A, i + 1});
      check(b[i], {ObservableLabel::Kind::B, i + 1});
    }
    Realization r;
    r.data_ = DenseData{std::move(a), std::move(b), std::move(state)};
    return r;
  }

  static Realization dense(const std::vector<Matrix>& a, const std::vector<Matrix>& b, Vector state) {
    std::vector<SparseMatrix> sa;
    std::vector<SparseMatrix> sb;
    for (const auto& m : a) sa.push_back(m.sparseView());
    for (const auto& m : b) sb.push_back(m.sparseView());
    return dense(std::move(sa), std::move(sb), std::move(state));
  }

  std::uint32_t n() const {
    return static_cast<std::uint32_t>(is_symbolic() ? symbolic_data().a.size() : dense_data().a.size());
  }

  Backend backend() const { return is_symbolic() ? Backend::symbolic : Backend::dense; }
  bool is_symbolic() const { return std::holds_alternative<SymbolicData>(data_); }
  const SymbolicData& symbolic_data() const { return std::get<SymbolicData>(data_); }
  const DenseData& dense_data() const { return std::get<DenseData>(data_); }

  const PauliString& pauli(const ObservableLabel& l) const {
    const auto& d = symbolic_data();
    check_label(l);
    return l.kind == ObservableLabel::Kind::A ? d.a[l.index - 1] : d.b[l.index - 1];
  }

  const SparseMatrix& matrix(const ObservableLabel& l) const {
    const auto& d = dense_data();
    check_label(l);
    return l.kind == ObservableLabel::Kind::A ? d.a[l.index - 1] : d.b[l.index - 1];
  }

 private:
  Realization() = default;

  static void check_counts(std::size_t na, std::size_t nb) {
    if (na != nb) {
      throw DimensionError("realization has " + std::to_string(na) + " A and " + std::to_string(nb) +
                           " B observables");
    }
    if (na == 0) throw DomainError("realization has no observables");
  }

  void check_label(const ObservableLabel& l) const {
    if (l.index < 1 || l.index > n()) {
      throw DomainError("label " + l.to_string() + " outside realization with n=" + std::to_string(n()));
    }
  }

  std::variant<SymbolicData, DenseData> data_;
};

/// A_i = X_i, B_j = Z_j on the complete-graph state.
inline Realization ideal_realization(std::int64_t n, Backend backend) {
  require_family_size(n, "ideal_realization");
  const auto un = static_cast<std::size_t>(n);
  const Graph complete = Graph::complete(un);
  if (backend == Backend::symbolic) {
    std::vector<PauliString> a;
    std::vector<PauliString> b;
    for (std::size_t i = 1; i <= un; ++i) {
      a.push_back(embed(PauliKind::X, i, un));
      b.push_back(embed(PauliKind::Z, i, un));
    }
    return Realization::symbolic(std::move(a), std::move(b), stabilizer_generators(complete));
  }
  require_dense_qubits(un, "ideal_realization(dense)");
  std::vector<SparseMatrix> a;
  std::vector<SparseMatrix> b;
  for (std::size_t i = 1; i <= un; ++i) {
    a.push_back(to_sparse(embed(PauliKind::X, i, un)));
    b.push_back(to_sparse(embed(PauliKind::Z, i, un)));
  }
  return Realization::dense(std::move(a), std::move(b), graph_state_vector(complete));
}

/// Three-qubit realization with A_2 = 1 X Z, A_3 = 1 Z X and B_j = Z_j. Its
/// positive correlators are the generators of the graph with edges {1,2}
/// and {1,3}, whose state it carries.
inline Realization alternative_realization_3() {
  auto op = [](const char* lit) { return to_sparse(PauliString::from_literal(lit)); };
  std::vector<SparseMatrix> a{op("XII"), op("IXZ"), op("IZX")};
  std::vector<SparseMatrix> b{op("ZII"), op("IZI"), op("IIZ")};
  return Realization::dense(std::move(a), std::move(b), graph_state_vector(Graph::star(3, 1)));
}

namespace detail {

inline void check_term_size(const CorrelatorTerm& t, const Realization& r) {
  if (t.size() != r.n()) {
    throw DimensionError("term over " + std::to_string(t.size()) + " slots, realization has n=" +
                         std::to_string(r.n()));
  }
}

inline double dense_correlator(const Realization& r, const CorrelatorTerm& t) {
  const auto& d = r.dense_data();
  // <psi| O_1 O_2 ... O_n |psi>, applied right to left.
  Vector w = d.state;
  for (std::uint32_t slot = t.size(); slot >= 1; --slot) {
    w = r.matrix(t.label(slot)) * w;
  }
  const Complex value = d.state.dot(w);
  if (std::abs(value.imag()) > kImaginaryTolerance) {
    throw CompatibilityError("correlator " + t.correlator_string() + " has imaginary part " +
                             std::to_string(value.imag()) + "; its factors do not commute");
  }
  return value.real();
}

inline int symbolic_correlator(const Realization& r, const CorrelatorTerm& t) {
  const auto& d = r.symbolic_data();
  PauliString product(d.state.size());
  for (std::uint32_t slot = 1; slot <= t.size(); ++slot) product *= r.pauli(t.label(slot));
  if (!product.is_hermitian()) {
    throw CompatibilityError("correlator " + t.correlator_string() + " product " + product.to_literal() +
                             " is not Hermitian; its factors do not commute");
  }
  return d.state.reduce_in_place(product);
}

/// Pairwise commutation of every differently-indexed pair of Pauli
/// observables.
inline bool symbolic_cross_commuting(const SymbolicData& d) {
  const std::size_t n = d.a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!commutes(d.a[i], d.a[j]) || !commutes(d.b[i], d.b[j]) || !commutes(d.a[i], d.b[j]) ||
          !commutes(d.b[i], d.a[j])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// <O_1 ... O_n> in slot order. Symbolic values are exactly -1, 0 or +1.
inline double correlator(const Realization& r, const CorrelatorTerm& t) {
  detail::check_term_size(t, r);
  if (r.is_symbolic()) return detail::symbolic_correlator(r, t);
  return detail::dense_correlator(r, t);
}

/// Sum of coefficient * correlator over `terms`.
///
/// For a symbolic realization whose differently-indexed observables all
/// commute, the slot-order product equals P_B * B_S * A_S, where P_B is the
/// product of all B's and S is the term's A slots; each term then costs a
/// constant number of multiplications instead of n.
inline double evaluate_terms(std::span<const CorrelatorTerm> terms, const Realization& r) {
  if (!r.is_symbolic()) {
    double total = 0.0;
    for (const auto& t : terms) {
      detail::check_term_size(t, r);
      total += static_cast<double>(t.coefficient()) * detail::dense_correlator(r, t);
    }
    return total;
  }
  const auto& d = r.symbolic_data();
  std::int64_t total = 0;
  if (!detail::symbolic_cross_commuting(d)) {
    for (const auto& t : terms) {
      detail::check_term_size(t, r);
      total += t.coefficient() * detail::symbolic_correlator(r, t);
    }
    return static_cast<double>(total);
  }
  PauliString all_b(d.state.size());
  for (const auto& b : d.b) all_b *= b;
  PauliString scratch = all_b;
  for (const auto& t : terms) {
    detail::check_term_size(t, r);
    scratch = all_b;
    for (std::size_t k = 0; k < t.a_count(); ++k) scratch *= d.b[t.a_slot(k) - 1];
    for (std::size_t k = 0; k < t.a_count(); ++k) scratch *= d.a[t.a_slot(k) - 1];
    total += t.coefficient() * d.state.reduce_in_place(scratch);
  }
  return static_cast<double>(total);
}

inline double evaluate(const Inequality& ineq, const Realization& r) {
  if (ineq.n != r.n()) {
    throw DimensionError("inequality n=" + std::to_string(ineq.n) + " vs realization n=" +
                         std::to_string(r.n()));
  }
  return evaluate_terms(ineq.terms, r);
}

struct ResidualEntry {
  ObservableLabel first;
  ObservableLabel second;
  double residual = 0.0;
};

struct CompatibilityReport {
  /// ||[O, O']|| for every pair with different indices.
  std::vector<ResidualEntry> commutators;
  /// ||{A_i, B_i}|psi>|| for every index.
  std::vector<ResidualEntry> anticommutators;
  bool admissible = true;

  double max_commutator() const {
    double m = 0.0;
    for (const auto& e : commutators) m = std::max(m, e.residual);
    return m;
  }
  double max_anticommutator() const {
    double m = 0.0;
    for (const auto& e : anticommutators) m = std::max(m, e.residual);
    return m;
  }
};

/// Symbolic residuals are exact: a Pauli commutator is either 0 or 2PQ
/// (norm 2), and {A, B}|psi> is either 0 or 2AB|psi> (norm 2).
inline CompatibilityReport compatibility_report(const Realization& r) {
  using K = ObservableLabel::Kind;
  CompatibilityReport rep;
  const std::uint32_t n = r.n();
  auto commutator_residual = [&](const ObservableLabel& x, const ObservableLabel& y) {
    if (r.is_symbolic()) return commutes(r.pauli(x), r.pauli(y)) ? 0.0 : 2.0;
    const SparseMatrix& p = r.matrix(x);
    const SparseMatrix& q = r.matrix(y);
    const SparseMatrix c = p * q - q * p;
    return operator_norm(SparseMatrix(c.pruned()));
  };
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      for (auto [ki, kj] : {std::pair{K::A, K::A}, std::pair{K::A, K::B}, std::pair{K::B, K::A},
                            std::pair{K::B, K::B}}) {
        const ObservableLabel x{ki, i};
        const ObservableLabel y{kj, j};
        rep.commutators.push_back({x, y, commutator_residual(x, y)});
      }
    }
  }
  for (std::uint32_t i = 1; i <= n; ++i) {
    const ObservableLabel x{K::A, i};
    const ObservableLabel y{K::B, i};
    double residual = 0.0;
    if (r.is_symbolic()) {
      residual = commutes(r.pauli(x), r.pauli(y)) ? 2.0 : 0.0;
    } else {
      const Vector& psi = r.dense_data().state;
      const Vector v = r.matrix(x) * (r.matrix(y) * psi) + r.matrix(y) * (r.matrix(x) * psi);
      residual = v.norm();
    }
    rep.anticommutators.push_back({x, y, residual});
  }
  rep.admissible = rep.max_commutator() <= kCompatibilityTolerance;
  return rep;
}

}  // namespace ncineq
