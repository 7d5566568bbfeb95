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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncineq/dense.hpp"
#include "ncineq/errors.hpp"
#include "ncineq/pauli.hpp"

namespace ncineq {

/// Simple undirected graph on vertices 1..n.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adjacency_(n) {}

  Graph(std::size_t n, const std::vector<Edge>& edges) : Graph(n) {
    for (const auto& [u, v] : edges) add_edge(u, v);
  }

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t u = 1; u <= n; ++u) {
      for (std::size_t v = u + 1; v <= n; ++v) g.add_edge(u, v);
    }
    return g;
  }

  /// 1 - 2 - ... - n.
  static Graph path(std::size_t n) {
    Graph g(n);
    for (std::size_t v = 2; v <= n; ++v) g.add_edge(v - 1, v);
    return g;
  }

  /// Every vertex joined to `center` only.
  static Graph star(std::size_t n, std::size_t center = 1) {
    Graph g(n);
    for (std::size_t v = 1; v <= n; ++v) {
      if (v != center) g.add_edge(center, v);
    }
    return g;
  }

  /// "complete:n", "path:n", "star:n" (center 1) or "star:n:c".
  static Graph named(std::string_view spec);

  void add_edge(std::size_t u, std::size_t v) {
    if (u < 1 || u > n_ || v < 1 || v > n_) {
      throw DomainError("graph edge {" + std::to_string(u) + "," + std::to_string(v) +
                        "} outside vertex range 1.." + std::to_string(n_));
    }
    if (u == v) throw DomainError("graph self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v)) {
      throw DomainError("duplicate graph edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    }
    auto insert_sorted = [](std::vector<std::size_t>& list, std::size_t w) {
      list.insert(std::lower_bound(list.begin(), list.end(), w), w);
    };
    insert_sorted(adjacency_[u - 1], v);
    insert_sorted(adjacency_[v - 1], u);
  }

  std::size_t size() const noexcept { return n_; }

  bool has_edge(std::size_t u, std::size_t v) const {
    const auto& list = adjacency_.at(u - 1);
    return std::binary_search(list.begin(), list.end(), v);
  }

  /// Sorted neighbourhood N(v).
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v - 1); }

  /// Edges as (u, v) with u < v, lexicographic.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t u = 1; u <= n_; ++u) {
      for (std::size_t v : adjacency_[u - 1]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  bool is_connected() const {
    if (n_ == 0) return true;
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack{1};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adjacency_[v - 1]) {
        if (!seen[w - 1]) {
          seen[w - 1] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == n_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> adjacency_;
};

inline Graph Graph::named(std::string_view spec) {
  auto parse_count = [&](std::string_view digits) {
    std::size_t value = 0;
    const auto* end = digits.data() + digits.size();
    auto [ptr, ec] = std::from_chars(digits.data(), end, value);
    if (ec != std::errc{} || ptr != end || digits.empty()) {
      throw DomainError("graph spec '" + std::string(spec) + "': bad number '" +
                        std::string(digits) + "'");
    }
    return value;
  };
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("graph spec '" + std::string(spec) + "': expected kind:n");
  }
  const std::string_view kind = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);
  if (kind == "star") {
    const auto second = rest.find(':');
    if (second != std::string_view::npos) {
      return star(parse_count(rest.substr(0, second)), parse_count(rest.substr(second + 1)));
    }
    return star(parse_count(rest));
  }
  if (kind == "complete") return complete(parse_count(rest));
  if (kind == "path") return path(parse_count(rest));
  throw DomainError("graph spec '" + std::string(spec) + "': unknown kind '" +
                    std::string(kind) + "'");
}

/// A full-rank stabilizer group given by n commuting, independent Hermitian
/// generators. Construction row-reduces the generators once; membership and
/// expectation queries then only walk the pivots a query string touches.
class StabilizerGroup {
 public:
  StabilizerGroup() = default;

  explicit StabilizerGroup(std::vector<PauliString> generators)
      : generators_(std::move(generators)) {
    n_ = generators_.empty() ? 0 : generators_.front().size();
    if (generators_.size() != n_) {
      throw DomainError("stabilizer group needs n generators for n qubits, got " +
                        std::to_string(generators_.size()) + " on " + std::to_string(n_));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& g = generators_[i];
      if (g.size() != n_) throw DimensionError("stabilizer generator " + std::to_string(i + 1) + " has wrong qubit count");
      if (!g.is_hermitian() || g.printed_phase() % 2 != 0) {
        throw DomainError("stabilizer generator " + std::to_string(i + 1) + " must be Hermitian with sign +-1");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (!commutes(g, generators_[j])) {
          throw DomainError("stabilizer generators " + std::to_string(j + 1) + " and " +
                            std::to_string(i + 1) + " anticommute");
        }
      }
    }
    reduce();
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<PauliString>& generators() const& noexcept { return generators_; }
  std::vector<PauliString> generators() && { return std::move(generators_); }

  /// <psi|p|psi> for the stabilized state: +1 or -1 when +-p is in the
  /// group, 0 otherwise.
  int expectation(PauliString p) const {
    if (p.size() != n_) {
      throw DimensionError("stabilizer expectation: " + std::to_string(p.size()) + " vs " +
                           std::to_string(n_) + " qubits");
    }
    if (!p.is_hermitian()) throw DomainError("stabilizer expectation of non-Hermitian " + p.to_literal());
    return reduce_in_place(p);
  }

  /// Same as `expectation` but consumes a Hermitian scratch string without
  /// re-validating it.
  int reduce_in_place(PauliString& p) const {
    // Column c < n is x bit c, column n + c is z bit c. Multiplying by the
    // row that owns the lowest set column clears it and only sets non-pivot
    // columns above it, so the lowest set column strictly increases.
    while (true) {
      const auto col = lowest_set_column(p);
      if (!col) break;
      const std::ptrdiff_t row = pivot_row_[*col];
      if (row < 0) return 0;
      p *= rows_[static_cast<std::size_t>(row)];
    }
    // p * R = i^k * I with R in the group, so <p> = i^k.
    return p.phase_exp() == 0 ? 1 : -1;
  }

 private:
  static bool column_bit(const PauliString& p, std::size_t n, std::size_t col) {
    return col < n ? p.x(col) : p.z(col - n);
  }

  std::optional<std::size_t> lowest_set_column(const PauliString& p) const {
    const auto& xs = p.x_words();
    const auto& zs = p.z_words();
    for (std::size_t w = 0; w < xs.size(); ++w) {
      if (xs[w]) return w * PauliString::kWordBits + static_cast<std::size_t>(std::countr_zero(xs[w]));
    }
    for (std::size_t w = 0; w < zs.size(); ++w) {
      if (zs[w]) return n_ + w * PauliString::kWordBits + static_cast<std::size_t>(std::countr_zero(zs[w]));
    }
    return std::nullopt;
  }

  void reduce() {
    rows_ = generators_;
    pivot_row_.assign(2 * n_, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * n_ && rank < n_; ++col) {
      std::size_t found = rank;
      while (found < n_ && !column_bit(rows_[found], n_, col)) ++found;
      if (found == n_) continue;
      std::swap(rows_[rank], rows_[found]);
      for (std::size_t r = 0; r < n_; ++r) {
        if (r != rank && column_bit(rows_[r], n_, col)) rows_[r] *= rows_[rank];
      }
      pivot_row_[col] = static_cast<std::ptrdiff_t>(rank);
      ++rank;
    }
    if (rank != n_) {
      throw DomainError("stabilizer generators are dependent (rank " + std::to_string(rank) +
                        " < " + std::to_string(n_) + ")");
    }
  }

  std::size_t n_ = 0;
  std::vector<PauliString> generators_;
  std::vector<PauliString> rows_;
  std::vector<std::ptrdiff_t> pivot_row_;
};

/// G_i = X_i Z_{N(i)}. Disconnected graphs are accepted; a note is appended
/// to `warnings` when provided.
inline StabilizerGroup stabilizer_generators(const Graph& g,
                                             std::vector<std::string>* warnings = nullptr) {
  if (g.size() == 0) throw DomainError("graph has no vertices");
  if (warnings && !g.is_connected()) {
    warnings->push_back("graph with " + std::to_string(g.size()) + " vertices is disconnected");
  }
  std::vector<PauliString> gens;
  gens.reserve(g.size());
  for (std::size_t i = 1; i <= g.size(); ++i) {
    PauliString p(g.size());
    p.set(i - 1, PauliKind::X);
    for (std::size_t j : g.neighbors(i)) p.set(j - 1, PauliKind::Z);
    gens.push_back(std::move(p));
  }
  return StabilizerGroup(std::move(gens));
}

inline int stabilizer_expectation(const StabilizerGroup& s, const PauliString& p) {
  return s.expectation(p);
}

/// CZ network on |+>^n: amplitude (-1)^{#edges inside the support} / sqrt(2^n).
/// Qubit 1 is the least significant bit; the |0...0> amplitude is real
/// positive.
inline Vector graph_state_vector(const Graph& g) {
  require_dense_qubits(g.size(), "graph_state_vector");
  const std::size_t n = g.size();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> edge_masks;
  for (const auto& [u, v] : g.edges()) {
    edge_masks.push_back((std::size_t{1} << (u - 1)) | (std::size_t{1} << (v - 1)));
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  Vector psi(static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t inside = 0;
    for (std::size_t m : edge_masks) inside += (b & m) == m;
    psi(static_cast<Eigen::Index>(b)) = (inside % 2 == 0) ? amp : -amp;
  }
  return psi;
}

}  // namespace ncineq
