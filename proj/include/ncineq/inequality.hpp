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
#include <array>
#include <bit>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ncineq/errors.hpp"

namespace ncineq {

/// Exact binomial coefficient; k is small (<= 3) everywhere it is used.
inline std::int64_t choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct ObservableLabel {
  enum class Kind : std::uint8_t { A, B };

  Kind kind = Kind::A;
  std::uint32_t index = 1;  // 1-based

  std::string to_string() const { return (kind == Kind::A ? "A" : "B") + std::to_string(index); }

  static ObservableLabel parse(std::string_view text) {
    if (text.size() < 2 || (text[0] != 'A' && text[0] != 'B')) {
      throw DomainError("observable label '" + std::string(text) + "': expected A<k> or B<k>");
    }
    std::uint32_t idx = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data() + 1, end, idx);
    if (ec != std::errc{} || ptr != end || idx == 0) {
      throw DomainError("observable label '" + std::string(text) + "': bad index");
    }
    return {text[0] == 'A' ? Kind::A : Kind::B, idx};
  }

  friend bool operator==(const ObservableLabel&, const ObservableLabel&) = default;
};

/// coefficient * <L_1 L_2 ... L_n> where slot j holds A_j or B_j. Only the
/// A-slots are stored (one or three of them), all other slots carry B.
class CorrelatorTerm {
 public:
  static constexpr std::size_t kMaxASlots = 3;

  CorrelatorTerm() = default;

  CorrelatorTerm(std::int64_t coefficient, std::uint32_t n, std::vector<std::uint32_t> a_slots)
      : coefficient_(coefficient), n_(n) {
    std::sort(a_slots.begin(), a_slots.end());
    if (a_slots.empty() || a_slots.size() > kMaxASlots) {
      throw DomainError("correlator term must hold 1..3 A observables, got " +
                        std::to_string(a_slots.size()));
    }
    for (std::size_t k = 0; k < a_slots.size(); ++k) {
      if (a_slots[k] < 1 || a_slots[k] > n) {
        throw DomainError("correlator A slot " + std::to_string(a_slots[k]) + " outside 1.." +
                          std::to_string(n));
      }
      if (k > 0 && a_slots[k] == a_slots[k - 1]) throw DomainError("correlator repeats an A slot");
      a_[k] = a_slots[k];
    }
    count_ = static_cast<std::uint8_t>(a_slots.size());
  }

  /// From a full label list; slot j must carry index j.
  static CorrelatorTerm from_labels(std::int64_t coefficient, const std::vector<ObservableLabel>& labels) {
    std::vector<std::uint32_t> a_slots;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j].index != j + 1) {
        throw DomainError("label " + labels[j].to_string() + " sits in slot " + std::to_string(j + 1));
      }
      if (labels[j].kind == ObservableLabel::Kind::A) a_slots.push_back(labels[j].index);
    }
    return CorrelatorTerm(coefficient, static_cast<std::uint32_t>(labels.size()), std::move(a_slots));
  }

  std::int64_t coefficient() const noexcept { return coefficient_; }
  std::uint32_t size() const noexcept { return n_; }

  /// Sorted 1-based A slots.
  std::vector<std::uint32_t> a_slots() const { return {a_.begin(), a_.begin() + count_}; }
  std::size_t a_count() const noexcept { return count_; }
  std::uint32_t a_slot(std::size_t k) const { return a_.at(k); }

  bool is_a(std::uint32_t slot) const noexcept {
    return std::find(a_.begin(), a_.begin() + count_, slot) != a_.begin() + count_;
  }

  ObservableLabel label(std::uint32_t slot) const {
    return {is_a(slot) ? ObservableLabel::Kind::A : ObservableLabel::Kind::B, slot};
  }

  std::vector<ObservableLabel> labels() const {
    std::vector<ObservableLabel> out;
    out.reserve(n_);
    for (std::uint32_t j = 1; j <= n_; ++j) out.push_back(label(j));
    return out;
  }

  /// "<A1B2B3>" style rendering without the coefficient.
  std::string correlator_string() const {
    std::string s = "<";
    for (std::uint32_t j = 1; j <= n_; ++j) s += label(j).to_string();
    return s + ">";
  }

  /// Identity of the correlator regardless of coefficient.
  std::array<std::uint32_t, kMaxASlots> key() const noexcept { return a_; }

  friend bool operator==(const CorrelatorTerm&, const CorrelatorTerm&) = default;

 private:
  std::int64_t coefficient_ = 0;
  std::uint32_t n_ = 0;
  std::array<std::uint32_t, kMaxASlots> a_{};
  std::uint8_t count_ = 0;
};

struct Inequality {
  std::uint32_t n = 0;
  std::int64_t alpha = 0;
  std::vector<CorrelatorTerm> terms;
  std::int64_t classical_bound = 0;
  std::int64_t quantum_bound = 0;
};

inline void require_family_size(std::int64_t n, const char* what) {
  if (n < 3) throw DomainError(std::string(what) + ": n=" + std::to_string(n) + " < 3");
}

inline std::int64_t alpha_coefficient(std::int64_t n) { return choose(n - 1, 2); }

inline std::int64_t quantum_bound(std::int64_t n) {
  require_family_size(n, "quantum_bound");
  return alpha_coefficient(n) * n + choose(n, 3);
}

/// Maximum of I_n over deterministic assignments in O(n).
///
/// With s_i = a_i b_i and B = prod_j b_j every term becomes B times a
/// monomial in s, so I_n = B (alpha * sum(s) - e3(s)). Only the number k of
/// s_i equal to +1 matters.
inline std::int64_t classical_bound_fast(std::int64_t n) {
  require_family_size(n, "classical_bound_fast");
  const std::int64_t alpha = alpha_coefficient(n);
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::int64_t k = 0; k <= n; ++k) {
    const std::int64_t m = n - k;
    const std::int64_t linear = 2 * k - n;
    const std::int64_t e3 = choose(k, 3) - choose(k, 2) * m + k * choose(m, 2) - choose(m, 3);
    const std::int64_t value = alpha * linear - e3;
    best = std::max(best, value < 0 ? -value : value);
  }
  return best;
}

/// Positives by A position, then negatives by 3-subset in lexicographic order.
inline Inequality build(std::int64_t n) {
  require_family_size(n, "build");
  if (n > 4096) throw CapacityError("build: n=" + std::to_string(n) + " too large to materialize");
  const auto un = static_cast<std::uint32_t>(n);
  Inequality ineq;
  ineq.n = un;
  ineq.alpha = alpha_coefficient(n);
  ineq.terms.reserve(static_cast<std::size_t>(n + choose(n, 3)));
  for (std::uint32_t i = 1; i <= un; ++i) ineq.terms.emplace_back(ineq.alpha, un, std::vector<std::uint32_t>{i});
  for (std::uint32_t i = 1; i <= un; ++i) {
    for (std::uint32_t j = i + 1; j <= un; ++j) {
      for (std::uint32_t k = j + 1; k <= un; ++k) {
        ineq.terms.emplace_back(-1, un, std::vector<std::uint32_t>{i, j, k});
      }
    }
  }
  ineq.classical_bound = classical_bound_fast(n);
  ineq.quantum_bound = quantum_bound(n);
  return ineq;
}

/// Largest n for which exhaustive enumeration is offered (2n <= 30).
inline constexpr std::uint32_t kBruteForceMaxN = 15;

/// Exact maximum over all 2^(2n) deterministic +-1 assignments of the term
/// list. Bit j-1 of an assignment is a_j, bit n+j-1 is b_j; a set bit means
/// -1. The range is split by assignment prefix across `jobs` workers.
inline std::int64_t classical_bound_bruteforce(const Inequality& ineq, unsigned jobs = 1) {
  const std::uint32_t n = ineq.n;
  if (n > kBruteForceMaxN) {
    throw CapacityError("classical_bound_bruteforce: 2n=" + std::to_string(2 * n) +
                        " exceeds 30; use classical_bound_fast");
  }
  std::vector<std::uint32_t> masks;
  std::vector<std::int64_t> coeffs;
  for (const auto& t : ineq.terms) {
    std::uint32_t m = 0;
    for (std::uint32_t j = 1; j <= n; ++j) m |= t.is_a(j) ? (1U << (j - 1)) : (1U << (n + j - 1));
    masks.push_back(m);
    coeffs.push_back(t.coefficient());
  }
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for (std::uint64_t a = lo; a < hi; ++a) {
      const auto assign = static_cast<std::uint32_t>(a);
      std::int64_t value = 0;
      for (std::size_t t = 0; t < masks.size(); ++t) {
        const std::int64_t parity = std::popcount(assign & masks[t]) & 1;
        value += coeffs[t] * (1 - 2 * parity);
      }
      best = std::max(best, value);
    }
    return best;
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, 64));
  if (jobs == 1 || total < 4096) return scan(0, total);
  std::vector<std::int64_t> partial(jobs, std::numeric_limits<std::int64_t>::min());
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (total + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::uint64_t lo = std::min(total, w * chunk);
    const std::uint64_t hi = std::min(total, lo + chunk);
    workers.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
  }
  for (auto& t : workers) t.join();
  return *std::max_element(partial.begin(), partial.end());
}

/// One copy of the three-observable inequality placed on slots {i, j, k},
/// every other slot padded with B.
struct Lifting {
  std::array<std::uint32_t, 3> triple{};
  std::vector<CorrelatorTerm> terms;
};

inline std::vector<Lifting> lifting_decomposition(std::int64_t n) {
  require_family_size(n, "lifting_decomposition");
  const auto un = static_cast<std::uint32_t>(n);
  std::vector<Lifting> out;
  out.reserve(static_cast<std::size_t>(choose(n, 3)));
  for (std::uint32_t i = 1; i <= un; ++i) {
    for (std::uint32_t j = i + 1; j <= un; ++j) {
      for (std::uint32_t k = j + 1; k <= un; ++k) {
        Lifting l;
        l.triple = {i, j, k};
        l.terms.emplace_back(1, un, std::vector<std::uint32_t>{i});
        l.terms.emplace_back(1, un, std::vector<std::uint32_t>{j});
        l.terms.emplace_back(1, un, std::vector<std::uint32_t>{k});
        l.terms.emplace_back(-1, un, std::vector<std::uint32_t>{i, j, k});
        out.push_back(std::move(l));
      }
    }
  }
  return out;
}

/// Merges like correlators, dropping those whose coefficients cancel.
inline std::map<std::array<std::uint32_t, 3>, std::int64_t> collect_terms(
    const std::vector<CorrelatorTerm>& terms) {
  std::map<std::array<std::uint32_t, 3>, std::int64_t> out;
  for (const auto& t : terms) out[t.key()] += t.coefficient();
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

struct Hyperedge {
  std::vector<std::size_t> vertices;  // indices into Hypergraph::vertices
  std::int64_t coefficient = 0;
  int sign() const { return coefficient > 0 ? 1 : -1; }
};

/// Compatibility hypergraph: one vertex per observable (A_1..A_n, B_1..B_n),
/// one hyperedge per correlator.
struct Hypergraph {
  std::vector<ObservableLabel> vertices;
  std::vector<Hyperedge> edges;

  static std::size_t vertex_index(std::uint32_t n, const ObservableLabel& l) {
    return (l.kind == ObservableLabel::Kind::A ? 0 : n) + l.index - 1;
  }
};

inline Hypergraph hypergraph(const Inequality& ineq) {
  Hypergraph h;
  for (std::uint32_t i = 1; i <= ineq.n; ++i) h.vertices.push_back({ObservableLabel::Kind::A, i});
  for (std::uint32_t i = 1; i <= ineq.n; ++i) h.vertices.push_back({ObservableLabel::Kind::B, i});
  for (const auto& t : ineq.terms) {
    Hyperedge e;
    e.coefficient = t.coefficient();
    for (std::uint32_t j = 1; j <= ineq.n; ++j) e.vertices.push_back(Hypergraph::vertex_index(ineq.n, t.label(j)));
    h.edges.push_back(std::move(e));
  }
  return h;
}

/// Star expansion: each context becomes a point node joined to its
/// observables; positive contexts red, negative blue.
inline std::string to_dot(const Hypergraph& h) {
  std::ostringstream out;
  out << "graph contexts {\n  node [shape=circle];\n";
  for (const auto& v : h.vertices) out << "  \"" << v.to_string() << "\";\n";
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto& edge = h.edges[e];
    const char* color = edge.sign() > 0 ? "red" : "blue";
    out << "  c" << e + 1 << " [shape=point, color=" << color << ", label=\"" << edge.coefficient << "\"];\n";
    for (std::size_t v : edge.vertices) {
      out << "  c" << e + 1 << " -- \"" << h.vertices[v].to_string() << "\" [color=" << color << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace ncineq
