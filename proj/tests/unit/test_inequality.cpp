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

#include "ncineq/inequality.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <set>

using namespace ncineq;

namespace {

// Exhaustive maximum written directly from the labels, with no parity
// tricks: one +-1 value per observable.
std::int64_t naive_classical(const Inequality& ineq) {
  const std::uint32_t n = ineq.n;
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint32_t assign = 0; assign < (1U << (2 * n)); ++assign) {
    auto value_of = [&](const ObservableLabel& l) {
      const std::uint32_t bit = (l.kind == ObservableLabel::Kind::A ? 0 : n) + l.index - 1;
      return (assign >> bit) & 1U ? -1 : 1;
    };
    std::int64_t total = 0;
    for (const auto& t : ineq.terms) {
      int product = 1;
      for (const auto& l : t.labels()) product *= value_of(l);
      total += t.coefficient() * product;
    }
    best = std::max(best, total);
  }
  return best;
}

}  // namespace

TEST(observable_label, parse) {
  const auto a = ObservableLabel::parse("A12");
  EXPECT_EQ(a.kind, ObservableLabel::Kind::A);
  EXPECT_EQ(a.index, 12U);
  EXPECT_EQ(ObservableLabel::parse("B3").to_string(), "B3");
  EXPECT_THROW(ObservableLabel::parse("C1"), DomainError);
  EXPECT_THROW(ObservableLabel::parse("A0"), DomainError);
  EXPECT_THROW(ObservableLabel::parse("A"), DomainError);
  EXPECT_THROW(ObservableLabel::parse("B1x"), DomainError);
}

TEST(correlator_term, from_labels) {
  using K = ObservableLabel::Kind;
  const auto t = CorrelatorTerm::from_labels(-1, {{K::A, 1}, {K::B, 2}, {K::A, 3}});
  EXPECT_EQ(t.correlator_string(), "<A1B2A3>");
  EXPECT_EQ(t.a_count(), 2U);
  EXPECT_TRUE(t.is_a(3));
  EXPECT_FALSE(t.is_a(2));
  // Slot k must carry index k.
  EXPECT_THROW(CorrelatorTerm::from_labels(1, {{K::A, 2}, {K::B, 1}, {K::B, 3}}), DomainError);
  // At most three A's.
  EXPECT_THROW(CorrelatorTerm::from_labels(1, {{K::A, 1}, {K::A, 2}, {K::A, 3}, {K::A, 4}}), DomainError);
}

TEST(inequality, three_observables) {
  const auto ineq = build(3);
  EXPECT_EQ(ineq.alpha, 1);
  ASSERT_EQ(ineq.terms.size(), 4U);
  EXPECT_EQ(ineq.terms[0].correlator_string(), "<A1B2B3>");
  EXPECT_EQ(ineq.terms[1].correlator_string(), "<B1A2B3>");
  EXPECT_EQ(ineq.terms[2].correlator_string(), "<B1B2A3>");
  EXPECT_EQ(ineq.terms[3].correlator_string(), "<A1A2A3>");
  EXPECT_EQ(ineq.terms[3].coefficient(), -1);
  EXPECT_EQ(ineq.classical_bound, 2);
  EXPECT_EQ(ineq.quantum_bound, 4);
}

TEST(inequality, four_observables) {
  const auto ineq = build(4);
  EXPECT_EQ(ineq.alpha, 3);
  EXPECT_EQ(ineq.terms.size(), 8U);
  EXPECT_EQ(ineq.quantum_bound, 16);
  EXPECT_EQ(ineq.classical_bound, 8);
}

TEST(inequality, term_structure) {
  for (std::int64_t n = 3; n <= 40; ++n) {
    const auto ineq = build(n);
    ASSERT_EQ(static_cast<std::int64_t>(ineq.terms.size()), n + choose(n, 3));
    std::set<std::array<std::uint32_t, 3>> keys;
    std::int64_t positive = 0;
    for (const auto& t : ineq.terms) {
      keys.insert(t.key());
      if (t.coefficient() > 0) {
        ASSERT_EQ(t.a_count(), 1U);
        ASSERT_EQ(t.coefficient(), choose(n - 1, 2));
        ++positive;
      } else {
        ASSERT_EQ(t.a_count(), 3U);
        ASSERT_EQ(t.coefficient(), -1);
      }
    }
    ASSERT_EQ(positive, n);
    ASSERT_EQ(keys.size(), ineq.terms.size());
    ASSERT_EQ(ineq.quantum_bound, 4 * choose(n, 3));
  }
}

TEST(inequality, family_size) {
  EXPECT_THROW(build(2), DomainError);
  EXPECT_THROW(quantum_bound(0), DomainError);
  EXPECT_THROW(build(5000), CapacityError);
}

TEST(classical_bound, bruteforce_matches_naive) {
  for (std::int64_t n = 3; n <= 7; ++n) {
    const auto ineq = build(n);
    EXPECT_EQ(classical_bound_bruteforce(ineq), naive_classical(ineq)) << "n=" << n;
  }
}

TEST(classical_bound, fast_matches_bruteforce) {
  for (std::int64_t n = 3; n <= 10; ++n) {
    EXPECT_EQ(classical_bound_fast(n), classical_bound_bruteforce(build(n), 2)) << "n=" << n;
  }
}

TEST(classical_bound, jobs_do_not_change_result) {
  const auto ineq = build(8);
  const auto one = classical_bound_bruteforce(ineq, 1);
  for (unsigned jobs : {2U, 3U, 7U}) EXPECT_EQ(classical_bound_bruteforce(ineq, jobs), one);
}

TEST(classical_bound, at_most_twice_binomial) {
  for (std::int64_t n = 3; n <= 256; ++n) {
    const auto c = classical_bound_fast(n);
    ASSERT_LE(c, 2 * choose(n, 3)) << "n=" << n;
    ASSERT_LT(c, quantum_bound(n)) << "n=" << n;
  }
}

TEST(classical_bound, bruteforce_cap) {
  Inequality big;
  big.n = kBruteForceMaxN + 1;
  EXPECT_THROW(classical_bound_bruteforce(big), CapacityError);
}

TEST(lifting, sums_to_inequality) {
  for (std::int64_t n = 3; n <= 10; ++n) {
    std::vector<CorrelatorTerm> all;
    const auto lifts = lifting_decomposition(n);
    ASSERT_EQ(static_cast<std::int64_t>(lifts.size()), choose(n, 3));
    for (const auto& l : lifts) {
      ASSERT_EQ(l.terms.size(), 4U);
      all.insert(all.end(), l.terms.begin(), l.terms.end());
    }
    EXPECT_EQ(collect_terms(all), collect_terms(build(n).terms)) << "n=" << n;
  }
}

TEST(lifting, each_copy_is_bounded_by_two) {
  // Every lifted copy is I_3 on its triple with B padding, so any
  // assignment gives at most 2 per copy.
  const auto ineq = build(3);
  EXPECT_EQ(classical_bound_bruteforce(ineq), 2);
  for (const auto& l : lifting_decomposition(6)) {
    Inequality copy;
    copy.n = 6;
    copy.terms = l.terms;
    ASSERT_EQ(classical_bound_bruteforce(copy), 2);
  }
}

TEST(hypergraph, structure_and_dot) {
  const auto h = hypergraph(build(3));
  EXPECT_EQ(h.vertices.size(), 6U);
  ASSERT_EQ(h.edges.size(), 4U);
  EXPECT_EQ(h.edges[3].sign(), -1);
  for (const auto& e : h.edges) EXPECT_EQ(e.vertices.size(), 3U);
  const std::string dot = to_dot(h);
  EXPECT_NE(dot.find("c1 [shape=point, color=red"), std::string::npos);
  EXPECT_NE(dot.find("c4 [shape=point, color=blue"), std::string::npos);
  EXPECT_NE(dot.find("c4 -- \"A2\""), std::string::npos);
  EXPECT_EQ(dot.find("c5"), std::string::npos);
}

TEST(inequality, build_scales) {
  const auto start = std::chrono::steady_clock::now();
  const auto ineq = build(256);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(static_cast<std::int64_t>(ineq.terms.size()), 256 + choose(256, 3));
  EXPECT_LT(seconds, 5.0);
}
