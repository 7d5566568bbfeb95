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

#include "ncineq/graph_state.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace ncineq;
using ncineq::testing::random_observable;

namespace {

// Amplitudes listed with qubit 1 as the most significant bit, scaled by
// sqrt(8).
Vector from_msb_pattern(const std::vector<int>& signs) {
  const std::size_t n = 3;
  Vector v(8);
  for (std::size_t k = 0; k < 8; ++k) {
    std::size_t lsb = 0;
    for (std::size_t q = 0; q < n; ++q) lsb |= ((k >> (n - 1 - q)) & 1U) << q;
    v(static_cast<Eigen::Index>(lsb)) = signs[k] / std::sqrt(8.0);
  }
  return v;
}

// Removes the global phase so the first nonzero amplitude is real positive.
Vector fix_phase(Vector v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-12) return v * (std::abs(v(k)) / v(k));
  }
  return v;
}

// Swaps qubits a and b (0-based) of a state vector.
Vector swap_qubits(const Vector& v, std::size_t a, std::size_t b) {
  Vector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const auto u = static_cast<std::size_t>(k);
    std::size_t s = u & ~((std::size_t{1} << a) | (std::size_t{1} << b));
    s |= ((u >> a) & 1U) << b;
    s |= ((u >> b) & 1U) << a;
    out(static_cast<Eigen::Index>(s)) = v(k);
  }
  return out;
}

Graph random_graph(std::size_t n, std::mt19937_64& rng) {
  Graph g(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (rng() & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace

TEST(graph, named_and_validation) {
  EXPECT_EQ(Graph::named("complete:4").edges().size(), 6U);
  EXPECT_EQ(Graph::named("path:5").edges().size(), 4U);
  const Graph s = Graph::named("star:4:2");
  EXPECT_EQ(s.neighbors(2).size(), 3U);
  EXPECT_THROW(Graph::named("wheel:4"), DomainError);
  EXPECT_THROW(Graph::named("path:x"), DomainError);
  Graph g(3);
  g.add_edge(1, 2);
  EXPECT_THROW(g.add_edge(1, 1), DomainError);
  EXPECT_THROW(g.add_edge(2, 1), DomainError);
  EXPECT_THROW(g.add_edge(1, 4), DomainError);
}

TEST(graph, disconnected_warns) {
  std::vector<std::string> warnings;
  stabilizer_generators(Graph(3, {{1, 2}}), &warnings);
  EXPECT_EQ(warnings.size(), 1U);
  warnings.clear();
  stabilizer_generators(Graph::path(3), &warnings);
  EXPECT_TRUE(warnings.empty());
}

TEST(graph_state, complete_graph_generators) {
  const auto s = stabilizer_generators(Graph::complete(3));
  ASSERT_EQ(s.generators().size(), 3U);
  EXPECT_EQ(s.generators()[0].to_literal(), "+XZZ");
  EXPECT_EQ(s.generators()[1].to_literal(), "+ZXZ");
  EXPECT_EQ(s.generators()[2].to_literal(), "+ZZX");
  EXPECT_EQ(s.expectation(PauliString::from_literal("XXX")), -1);
  EXPECT_EQ(s.expectation(PauliString::from_literal("-XXX")), 1);
  EXPECT_EQ(s.expectation(PauliString::from_literal("XII")), 0);
  EXPECT_EQ(s.expectation(PauliString::from_literal("YYI")), 1);
  EXPECT_EQ(s.expectation(PauliString::from_literal("YYZ")), 0);
}

TEST(graph_state, complete_graph_amplitudes) {
  const Vector expected = from_msb_pattern({1, 1, 1, -1, 1, -1, -1, -1});
  EXPECT_LT((fix_phase(graph_state_vector(Graph::complete(3))) - expected).norm(), 1e-12);
}

TEST(graph_state, star_graph_amplitudes) {
  const Vector expected = from_msb_pattern({1, 1, 1, -1, 1, 1, -1, 1});
  // Centre on vertex 2.
  EXPECT_LT((fix_phase(graph_state_vector(Graph::path(3))) - expected).norm(), 1e-12);
  EXPECT_LT((fix_phase(graph_state_vector(Graph::star(3, 2))) - expected).norm(), 1e-12);
  // Centre on vertex 1, relabelled.
  const Vector centre_one = graph_state_vector(Graph::star(3, 1));
  EXPECT_LT((fix_phase(swap_qubits(centre_one, 0, 1)) - expected).norm(), 1e-12);
}

TEST(graph_state, vector_is_stabilized) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 8;
    const Graph g = random_graph(n, rng);
    const Vector psi = graph_state_vector(g);
    ASSERT_NEAR(psi.norm(), 1.0, 1e-12);
    for (const auto& gen : stabilizer_generators(g).generators()) {
      ASSERT_LT((to_dense(gen) * psi - psi).norm(), 1e-12);
    }
  }
}

TEST(graph_state, expectation_matches_dense) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 5;
    const Graph g = random_graph(n, rng);
    const auto s = stabilizer_generators(g);
    const Vector psi = graph_state_vector(g);
    for (int k = 0; k < 30; ++k) {
      // Half the queries are group elements, so +-1 answers get exercised.
      PauliString p = random_observable(n, rng);
      if (k % 2 == 0) {
        p = PauliString::identity(n);
        for (const auto& gen : s.generators()) {
          if (rng() & 1U) p *= gen;
        }
        if (rng() & 1U) p.mul_phase(2);
      }
      const Complex dense = psi.dot(to_dense(p) * psi);
      ASSERT_NEAR(dense.imag(), 0.0, 1e-12);
      ASSERT_NEAR(dense.real(), s.expectation(p), 1e-12) << p.to_literal();
    }
  }
}

TEST(graph_state, large_complete_graph) {
  const std::size_t n = 256;
  const auto s = stabilizer_generators(Graph::complete(n));
  PauliString product = PauliString::identity(n);
  for (const auto& g : s.generators()) product *= g;
  EXPECT_EQ(s.expectation(product), 1);
  const auto g12 = s.generators()[0] * s.generators()[1];
  EXPECT_EQ(s.expectation(g12), 1);
  PauliString x1 = embed(PauliKind::X, 1, n);
  EXPECT_EQ(s.expectation(x1), 0);
}

TEST(stabilizer_group, rejects_bad_generators) {
  auto lits = [](std::initializer_list<const char*> l) {
    std::vector<PauliString> out;
    for (const char* s : l) out.push_back(PauliString::from_literal(s));
    return out;
  };
  EXPECT_THROW(StabilizerGroup(lits({"XZ"})), DomainError);
  EXPECT_THROW(StabilizerGroup(lits({"XI", "ZI"})), DomainError);
  EXPECT_THROW(StabilizerGroup(lits({"XI", "XI"})), DomainError);
  EXPECT_THROW(StabilizerGroup(lits({"XI", "-XI"})), DomainError);
  EXPECT_THROW(StabilizerGroup(lits({"+iXI", "IZ"})), DomainError);
  EXPECT_NO_THROW(StabilizerGroup(lits({"-XX", "ZZ"})));
  const StabilizerGroup bell(lits({"-XX", "ZZ"}));
  EXPECT_EQ(bell.expectation(PauliString::from_literal("YY")), 1);
  EXPECT_THROW(bell.expectation(PauliString::from_literal("XXX")), DimensionError);
  EXPECT_THROW(bell.expectation(PauliString::from_literal("+iXX")), DomainError);
}
