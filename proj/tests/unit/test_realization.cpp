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

#include "ncineq/realization.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "test_util.hpp"

using namespace ncineq;

using Ops = std::vector<SparseMatrix>;

namespace {

Graph random_graph(std::size_t n, std::mt19937_64& rng) {
  Graph g(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (rng() & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

PauliString random_local(std::size_t site, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  PauliString p = embed(static_cast<PauliKind>(kind(rng)), site, n);
  if (rng() & 1U) p.mul_phase(2);
  return p;
}

// <psi| O_1 ... O_n |psi> from explicit matrices.
Complex dense_oracle(const Vector& psi, const std::vector<PauliString>& ops) {
  Matrix m = Matrix::Identity(psi.size(), psi.size());
  for (const auto& o : ops) m = m * to_dense(o);
  return psi.dot(m * psi);
}

std::vector<PauliString> slot_operators(const Realization& r, const CorrelatorTerm& t) {
  std::vector<PauliString> ops;
  for (std::uint32_t s = 1; s <= t.size(); ++s) ops.push_back(r.pauli(t.label(s)));
  return ops;
}

}  // namespace

TEST(realization, ideal_dense_reaches_quantum_bound) {
  for (std::int64_t n = 3; n <= 6; ++n) {
    EXPECT_NEAR(evaluate(build(n), ideal_realization(n, Backend::dense)), static_cast<double>(quantum_bound(n)), 1e-9);
  }
}

TEST(realization, ideal_symbolic_is_exact) {
  for (std::int64_t n : {3, 4, 5, 10, 20, 100}) {
    EXPECT_EQ(evaluate(build(n), ideal_realization(n, Backend::symbolic)), static_cast<double>(4 * choose(n, 3)));
  }
}

TEST(realization, ideal_symbolic_scales) {
  const auto start = std::chrono::steady_clock::now();
  const double value = evaluate(build(256), ideal_realization(256, Backend::symbolic));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(value, static_cast<double>(4 * choose(256, 3)));
  EXPECT_LT(seconds, 5.0);
}

TEST(realization, symbolic_and_dense_agree_per_term) {
  for (std::int64_t n = 3; n <= 6; ++n) {
    const auto sym = ideal_realization(n, Backend::symbolic);
    const auto den = ideal_realization(n, Backend::dense);
    for (const auto& t : build(n).terms) {
      ASSERT_NEAR(correlator(sym, t), correlator(den, t), 1e-12) << t.correlator_string();
      ASSERT_NEAR(std::abs(correlator(sym, t)), 1.0, 0.0);
    }
  }
}

TEST(realization, symbolic_matches_dense_oracle_on_random_local_realizations) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const Graph g = random_graph(n, rng);
    std::vector<PauliString> a;
    std::vector<PauliString> b;
    for (std::size_t i = 1; i <= n; ++i) {
      a.push_back(random_local(i, n, rng));
      b.push_back(random_local(i, n, rng));
    }
    const auto r = Realization::symbolic(a, b, stabilizer_generators(g));
    const auto d = Realization::dense(
        [&] { std::vector<SparseMatrix> v; for (auto& p : a) v.push_back(to_sparse(p)); return v; }(),
        [&] { std::vector<SparseMatrix> v; for (auto& p : b) v.push_back(to_sparse(p)); return v; }(),
        graph_state_vector(g));
    const Vector psi = graph_state_vector(g);
    const auto ineq = build(static_cast<std::int64_t>(n));
    double by_terms = 0.0;
    for (const auto& t : ineq.terms) {
      const Complex oracle = dense_oracle(psi, slot_operators(r, t));
      ASSERT_NEAR(oracle.imag(), 0.0, 1e-12);
      ASSERT_EQ(correlator(r, t), std::round(oracle.real())) << t.correlator_string();
      ASSERT_NEAR(correlator(d, t), oracle.real(), 1e-12);
      by_terms += static_cast<double>(t.coefficient()) * correlator(r, t);
    }
    ASSERT_EQ(evaluate(ineq, r), by_terms);
    ASSERT_NEAR(evaluate(ineq, d), by_terms, 1e-9);
  }
}

TEST(realization, general_path_matches_oracle) {
  // Observables that fail cross-commutation disable the fast path; terms
  // whose factors still commute must agree with the matrix oracle.
  std::mt19937_64 rng(22);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 2;
    std::vector<PauliString> a;
    std::vector<PauliString> b;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(ncineq::testing::random_observable(n, rng));
      b.push_back(ncineq::testing::random_observable(n, rng));
    }
    const Graph g = random_graph(n, rng);
    const auto r = Realization::symbolic(a, b, stabilizer_generators(g));
    const Vector psi = graph_state_vector(g);
    for (const auto& t : build(static_cast<std::int64_t>(n)).terms) {
      PauliString product = PauliString::identity(n);
      for (const auto& o : slot_operators(r, t)) product *= o;
      if (!product.is_hermitian()) {
        ASSERT_THROW(correlator(r, t), CompatibilityError);
        continue;
      }
      const Complex oracle = dense_oracle(psi, slot_operators(r, t));
      ASSERT_EQ(correlator(r, t), std::round(oracle.real()));
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(realization, linearity) {
  const auto r = ideal_realization(5, Backend::dense);
  const auto ineq = build(5);
  const std::span<const CorrelatorTerm> all(ineq.terms);
  const double whole = evaluate_terms(all, r);
  const double split = evaluate_terms(all.first(3), r) + evaluate_terms(all.subspan(3), r);
  EXPECT_NEAR(whole, split, 1e-12);
  std::vector<CorrelatorTerm> doubled;
  for (const auto& t : ineq.terms) doubled.emplace_back(2 * t.coefficient(), t.size(), t.a_slots());
  EXPECT_NEAR(evaluate_terms(doubled, r), 2 * whole, 1e-12);
}

TEST(realization, alternative_three) {
  const auto r = alternative_realization_3();
  const auto rep = compatibility_report(r);
  EXPECT_TRUE(rep.admissible);
  EXPECT_EQ(rep.max_commutator(), 0.0);
  EXPECT_EQ(rep.max_anticommutator(), 0.0);
  EXPECT_NEAR(evaluate(build(3), r), 4.0, 1e-9);
}

TEST(realization, compatibility_flags_noncommuting_pairs) {
  auto op = [](const char* lit) { return to_sparse(PauliString::from_literal(lit)); };
  const auto r = Realization::dense(Ops{op("XII"), op("ZII"), op("IIX")}, Ops{op("IZI"), op("IZI"), op("IIZ")},
                                    graph_state_vector(Graph::complete(3)));
  const auto rep = compatibility_report(r);
  EXPECT_FALSE(rep.admissible);
  EXPECT_NEAR(rep.max_commutator(), 2.0, 1e-12);

  const auto sym = Realization::symbolic(
      {PauliString::from_literal("XII"), PauliString::from_literal("ZII"), PauliString::from_literal("IIX")},
      {PauliString::from_literal("IZI"), PauliString::from_literal("IZI"), PauliString::from_literal("IIZ")},
      stabilizer_generators(Graph::complete(3)));
  const auto srep = compatibility_report(sym);
  EXPECT_FALSE(srep.admissible);
  EXPECT_EQ(srep.max_commutator(), 2.0);
  // A_2 and B_2 commute here, so {A_2, B_2}|psi> = 2 A_2 B_2 |psi>.
  EXPECT_EQ(srep.anticommutators[1].residual, 2.0);
}

TEST(realization, ideal_compatibility) {
  for (auto backend : {Backend::symbolic, Backend::dense}) {
    const auto rep = compatibility_report(ideal_realization(4, backend));
    EXPECT_TRUE(rep.admissible);
    EXPECT_LT(rep.max_commutator(), 1e-12);
    EXPECT_LT(rep.max_anticommutator(), 1e-12);
    EXPECT_EQ(rep.commutators.size(), 4U * 6U);
  }
}

TEST(realization, symbolic_noncommuting_term_throws) {
  const auto r = Realization::symbolic(
      {PauliString::from_literal("XII"), PauliString::from_literal("IXI"), PauliString::from_literal("IIX")},
      {PauliString::from_literal("IIZ"), PauliString::from_literal("ZII"), PauliString::from_literal("III")},
      stabilizer_generators(Graph::complete(3)));
  // <A1 B2 B3> = X Z I on qubit 1.
  EXPECT_THROW(correlator(r, build(3).terms[0]), CompatibilityError);
}

TEST(realization, factory_validation) {
  auto op = [](const char* lit) { return to_sparse(PauliString::from_literal(lit)); };
  const Vector psi = graph_state_vector(Graph::complete(2));
  EXPECT_THROW(Realization::dense(Ops{op("XI")}, Ops{op("ZI"), op("IZ")}, psi), DimensionError);
  EXPECT_THROW(Realization::dense(Ops{op("XI"), op("IXI")}, Ops{op("ZI"), op("IZ")}, psi), DimensionError);
  SparseMatrix half = op("XI") * Complex(0.5, 0);
  EXPECT_THROW(Realization::dense(Ops{half, op("IX")}, Ops{op("ZI"), op("IZ")}, psi), DomainError);
  SparseMatrix skew = op("XI") * Complex(0, 1);
  EXPECT_THROW(Realization::dense(Ops{skew, op("IX")}, Ops{op("ZI"), op("IZ")}, psi), DomainError);
  EXPECT_THROW(Realization::dense(Ops{op("XI"), op("IX")}, Ops{op("ZI"), op("IZ")}, Vector(2 * psi)), DomainError);
  EXPECT_THROW(Realization::symbolic({PauliString::from_literal("+iXI"), PauliString::from_literal("IX")},
                                     {PauliString::from_literal("ZI"), PauliString::from_literal("IZ")},
                                     stabilizer_generators(Graph::complete(2))),
               DomainError);
  EXPECT_THROW(ideal_realization(13, Backend::dense), CapacityError);
  EXPECT_THROW(evaluate(build(4), ideal_realization(3, Backend::symbolic)), DimensionError);
}

TEST(realization, dense_twelve_qubits) {
  const auto r = ideal_realization(12, Backend::dense);
  EXPECT_NEAR(evaluate(build(12), r), static_cast<double>(quantum_bound(12)), 1e-9);
}
