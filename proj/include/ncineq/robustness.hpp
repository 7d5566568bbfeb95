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
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ncineq/dense.hpp"
#include "ncineq/errors.hpp"
#include "ncineq/inequality.hpp"
#include "ncineq/realization.hpp"

namespace ncineq {

/// Measured correlators, one per term of I_n. The stored terms only
/// identify the correlator; their coefficients are ignored.
struct Statistics {
  struct Entry {
    CorrelatorTerm term;
    double value = 0.0;
  };
  std::uint32_t n = 0;
  std::vector<Entry> values;
};

/// Every positive correlator at +(1 - deficit), every negative at -(1 - deficit).
inline Statistics uniform_statistics(std::uint32_t n, double deficit) {
  const Inequality ineq = build(n);
  Statistics s{n, {}};
  for (const auto& t : ineq.terms) {
    s.values.push_back({t, (t.coefficient() > 0 ? 1.0 : -1.0) * (1.0 - deficit)});
  }
  return s;
}

inline Statistics statistics_from_realization(const Inequality& ineq, const Realization& r) {
  Statistics s{ineq.n, {}};
  for (const auto& t : ineq.terms) s.values.push_back({t, correlator(r, t)});
  return s;
}

/// Values this far outside [-1, 1] are rounding and get clamped.
inline constexpr double kStatisticsRangeTolerance = 1e-9;

inline std::string format_value(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

/// Smallest eps >= 0 with sign(c_t) * value_t >= 1 - eps for every term.
inline double epsilon_from_statistics(const Statistics& s) {
  const Inequality ineq = build(s.n);
  std::map<std::array<std::uint32_t, 3>, double> measured;
  for (const auto& e : s.values) {
    if (e.term.size() != s.n) {
      throw DimensionError("statistics entry " + e.term.correlator_string() + " does not have n=" +
                           std::to_string(s.n) + " slots");
    }
    if (!(std::abs(e.value) <= 1.0 + kStatisticsRangeTolerance)) {
      throw DomainError("statistics value " + format_value(e.value) + " for " + e.term.correlator_string() +
                        " outside [-1, 1]");
    }
    if (!measured.emplace(e.term.key(), std::clamp(e.value, -1.0, 1.0)).second) {
      throw DomainError("statistics list " + e.term.correlator_string() + " twice");
    }
  }
  double eps = 0.0;
  for (const auto& t : ineq.terms) {
    const auto it = measured.find(t.key());
    if (it == measured.end()) throw DomainError("statistics missing term " + t.correlator_string());
    const double sign = t.coefficient() > 0 ? 1.0 : -1.0;
    eps = std::max(eps, 1.0 - sign * it->second);
  }
  if (measured.size() != ineq.terms.size()) {
    throw DomainError("statistics contain " + std::to_string(measured.size() - ineq.terms.size()) +
                      " correlators that are not terms of I_" + std::to_string(s.n));
  }
  return eps;
}

/// Fidelity deficits: state fidelity >= 1 - eps0, fidelity of the fixed
/// observable of each pair >= 1 - eps1, of the rotated one >= 1 - eps2.
struct FidelityBounds {
  double eps0 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

/// General-n constants: eps0 = [8(2^{n-1} - 1) + 1] eps, eps1 = 0,
/// eps2 = 2^{5-n} eps.
inline FidelityBounds general_fidelity_bounds(std::int64_t n, double eps) {
  require_family_size(n, "fidelity_bounds");
  if (!(eps >= 0.0)) throw DomainError("fidelity_bounds: epsilon must be >= 0");
  const double pairs = std::ldexp(1.0, static_cast<int>(n - 1)) - 1.0;
  return {(8.0 * pairs + 1.0) * eps, 0.0, std::ldexp(eps, static_cast<int>(5 - n))};
}

inline FidelityBounds fidelity_bounds(std::int64_t n, double eps) {
  if (n == 3) {
    if (!(eps >= 0.0)) throw DomainError("fidelity_bounds: epsilon must be >= 0");
    return {25.0 * eps, 0.0, 4.0 * eps};
  }
  return general_fidelity_bounds(n, eps);
}

/// One invariant block: weight p_l, one angle per observable pair, and the
/// block's amplitudes over its 2^n computational basis (qubit 1 least
/// significant).
struct JordanBlock {
  double weight = 0.0;
  std::vector<double> angles;
  Vector amplitudes;
};

/// Noisy realization in block form. In every block, pair j <= 3 has
/// A_j = X_j and B_j = cos(t) Y_j + sin(t) X_j; pair j >= 4 has B_j = X_j
/// and A_j = -cos(t) Y_j + sin(t) X_j. At zero angles the pairs reduce to
/// the reference observables (X, Y) and (-Y, X), which together with
/// (|0...0> - |1...1>)/sqrt(2) reach the quantum bound.
struct JordanBlockSpec {
  std::uint32_t n = 3;
  std::vector<JordanBlock> blocks;

  void validate() const {
    require_family_size(n, "jordan spec");
    if (blocks.empty()) throw DomainError("jordan spec has no blocks");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    double total = 0.0;
    for (std::size_t l = 0; l < blocks.size(); ++l) {
      const auto& b = blocks[l];
      const std::string where = "jordan block " + std::to_string(l + 1);
      if (!(b.weight >= 0.0)) throw DomainError(where + ": weight must be >= 0");
      total += b.weight;
      if (b.angles.size() != n) {
        throw DimensionError(where + ": expected " + std::to_string(n) + " angles, got " +
                             std::to_string(b.angles.size()));
      }
      for (double t : b.angles) {
        if (!(std::abs(t) <= std::numbers::pi / 2)) throw DomainError(where + ": angle outside [-pi/2, pi/2]");
      }
      if (b.amplitudes.size() != dim) {
        throw DimensionError(where + ": expected " + std::to_string(dim) + " amplitudes");
      }
      if (std::abs(b.amplitudes.norm() - 1.0) > 1e-9) throw DomainError(where + ": amplitudes not unit norm");
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("jordan block weights sum to " + std::to_string(total));
  }
};

/// Pair j keeps its A fixed for j <= 3 and its B fixed for j >= 4.
inline bool a_is_fixed(std::uint32_t pair) { return pair <= 3; }

/// (|0...0> - |1...1>)/sqrt(2) on n qubits.
inline Vector reference_block_state(std::uint32_t n) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Vector v = Vector::Zero(dim);
  v(0) = 1.0 / std::numbers::sqrt2;
  v(dim - 1) = -1.0 / std::numbers::sqrt2;
  return v;
}

namespace detail {

inline std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> jordan_pair(std::uint32_t pair, double angle) {
  using namespace pauli_matrix;
  const Eigen::Matrix2cd fixed = X();
  if (a_is_fixed(pair)) return {fixed, std::cos(angle) * Y() + std::sin(angle) * X()};
  return {-std::cos(angle) * Y() + std::sin(angle) * X(), fixed};
}

/// Places one block matrix at `offset` of a block-diagonal operator.
inline void add_block(std::vector<Eigen::Triplet<Complex>>& out, const Matrix& block, Eigen::Index offset) {
  for (Eigen::Index c = 0; c < block.cols(); ++c) {
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
      if (block(r, c) != Complex{}) out.emplace_back(offset + r, offset + c, block(r, c));
    }
  }
}

}  // namespace detail

/// Direct sum of the blocks; state = sum_l sqrt(p_l) |psi_l>.
inline Realization jordan_realization(const JordanBlockSpec& spec) {
  spec.validate();
  const std::uint32_t n = spec.n;
  const auto block_dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  const auto total = block_dim * static_cast<Eigen::Index>(spec.blocks.size());
  if (static_cast<std::size_t>(total) > kDenseRealizationDimCap) {
    throw CapacityError("jordan realization dimension " + std::to_string(total) + " exceeds " +
                        std::to_string(kDenseRealizationDimCap));
  }
  std::vector<std::vector<Eigen::Triplet<Complex>>> a_entries(n);
  std::vector<std::vector<Eigen::Triplet<Complex>>> b_entries(n);
  Vector state(total);
  for (std::size_t l = 0; l < spec.blocks.size(); ++l) {
    const auto& blk = spec.blocks[l];
    const Eigen::Index offset = static_cast<Eigen::Index>(l) * block_dim;
    state.segment(offset, block_dim) = std::sqrt(blk.weight) * blk.amplitudes;
    for (std::uint32_t j = 1; j <= n; ++j) {
      const auto [a, b] = detail::jordan_pair(j, blk.angles[j - 1]);
      detail::add_block(a_entries[j - 1], embed_single(a, j, n), offset);
      detail::add_block(b_entries[j - 1], embed_single(b, j, n), offset);
    }
  }
  std::vector<SparseMatrix> a(n, SparseMatrix(total, total));
  std::vector<SparseMatrix> b(n, SparseMatrix(total, total));
  for (std::uint32_t j = 0; j < n; ++j) {
    a[j].setFromTriplets(a_entries[j].begin(), a_entries[j].end());
    b[j].setFromTriplets(b_entries[j].begin(), b_entries[j].end());
  }
  // Weights summing to 1 within 1e-9 leave a matching norm defect.
  state.normalize();
  return Realization::dense(std::move(a), std::move(b), std::move(state));
}

struct ActualFidelities {
  /// |<psi_ref|psi>|^2 with each block's reference phase aligned.
  double state = 1.0;
  std::vector<double> a;
  std::vector<double> b;
};

/// Closed forms: state fidelity (sum_l p_l |c_0..0 - c_1..1| / sqrt(2))^2,
/// rotated-observable fidelity sum_l p_l cos(angle_l), fixed observable 1.
inline ActualFidelities actual_fidelities(const JordanBlockSpec& spec) {
  spec.validate();
  ActualFidelities f;
  double overlap = 0.0;
  const auto last = static_cast<Eigen::Index>((std::size_t{1} << spec.n) - 1);
  for (const auto& blk : spec.blocks) {
    overlap += blk.weight * std::abs(blk.amplitudes(0) - blk.amplitudes(last)) / std::numbers::sqrt2;
  }
  f.state = overlap * overlap;
  for (std::uint32_t j = 1; j <= spec.n; ++j) {
    double rotated = 0.0;
    for (const auto& blk : spec.blocks) rotated += blk.weight * std::cos(blk.angles[j - 1]);
    f.a.push_back(a_is_fixed(j) ? 1.0 : rotated);
    f.b.push_back(a_is_fixed(j) ? rotated : 1.0);
  }
  return f;
}

/// ||{A_i, B_i}|psi>|| for 1-based i.
inline double anticommutator_residual(const Realization& r, std::uint32_t i) {
  const auto& d = r.dense_data();
  if (i < 1 || i > r.n()) throw DomainError("anticommutator index " + std::to_string(i) + " out of range");
  const SparseMatrix& a = d.a[i - 1];
  const SparseMatrix& b = d.b[i - 1];
  const Vector v = a * (b * d.state) + b * (a * d.state);
  return v.norm();
}

inline constexpr double kRankTolerance = 1e-8;
inline constexpr double kPredicateTolerance = 1e-9;

struct InvariantSubspace {
  Matrix basis;  // orthonormal columns
  std::size_t dimension = 0;
  double residual = 0.0;
  std::vector<double> singular_values;
};

/// span{ B_S |psi> : S subset of {1..n} }, with the largest leakage
/// ||(1 - P) O P|| over all 2n observables.
inline InvariantSubspace invariant_subspace(const Realization& r) {
  const auto& d = r.dense_data();
  const std::uint32_t n = r.n();
  const auto dim = d.state.size();
  const std::size_t subsets = std::size_t{1} << n;
  if (static_cast<std::size_t>(dim) > kSpectralDimCap || subsets > kSpectralDimCap) {
    throw CapacityError("invariant_subspace: dimension " + std::to_string(dim) + " with n=" + std::to_string(n) +
                        " exceeds " + std::to_string(kSpectralDimCap));
  }
  Matrix candidates(dim, static_cast<Eigen::Index>(subsets));
  candidates.col(0) = d.state;
  for (std::size_t s = 1; s < subsets; ++s) {
    const auto low = static_cast<std::size_t>(std::countr_zero(s));
    candidates.col(static_cast<Eigen::Index>(s)) = d.b[low] * candidates.col(static_cast<Eigen::Index>(s & (s - 1)));
  }
  Eigen::BDCSVD<Matrix> svd(candidates, Eigen::ComputeThinU);
  InvariantSubspace out;
  const auto& sv = svd.singularValues();
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    out.singular_values.push_back(sv(k));
    if (sv(k) > kRankTolerance) ++out.dimension;
  }
  out.basis = svd.matrixU().leftCols(static_cast<Eigen::Index>(out.dimension));
  const Matrix& q = out.basis;
  auto leakage = [&](const SparseMatrix& o) {
    const Matrix oq = o * q;
    return operator_norm(Matrix(oq - q * (q.adjoint() * oq)));
  };
  for (std::uint32_t i = 0; i < n; ++i) {
    out.residual = std::max({out.residual, leakage(d.a[i]), leakage(d.b[i])});
  }
  return out;
}

struct Predicate {
  std::string name;
  bool holds = false;
  double residual = 0.0;
};

struct CanonicalFormReport {
  std::size_t dimension = 0;
  std::vector<Predicate> predicates;

  bool all_hold() const {
    return std::all_of(predicates.begin(), predicates.end(), [](const Predicate& p) { return p.holds; });
  }
  const Predicate& get(const std::string& name) const {
    for (const auto& p : predicates) {
      if (p.name == name) return p;
    }
    throw DomainError("no predicate named " + name);
  }
};

/// Checks, on V = span{B_S|psi>}, the conditions under which the projected
/// observables are unitarily equivalent to X_i, Z_j on 2^n dimensions.
inline CanonicalFormReport canonical_form_check(const Realization& r) {
  const auto& d = r.dense_data();
  const std::uint32_t n = r.n();
  const InvariantSubspace v = invariant_subspace(r);
  const Matrix& q = v.basis;
  std::vector<Matrix> a;
  std::vector<Matrix> b;
  for (std::uint32_t i = 0; i < n; ++i) {
    a.push_back(q.adjoint() * (d.a[i] * q));
    b.push_back(q.adjoint() * (d.b[i] * q));
  }
  const auto k = static_cast<Eigen::Index>(v.dimension);
  const Matrix id = Matrix::Identity(k, k);
  double involution = 0.0;
  double cross = 0.0;
  double anti = 0.0;
  double trace = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    involution = std::max({involution, operator_norm(Matrix(a[i] * a[i] - id)), operator_norm(Matrix(b[i] * b[i] - id))});
    anti = std::max(anti, operator_norm(Matrix(a[i] * b[i] + b[i] * a[i])));
    trace = std::max({trace, std::abs(a[i].trace()), std::abs(b[i].trace())});
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i == j) continue;
      cross = std::max({cross, operator_norm(Matrix(a[i] * a[j] - a[j] * a[i])),
                        operator_norm(Matrix(a[i] * b[j] - b[j] * a[i])),
                        operator_norm(Matrix(b[i] * b[j] - b[j] * b[i]))});
    }
  }
  const double expected_dim = std::ldexp(1.0, static_cast<int>(n));
  CanonicalFormReport rep;
  rep.dimension = v.dimension;
  auto add = [&](std::string name, double residual) {
    rep.predicates.push_back({std::move(name), residual <= kPredicateTolerance, residual});
  };
  add("invariant", v.residual);
  add("involution", involution);
  add("cross_commutation", cross);
  add("anticommutation", anti);
  add("dimension", std::abs(static_cast<double>(v.dimension) - expected_dim));
  add("traceless", trace);
  return rep;
}

/// Numerical slack when comparing an actual fidelity with its bound.
inline constexpr double kBoundSlack = 1e-12;

struct RobustnessReport {
  std::uint32_t n = 3;
  double epsilon = 0.0;
  FidelityBounds bounds;
  double fid_state_bound = 1.0;
  double fid_A_bound = 1.0;
  double fid_B_bound = 1.0;
  bool vacuous = false;
  std::optional<double> actual_fid_state;
  std::optional<std::vector<double>> actual_fid_A;
  std::optional<std::vector<double>> actual_fid_B;
  std::optional<std::vector<double>> anticommutator_residuals;
  /// Human-readable list of bounds the actual values fall below.
  std::vector<std::string> violations;
};

inline RobustnessReport certify_epsilon(std::uint32_t n, double eps) {
  RobustnessReport rep;
  rep.n = n;
  rep.epsilon = eps;
  rep.bounds = fidelity_bounds(n, eps);
  rep.fid_state_bound = 1.0 - rep.bounds.eps0;
  rep.fid_A_bound = 1.0 - rep.bounds.eps1;
  rep.fid_B_bound = 1.0 - rep.bounds.eps2;
  rep.vacuous = rep.fid_state_bound <= 0.0 || rep.fid_B_bound <= 0.0;
  return rep;
}

inline RobustnessReport certify(const Statistics& s) {
  return certify_epsilon(s.n, epsilon_from_statistics(s));
}

/// Anticommutator bound 4 sqrt(2 eps) for every pair.
inline void check_anticommutators(RobustnessReport& rep, const Realization& r) {
  std::vector<double> residuals;
  const double limit = 4.0 * std::sqrt(2.0 * rep.epsilon);
  for (std::uint32_t i = 1; i <= r.n(); ++i) {
    residuals.push_back(anticommutator_residual(r, i));
    if (residuals.back() > limit + kBoundSlack) {
      rep.violations.push_back("||{A" + std::to_string(i) + ",B" + std::to_string(i) + "}psi|| = " +
                               std::to_string(residuals.back()) + " > " + std::to_string(limit));
    }
  }
  rep.anticommutator_residuals = std::move(residuals);
}

/// Any realization: statistics are computed from it. Dense realizations also
/// get their anticommutator residuals checked.
inline RobustnessReport certify(const Inequality& ineq, const Realization& r) {
  RobustnessReport rep = certify(statistics_from_realization(ineq, r));
  if (!r.is_symbolic()) check_anticommutators(rep, r);
  return rep;
}

/// Block-form input: the realization is generated, its own correlators set
/// eps, and the known fidelities are compared with the bounds.
inline RobustnessReport certify(const JordanBlockSpec& spec) {
  const Realization r = jordan_realization(spec);
  RobustnessReport rep = certify(build(spec.n), r);
  const ActualFidelities f = actual_fidelities(spec);
  rep.actual_fid_state = f.state;
  rep.actual_fid_A = f.a;
  rep.actual_fid_B = f.b;
  if (f.state < rep.fid_state_bound - kBoundSlack) {
    rep.violations.push_back("state fidelity " + std::to_string(f.state) + " < " + std::to_string(rep.fid_state_bound));
  }
  for (std::uint32_t j = 1; j <= spec.n; ++j) {
    const double fixed = a_is_fixed(j) ? f.a[j - 1] : f.b[j - 1];
    const double rotated = a_is_fixed(j) ? f.b[j - 1] : f.a[j - 1];
    const std::string fixed_name = (a_is_fixed(j) ? "A" : "B") + std::to_string(j);
    const std::string rotated_name = (a_is_fixed(j) ? "B" : "A") + std::to_string(j);
    if (fixed < rep.fid_A_bound - kBoundSlack) {
      rep.violations.push_back("F(" + fixed_name + ") " + std::to_string(fixed) + " < " + std::to_string(rep.fid_A_bound));
    }
    if (rotated < rep.fid_B_bound - kBoundSlack) {
      rep.violations.push_back("F(" + rotated_name + ") " + std::to_string(rotated) + " < " +
                               std::to_string(rep.fid_B_bound));
    }
  }
  return rep;
}

/// Random block spec: 1..max_blocks blocks, angles uniform in [-s, s] where
/// s is max_angle times a per-spec scale in {1, 0.3, 0.1, 0.03, 0.01}, amplitudes a reference state plus complex
/// Gaussian noise of a randomly drawn scale (sometimes pure noise), with a
/// random global phase per block.
template <class Rng>
JordanBlockSpec random_jordan_spec(std::uint32_t n, std::size_t max_blocks, double max_angle, Rng& rng) {
  std::uniform_int_distribution<std::size_t> block_count(1, max_blocks);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  static constexpr double kNoiseScales[] = {0.0, 0.001, 0.003, 0.01, 0.03, 0.1, 0.3, -1.0};
  static constexpr double kAngleScales[] = {1.0, 0.3, 0.1, 0.03, 0.01};
  std::uniform_int_distribution<std::size_t> scale_pick(0, std::size(kNoiseScales) - 1);
  std::uniform_int_distribution<std::size_t> angle_pick(0, std::size(kAngleScales) - 1);

  JordanBlockSpec spec;
  spec.n = n;
  const std::size_t count = block_count(rng);
  const double angle_cap = max_angle * kAngleScales[angle_pick(rng)];
  const Vector reference = reference_block_state(n);
  double total = 0.0;
  for (std::size_t l = 0; l < count; ++l) {
    JordanBlock blk;
    blk.weight = 0.05 + unit(rng);
    total += blk.weight;
    for (std::uint32_t j = 0; j < n; ++j) blk.angles.push_back(angle_cap * angle(rng));
    const double scale = kNoiseScales[scale_pick(rng)];
    Vector noise(reference.size());
    for (Eigen::Index k = 0; k < noise.size(); ++k) noise(k) = Complex(gauss(rng), gauss(rng));
    blk.amplitudes = scale < 0.0 ? noise : Vector(reference + scale * noise);
    blk.amplitudes.normalize();
    blk.amplitudes *= std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
    spec.blocks.push_back(std::move(blk));
  }
  for (auto& blk : spec.blocks) blk.weight /= total;
  return spec;
}

struct ValidationSummary {
  std::uint32_t n = 3;
  std::size_t trials = 0;
  double max_angle = 0.0;
  std::uint64_t seed = 0;
  std::size_t state_violations = 0;
  std::size_t operator_violations = 0;
  std::size_t anticommutator_violations = 0;
  std::size_t vacuous = 0;
  double max_epsilon = 0.0;
  /// Smallest (actual - bound) seen; negative means a violation.
  double min_state_margin = 0.0;
  double min_operator_margin = 0.0;
  double min_anticommutator_margin = 0.0;

  std::size_t violations() const { return state_violations + operator_violations + anticommutator_violations; }
};

struct TrialOutcome {
  double epsilon = 0.0;
  double state_margin = 0.0;
  double operator_margin = 0.0;
  double anticommutator_margin = 0.0;
  bool vacuous = false;
};

inline TrialOutcome run_trial(const JordanBlockSpec& spec) {
  const RobustnessReport rep = certify(spec);
  TrialOutcome out;
  out.epsilon = rep.epsilon;
  out.vacuous = rep.vacuous;
  out.state_margin = *rep.actual_fid_state - rep.fid_state_bound;
  out.operator_margin = std::numeric_limits<double>::infinity();
  for (std::uint32_t j = 1; j <= spec.n; ++j) {
    const double fixed = a_is_fixed(j) ? (*rep.actual_fid_A)[j - 1] : (*rep.actual_fid_B)[j - 1];
    const double rotated = a_is_fixed(j) ? (*rep.actual_fid_B)[j - 1] : (*rep.actual_fid_A)[j - 1];
    out.operator_margin = std::min({out.operator_margin, fixed - rep.fid_A_bound, rotated - rep.fid_B_bound});
  }
  const double limit = 4.0 * std::sqrt(2.0 * rep.epsilon);
  out.anticommutator_margin = std::numeric_limits<double>::infinity();
  for (double r : *rep.anticommutator_residuals) out.anticommutator_margin = std::min(out.anticommutator_margin, limit - r);
  return out;
}

/// Seeded Monte-Carlo check of the fidelity and anticommutator bounds on
/// random block specs. Specs are drawn sequentially from one generator, so
/// the result does not depend on `jobs`.
inline ValidationSummary validate_robustness(std::uint32_t n, std::size_t trials, double max_angle,
                                             std::uint64_t seed, unsigned jobs = 1, std::size_t max_blocks = 8) {
  require_family_size(n, "validate_robustness");
  if (!(max_angle >= 0.0 && max_angle <= std::numbers::pi / 2)) {
    throw DomainError("max-angle must lie in [0, pi/2]");
  }
  std::mt19937_64 rng(seed);
  std::vector<JordanBlockSpec> specs;
  specs.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) specs.push_back(random_jordan_spec(n, max_blocks, max_angle, rng));

  std::vector<TrialOutcome> outcomes(trials);
  jobs = std::max(1U, std::min<unsigned>(jobs, 64));
  if (jobs == 1) {
    for (std::size_t t = 0; t < trials; ++t) outcomes[t] = run_trial(specs[t]);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t t = w; t < trials; t += jobs) outcomes[t] = run_trial(specs[t]);
      });
    }
    for (auto& th : workers) th.join();
  }

  ValidationSummary s;
  s.n = n;
  s.trials = trials;
  s.max_angle = max_angle;
  s.seed = seed;
  if (trials == 0) return s;
  s.min_state_margin = s.min_operator_margin = s.min_anticommutator_margin = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    s.max_epsilon = std::max(s.max_epsilon, o.epsilon);
    s.vacuous += o.vacuous ? 1 : 0;
    s.min_state_margin = std::min(s.min_state_margin, o.state_margin);
    s.min_operator_margin = std::min(s.min_operator_margin, o.operator_margin);
    s.min_anticommutator_margin = std::min(s.min_anticommutator_margin, o.anticommutator_margin);
    s.state_violations += o.state_margin < -kBoundSlack ? 1 : 0;
    s.operator_violations += o.operator_margin < -kBoundSlack ? 1 : 0;
    s.anticommutator_violations += o.anticommutator_margin < -kBoundSlack ? 1 : 0;
  }
  return s;
}

}  // namespace ncineq
