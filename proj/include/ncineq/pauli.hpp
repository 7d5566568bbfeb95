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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ncineq/dense.hpp"
#include "ncineq/errors.hpp"

namespace ncineq {

enum class PauliKind : std::uint8_t { I, X, Y, Z };

/// An n-qubit Pauli operator i^k * X^x * Z^z in binary symplectic form.
///
/// The per-qubit factor is X^{x_q} Z^{z_q}, so Y = i X Z is stored as
/// x = z = 1 together with one unit of phase. Bits are packed 64 qubits per
/// word. Qubit indices on the accessors are 0-based; `embed` takes the
/// 1-based site numbering used for observables.
class PauliString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  PauliString() = default;

  /// Identity on n qubits.
  explicit PauliString(std::size_t n)
      : n_(n), x_(word_count(n), 0), z_(word_count(n), 0) {}

  static PauliString identity(std::size_t n) { return PauliString(n); }

  /// Parses "[+|-|+i|-i]" followed by characters from {I,X,Y,Z}.
  static PauliString from_literal(std::string_view text);

  std::size_t size() const noexcept { return n_; }

  /// Exponent k in i^k of the symplectic form (not the printed sign).
  unsigned phase_exp() const noexcept { return phase_; }

  bool x(std::size_t q) const { return (x_[q / kWordBits] >> (q % kWordBits)) & 1U; }
  bool z(std::size_t q) const { return (z_[q / kWordBits] >> (q % kWordBits)) & 1U; }

  PauliKind kind(std::size_t q) const {
    const bool xb = x(q);
    const bool zb = z(q);
    if (xb && zb) return PauliKind::Y;
    if (xb) return PauliKind::X;
    if (zb) return PauliKind::Z;
    return PauliKind::I;
  }

  /// Overwrites qubit q with a Hermitian single-qubit factor, keeping the
  /// printed sign of the string unchanged.
  void set(std::size_t q, PauliKind k) {
    const bool was_y = kind(q) == PauliKind::Y;
    const bool is_y = k == PauliKind::Y;
    const Word mask = Word{1} << (q % kWordBits);
    Word& xw = x_[q / kWordBits];
    Word& zw = z_[q / kWordBits];
    xw &= ~mask;
    zw &= ~mask;
    if (k == PauliKind::X || is_y) xw |= mask;
    if (k == PauliKind::Z || is_y) zw |= mask;
    phase_ = (phase_ + (is_y ? 1U : 0U) + (was_y ? 3U : 0U)) & 3U;
  }

  /// Multiplies the global scalar by i^k.
  void mul_phase(unsigned k) noexcept { phase_ = (phase_ + k) & 3U; }

  const std::vector<Word>& x_words() const noexcept { return x_; }
  const std::vector<Word>& z_words() const noexcept { return z_; }

  std::size_t y_count() const noexcept {
    std::size_t c = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) c += std::popcount(x_[w] & z_[w]);
    return c;
  }

  std::size_t weight() const noexcept {
    std::size_t c = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) c += std::popcount(x_[w] | z_[w]);
    return c;
  }

  /// True when every bit is zero; the phase is not inspected.
  bool is_identity() const noexcept {
    for (std::size_t w = 0; w < x_.size(); ++w) {
      if (x_[w] | z_[w]) return false;
    }
    return true;
  }

  bool is_hermitian() const noexcept { return ((phase_ + y_count()) & 1U) == 0; }

  /// Printed scalar: the operator equals i^printed_phase times the tensor
  /// product of the I/X/Y/Z characters of `to_literal`.
  unsigned printed_phase() const noexcept {
    return static_cast<unsigned>((phase_ + 4 - (y_count() & 3U)) & 3U);
  }

  std::string to_literal() const;

  /// In-place right multiplication: *this = *this * rhs.
  PauliString& operator*=(const PauliString& rhs) {
    if (rhs.n_ != n_) {
      throw DimensionError("pauli multiply: " + std::to_string(n_) + " vs " +
                           std::to_string(rhs.n_) + " qubits");
    }
    // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}
    std::size_t sign_flips = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
      sign_flips += std::popcount(z_[w] & rhs.x_[w]);
      x_[w] ^= rhs.x_[w];
      z_[w] ^= rhs.z_[w];
    }
    phase_ = static_cast<unsigned>((phase_ + rhs.phase_ + 2 * (sign_flips & 1U)) & 3U);
    return *this;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  static std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

  std::size_t n_ = 0;
  unsigned phase_ = 0;
  std::vector<Word> x_;
  std::vector<Word> z_;
};

inline PauliString multiply(const PauliString& p, const PauliString& q) {
  PauliString r = p;
  r *= q;
  return r;
}

inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

/// Symplectic inner product test: x_p.z_q + z_p.x_q == 0 (mod 2).
inline bool commutes(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw DimensionError("commutes: " + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()) + " qubits");
  }
  const auto& px = p.x_words();
  const auto& pz = p.z_words();
  const auto& qx = q.x_words();
  const auto& qz = q.z_words();
  std::size_t c = 0;
  for (std::size_t w = 0; w < px.size(); ++w) {
    c += std::popcount((px[w] & qz[w]) ^ (pz[w] & qx[w]));
  }
  return (c & 1U) == 0;
}

/// Single-site operator `kind` on 1-based `site` of an n-qubit register.
inline PauliString embed(PauliKind kind, std::size_t site, std::size_t n) {
  if (n == 0 || site < 1 || site > n) {
    throw DomainError("embed: site " + std::to_string(site) + " outside 1.." +
                      std::to_string(n));
  }
  PauliString p(n);
  p.set(site - 1, kind);
  return p;
}

/// Explicit 2^n x 2^n matrix; qubit 1 is the least significant index bit.
inline Matrix to_dense(const PauliString& p) {
  require_dense_qubits(p.size(), "to_dense");
  const std::size_t n = p.size();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t xm = n ? static_cast<std::size_t>(p.x_words()[0]) : 0;
  const std::size_t zm = n ? static_cast<std::size_t>(p.z_words()[0]) : 0;
  static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const unsigned k = p.phase_exp() + 2U * (std::popcount(zm & col) & 1U);
    m(static_cast<Eigen::Index>(col ^ xm), static_cast<Eigen::Index>(col)) = kPowers[k & 3U];
  }
  return m;
}

/// Sparse form of `to_dense`: one nonzero per column.
inline SparseMatrix to_sparse(const PauliString& p) {
  require_dense_qubits(p.size(), "to_sparse");
  const std::size_t n = p.size();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t xm = n ? static_cast<std::size_t>(p.x_words()[0]) : 0;
  const std::size_t zm = n ? static_cast<std::size_t>(p.z_words()[0]) : 0;
  static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const unsigned k = p.phase_exp() + 2U * (std::popcount(zm & col) & 1U);
    entries.emplace_back(static_cast<Eigen::Index>(col ^ xm), static_cast<Eigen::Index>(col), kPowers[k & 3U]);
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

inline PauliString PauliString::from_literal(std::string_view text) {
  unsigned sign = 0;
  if (text.starts_with("+i")) {
    sign = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    sign = 3;
    text.remove_prefix(2);
  } else if (text.starts_with('+')) {
    text.remove_prefix(1);
  } else if (text.starts_with('-')) {
    sign = 2;
    text.remove_prefix(1);
  }
  if (text.empty()) throw DomainError("pauli literal: no qubits");
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I':
      case '_': break;
      case 'X': p.set(q, PauliKind::X); break;
      case 'Y': p.set(q, PauliKind::Y); break;
      case 'Z': p.set(q, PauliKind::Z); break;
      default:
        throw DomainError(std::string("pauli literal: unexpected character '") + text[q] + "'");
    }
  }
  p.mul_phase(sign);
  return p;
}

inline std::string PauliString::to_literal() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[printed_phase()];
  out.reserve(out.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) out.push_back("IXYZ"[static_cast<int>(kind(q))]);
  return out;
}

}  // namespace ncineq
