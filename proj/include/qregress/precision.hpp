// Copyright 2026 The qregress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREGRESS_PRECISION_HPP
#define QREGRESS_PRECISION_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qregress/error.hpp"
#include "qregress/regression.hpp"

namespace qregress {

/// Binary assignment, one entry per QUBO variable, each 0 or 1. Variables
/// are laid out weight-major: all K bits of w_0, then all K bits of w_1, ...
using BitVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

template <typename Scalar>
bool is_signed_power_of_two(Scalar value) {
  if (!std::isfinite(value) || value == Scalar(0)) return false;
  int exponent = 0;
  return std::frexp(std::abs(value), &exponent) == Scalar(0.5);
}

/// Sorted list of K signed powers of two. Subset sums of the entries are the
/// values a single encoded weight can take.
template <typename Scalar>
class BasicPrecisionVector {
 public:
  using Vector = VectorX<Scalar>;

  /// Rejects unsorted, duplicate or non-finite entries. Entries must be
  /// signed powers of two unless `allow_any` is set.
  explicit BasicPrecisionVector(Vector entries, bool allow_any = false)
      : p_(std::move(entries)) {
    require(p_.size() >= 1, "precision vector must have at least one entry");
    for (Eigen::Index k = 0; k < p_.size(); ++k) {
      require(std::isfinite(p_(k)), "precision vector entries must be finite");
      require(p_(k) != Scalar(0), "precision vector entries must be nonzero");
      if (!allow_any)
        require(is_signed_power_of_two(p_(k)),
                "precision entry " + std::to_string(p_(k)) +
                    " is not a signed power of two");
      if (k > 0)
        require(p_(k - 1) < p_(k),
                "precision vector must be sorted strictly ascending");
    }
  }

  BasicPrecisionVector(std::initializer_list<Scalar> entries, bool allow_any = false)
      : BasicPrecisionVector(from_list(entries), allow_any) {}

  const Vector& values() const { return p_; }
  Eigen::Index size() const { return p_.size(); }
  Scalar operator[](Eigen::Index k) const { return p_(k); }

 private:
  static Vector from_list(std::initializer_list<Scalar> entries) {
    Vector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (Scalar e : entries) v(i++) = e;
    return v;
  }

  Vector p_;
};

using PrecisionVector = BasicPrecisionVector<double>;

/// I_{d+1} (x) P^T, the (d+1) x K(d+1) map from bits to weights.
template <typename Scalar>
MatrixX<Scalar> precision_matrix(const BasicPrecisionVector<Scalar>& p,
                                 Eigen::Index d_plus_1) {
  require(d_plus_1 >= 1, "precision matrix needs d+1 >= 1");
  const Eigen::Index k = p.size();
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(d_plus_1, d_plus_1 * k);
  for (Eigen::Index i = 0; i < d_plus_1; ++i)
    out.block(i, i * k, 1, k) = p.values().transpose();
  return out;
}

/// w_i = sum_k p_k * bits[i*K + k].
template <typename Scalar>
VectorX<Scalar> decode(const BasicPrecisionVector<Scalar>& p, const BitVector& bits) {
  const Eigen::Index k = p.size();
  require(bits.size() > 0 && bits.size() % k == 0,
          "bit vector length " + std::to_string(bits.size()) +
              " is not a positive multiple of K=" + std::to_string(k));
  VectorX<Scalar> w(bits.size() / k);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    Scalar acc(0);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto bit = bits(i * k + j);
      require(bit <= 1, "bit vector entries must be 0 or 1");
      if (bit) acc += p[j];
    }
    w(i) = acc;
  }
  return w;
}

/// Largest K accepted by the subset enumerations below.
inline constexpr Eigen::Index kMaxEnumeratedPrecision = 20;

/// Every value a single weight can take: { sum_k p_k s_k : s in {0,1}^K }.
/// Fewer than 2^K distinct values when signed entries cancel.
template <typename Scalar>
std::set<Scalar> enumerate_representable(const BasicPrecisionVector<Scalar>& p) {
  if (p.size() > kMaxEnumeratedPrecision)
    throw SizeGuardError("cannot enumerate 2^" + std::to_string(p.size()) +
                         " subsets; K is capped at " +
                         std::to_string(kMaxEnumeratedPrecision));
  std::set<Scalar> values;
  const std::uint64_t count = std::uint64_t{1} << p.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Scalar acc(0);
    for (Eigen::Index j = 0; j < p.size(); ++j)
      if (mask >> j & 1u) acc += p[j];
    values.insert(acc);
  }
  return values;
}

/// Bits selecting `value` from P, choosing the lexicographically smallest
/// pattern (first entry most significant) when several exist. Empty when
/// the value is not representable.
template <typename Scalar>
std::optional<std::vector<std::uint8_t>> encode_weight(const BasicPrecisionVector<Scalar>& p,
                                                       Scalar value) {
  if (p.size() > kMaxEnumeratedPrecision)
    throw SizeGuardError("cannot encode with K=" + std::to_string(p.size()));
  const Eigen::Index k = p.size();
  const std::uint64_t count = std::uint64_t{1} << k;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(k));
    Scalar acc(0);
    for (Eigen::Index j = 0; j < k; ++j) {
      bits[static_cast<std::size_t>(j)] = code >> (k - 1 - j) & 1u;
      if (bits[static_cast<std::size_t>(j)]) acc += p[j];
    }
    if (acc == value) return bits;
  }
  return std::nullopt;
}

/// Inverse of decode() for representable weight vectors.
template <typename Scalar, typename Derived>
BitVector encode(const BasicPrecisionVector<Scalar>& p, const Eigen::MatrixBase<Derived>& w) {
  const Eigen::Index k = p.size();
  BitVector bits(w.size() * k);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const auto pattern = encode_weight(p, Scalar(w(i)));
    require(pattern.has_value(), "weight " + std::to_string(w(i)) +
                                     " is not representable by the precision vector");
    for (Eigen::Index j = 0; j < k; ++j) bits(i * k + j) = (*pattern)[static_cast<std::size_t>(j)];
  }
  return bits;
}

}  // namespace qregress

#endif  // QREGRESS_PRECISION_HPP
