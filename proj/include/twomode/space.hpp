// Copyright 2026 The twomode Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWOMODE_SPACE_HPP
#define TWOMODE_SPACE_HPP

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "twomode/linalg.hpp"

namespace twomode {

/// Factor positions in the fixed ordering [atom1, atom2, mode1, mode2].
enum Factor : int { kAtom1 = 0, kAtom2 = 1, kMode1 = 2, kMode2 = 3 };

/// Atomic single-qubit basis: |e> is index 0, |g> is index 1, so the
/// two-atom product basis is {ee, eg, ge, gg} in row-major order.
inline constexpr Index kExcited = 0;
inline constexpr Index kGround = 1;

/// Truncated tensor-product space with row-major flat indexing over the
/// ordered factors (the last factor varies fastest).
class CompositeSpace {
 public:
  CompositeSpace() = default;

  explicit CompositeSpace(std::vector<Index> factor_dims, Index max_total = kMaxTotalDim)
      : dims_(std::move(factor_dims)) {
    if (dims_.empty()) throw BadFactor("CompositeSpace: no factors");
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
      if (dims_[k] < 1) throw BadFactor("CompositeSpace: factor dimensions must be positive");
      strides_[k] = total_;
      total_ *= dims_[k];
      if (total_ > max_total) {
        throw TruncationTooLarge("CompositeSpace: total dimension exceeds " + std::to_string(max_total));
      }
    }
  }

  /// [2, 2, n_max+1, n_max+1]
  static CompositeSpace two_atoms_two_modes(int n_max) {
    return CompositeSpace({2, 2, n_max + 1, n_max + 1});
  }
  /// [2, 2, n_max+1]
  static CompositeSpace two_atoms_one_mode(int n_max) { return CompositeSpace({2, 2, n_max + 1}); }

  const std::vector<Index>& factor_dims() const { return dims_; }
  Index factor_dim(int k) const {
    check_factor(k);
    return dims_[static_cast<std::size_t>(k)];
  }
  Index stride(int k) const {
    check_factor(k);
    return strides_[static_cast<std::size_t>(k)];
  }
  int num_factors() const { return static_cast<int>(dims_.size()); }
  Index total_dim() const { return total_; }

  /// Field cutoff when the trailing factors are modes; -1 for pure atom spaces.
  int n_max() const { return num_factors() > 2 ? static_cast<int>(dims_.back()) - 1 : -1; }

  std::vector<Index> unflatten(Index flat) const {
    if (flat < 0 || flat >= total_) throw BadFactor("unflatten: flat index out of range");
    std::vector<Index> multi(dims_.size());
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      multi[k] = flat / strides_[k];
      flat %= strides_[k];
    }
    return multi;
  }

  Index flatten(std::span<const Index> multi) const {
    if (multi.size() != dims_.size()) throw BadFactor("flatten: wrong number of indices");
    Index flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (multi[k] < 0 || multi[k] >= dims_[k]) throw BadFactor("flatten: index out of range");
      flat += multi[k] * strides_[k];
    }
    return flat;
  }

  Index flatten(std::initializer_list<Index> multi) const {
    return flatten(std::span<const Index>(multi.begin(), multi.size()));
  }

  /// Digit of factor k in a flat index.
  Index digit(Index flat, int k) const {
    return (flat / strides_[static_cast<std::size_t>(k)]) % dims_[static_cast<std::size_t>(k)];
  }

  /// Sorted, de-duplicated, validated factor list.
  std::vector<int> normalize_factors(std::span<const int> factors) const {
    std::vector<int> out(factors.begin(), factors.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int f : out) check_factor(f);
    return out;
  }

  std::vector<int> complement(std::span<const int> factors) const {
    const auto keep = normalize_factors(factors);
    std::vector<int> out;
    for (int k = 0; k < num_factors(); ++k)
      if (!std::binary_search(keep.begin(), keep.end(), k)) out.push_back(k);
    return out;
  }

  CompositeSpace subspace(std::span<const int> keep) const {
    const auto sorted = normalize_factors(keep);
    if (sorted.empty()) throw BadFactor("subspace: keep set is empty");
    std::vector<Index> dims;
    for (int k : sorted) dims.push_back(dims_[static_cast<std::size_t>(k)]);
    return CompositeSpace(std::move(dims));
  }

  /// Flat-index offsets contributed by the listed factors, enumerated in
  /// row-major order of those factors.
  std::vector<Index> offsets(std::span<const int> factors) const {
    std::vector<Index> out{0};
    for (int f : factors) {
      check_factor(f);
      std::vector<Index> next;
      next.reserve(out.size() * static_cast<std::size_t>(dims_[static_cast<std::size_t>(f)]));
      for (Index base : out)
        for (Index d = 0; d < dims_[static_cast<std::size_t>(f)]; ++d)
          next.push_back(base + d * strides_[static_cast<std::size_t>(f)]);
      out = std::move(next);
    }
    return out;
  }

  bool operator==(const CompositeSpace& other) const { return dims_ == other.dims_; }

  std::string describe() const {
    std::string s = "[";
    for (std::size_t k = 0; k < dims_.size(); ++k) s += (k ? "," : "") + std::to_string(dims_[k]);
    return s + "]";
  }

 private:
  void check_factor(int k) const {
    if (k < 0 || k >= num_factors()) {
      throw BadFactor("factor index " + std::to_string(k) + " invalid for space " + describe());
    }
  }

  std::vector<Index> dims_;
  std::vector<Index> strides_;
  Index total_ = 0;
};

}  // namespace twomode

#endif  // TWOMODE_SPACE_HPP
