/*
 * Copyright 2026 The epsmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "epsmsr/group_algebra.hpp"
#include "epsmsr/matrix.hpp"
#include "epsmsr/prime_field.hpp"

namespace epsmsr {

using Fraction = boost::rational<std::int64_t>;

// Smallest integer >= f (f must be non-negative).
std::int64_t ceil_fraction(const Fraction& f);

// One node's stored vector.
using NodeShard = std::vector<FieldElement>;

struct Codeword {
  std::vector<NodeShard> nodes;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

// MDS array code over G = Z_m^t whose parity-check matrix has block (i, j)
// equal to (alpha_j x_{a_j})^i, i < r, where a_j = e_{assignment[j]}.
//
// Nodes are 0-based: node j uses evaluation point alpha^j. Nodes [0, k) are
// systematic.
class ArrayCode {
 public:
  // Throws ParameterError unless 1 <= k < n, every assignment entry is a
  // coordinate of the group, n <= q - 1, and the field keeps
  // alpha_i x_{a_i} - alpha_j x_{a_j} invertible (root condition for m).
  ArrayCode(std::size_t n, std::size_t k, GroupShape shape, std::vector<std::uint32_t> assignment,
            FieldSpec field);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t r() const noexcept { return n_ - k_; }
  std::size_t ell() const noexcept { return shape_.order(); }
  const GroupShape& shape() const noexcept { return shape_; }
  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<std::uint32_t>& assignment() const noexcept { return assignment_; }
  FieldElement alpha(std::size_t node) const { return alphas_.at(node); }

  // alpha_j x_{a_j}.
  AlgebraElement node_element(std::size_t node) const;

  FieldMatrix parity_block(std::size_t block_row, std::size_t node) const;
  // r*ell x n*ell.
  FieldMatrix parity_check() const;

  // Every r x r block submatrix of the parity-check matrix is invertible.
  bool verify_mds() const;

  Codeword encode(std::span<const FieldElement> message) const;
  bool is_codeword(const Codeword& word) const;
  // For a word that fails the parity check because of one corrupted node,
  // the index of that node: the unique j such that the other n - 1 nodes are
  // consistent. Needs r >= 2 to be conclusive; nullopt otherwise.
  std::optional<std::size_t> locate_single_error(const Codeword& word) const;

  // Fills the missing nodes. Throws UnrecoverableError with more than r gaps.
  Codeword erase_decode(std::span<const std::optional<NodeShard>> nodes) const;

 private:
  struct Cache;

  void check_word_shape(const Codeword& word) const;
  const FieldMatrix& parity_encoder() const;

  std::size_t n_;
  std::size_t k_;
  GroupShape shape_;
  std::vector<std::uint32_t> assignment_;
  FieldSpec field_;
  std::vector<FieldElement> alphas_;
  std::shared_ptr<Cache> cache_;
};

// Applies x_shift to a node vector: out[g] = in[g + shift].
NodeShard shift_symbols(const GroupShape& shape, std::span<const FieldElement> in,
                        GroupIndex shift);

}  // namespace epsmsr
