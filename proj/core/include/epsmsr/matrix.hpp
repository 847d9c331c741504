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

#include <cstddef>
#include <span>
#include <vector>

#include "epsmsr/prime_field.hpp"

namespace epsmsr {

// Dense row-major matrix over GF(q).
class FieldMatrix {
 public:
  FieldMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols);
  FieldMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols,
              std::vector<FieldElement> entries);

  static FieldMatrix identity(const FieldSpec& field, std::size_t size);
  // Single column holding `values`.
  static FieldMatrix column(const FieldSpec& field, std::span<const FieldElement> values);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const FieldElement> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::span<FieldElement> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  const std::vector<FieldElement>& entries() const noexcept { return entries_; }

  bool is_zero() const noexcept;

  FieldMatrix operator+(const FieldMatrix& rhs) const;
  FieldMatrix operator-(const FieldMatrix& rhs) const;
  FieldMatrix operator*(const FieldMatrix& rhs) const;
  FieldMatrix scaled(FieldElement factor) const;
  FieldMatrix transposed() const;

  // y = M x.
  std::vector<FieldElement> apply(std::span<const FieldElement> x) const;

  FieldMatrix select_rows(std::span<const std::size_t> rows) const;
  FieldMatrix select_cols(std::span<const std::size_t> cols) const;
  // Copies `block` into this matrix with its top-left corner at (r, c).
  void set_block(std::size_t r, std::size_t c, const FieldMatrix& block);
  FieldMatrix block(std::size_t r, std::size_t c, std::size_t rows, std::size_t cols) const;

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  void require_same_shape(const FieldMatrix& rhs, const char* op) const;

  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

// Vertical concatenation; all parts share a column count.
FieldMatrix mat_stack(std::span<const FieldMatrix> parts);
// Horizontal concatenation; all parts share a row count.
FieldMatrix mat_hcat(std::span<const FieldMatrix> parts);

std::size_t rank(const FieldMatrix& m);
FieldElement det(const FieldMatrix& m);
// Throws SingularMatrixError.
FieldMatrix invert(const FieldMatrix& m);
// Solves m * x = rhs. `m` may be rectangular as long as it has full column
// rank and the system is consistent; throws SingularMatrixError when the
// solution is not unique and NoSolutionError when none exists.
FieldMatrix solve(const FieldMatrix& m, const FieldMatrix& rhs);

// Cross-check oracle for block Vandermonde determinants: builds
// V = (B_j^i) for i, j < blocks.size() and compares det(V) against
// prod_{i<j} det(B_j - B_i). Blocks must be square, equally sized and
// pairwise commuting (ParameterError otherwise).
bool block_vandermonde_det_check(std::span<const FieldMatrix> blocks);

// The block Vandermonde matrix itself, row i holding B_j^i.
FieldMatrix block_vandermonde(std::span<const FieldMatrix> blocks);

}  // namespace epsmsr
