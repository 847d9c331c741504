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

#include "epsmsr/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr {

namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

struct Echelon {
  std::vector<std::size_t> pivots;
  bool odd_swaps = false;
};

// Row reduction over the first `pivot_cols` columns. With `full_reduce` the
// result is reduced row echelon form (unit pivots, cleared above and below);
// otherwise plain echelon form, which keeps the determinant recoverable from
// the diagonal.
Echelon reduce(FieldMatrix& m, std::size_t pivot_cols, bool full_reduce) {
  const FieldSpec& f = m.field();
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).value == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      auto a = m.row(p);
      auto b = m.row(row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      out.odd_swaps = !out.odd_swaps;
    }
    const FieldElement inv = f.inv(m(row, col));
    auto pivot_row = m.row(row);
    if (full_reduce) {
      for (auto& v : pivot_row) v = f.mul(v, inv);
    }
    for (std::size_t r = full_reduce ? 0 : row + 1; r < m.rows(); ++r) {
      if (r == row || m(r, col).value == 0) continue;
      const FieldElement factor = full_reduce ? m(r, col) : f.mul(m(r, col), inv);
      auto target = m.row(r);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (pivot_row[c].value != 0) {
          target[c] = f.sub(target[c], f.mul(factor, pivot_row[c]));
        }
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

}  // namespace

FieldMatrix::FieldMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols) {}

FieldMatrix::FieldMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols,
                         std::vector<FieldElement> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw ParameterError("matrix entry count " + std::to_string(entries_.size()) +
                         " does not match shape " + shape(rows, cols));
  }
  for (auto& e : entries_) {
    if (e.value >= field_.modulus()) e = field_.element(e.value);
  }
}

FieldMatrix FieldMatrix::identity(const FieldSpec& field, std::size_t size) {
  FieldMatrix m(field, size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = field.one();
  return m;
}

FieldMatrix FieldMatrix::column(const FieldSpec& field, std::span<const FieldElement> values) {
  return FieldMatrix(field, values.size(), 1, {values.begin(), values.end()});
}

bool FieldMatrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](FieldElement e) { return e.value == 0; });
}

void FieldMatrix::require_same_shape(const FieldMatrix& rhs, const char* op) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_)) {
    throw ParameterError(std::string("matrix ") + op + ": shape mismatch " + shape(rows_, cols_) +
                         " vs " + shape(rhs.rows_, rhs.cols_));
  }
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& rhs) const {
  require_same_shape(rhs, "add");
  FieldMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = field_.add(entries_[i], rhs.entries_[i]);
  }
  return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& rhs) const {
  require_same_shape(rhs, "sub");
  FieldMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = field_.sub(entries_[i], rhs.entries_[i]);
  }
  return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_ || !(field_ == rhs.field_)) {
    throw ParameterError("matrix mul: cannot multiply " + shape(rows_, cols_) + " by " +
                         shape(rhs.rows_, rhs.cols_));
  }
  const std::uint64_t q = field_.modulus();
  FieldMatrix out(field_, rows_, rhs.cols_);
  std::vector<std::uint64_t> acc(rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = entries_[i * cols_ + k].value;
      if (a == 0) continue;
      const FieldElement* b = rhs.entries_.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        acc[j] = (acc[j] + a * b[j].value) % q;
      }
    }
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      out.entries_[i * rhs.cols_ + j] = {static_cast<std::uint32_t>(acc[j])};
    }
  }
  return out;
}

FieldMatrix FieldMatrix::scaled(FieldElement factor) const {
  FieldMatrix out(field_, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = field_.mul(entries_[i], factor);
  }
  return out;
}

FieldMatrix FieldMatrix::transposed() const {
  FieldMatrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

std::vector<FieldElement> FieldMatrix::apply(std::span<const FieldElement> x) const {
  if (x.size() != cols_) {
    throw ParameterError("matrix apply: vector length " + std::to_string(x.size()) +
                         " does not match " + shape(rows_, cols_));
  }
  const std::uint64_t q = field_.modulus();
  std::vector<FieldElement> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const FieldElement* row_ptr = entries_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>(row_ptr[c].value) * x[c].value) % q;
    }
    y[r] = {static_cast<std::uint32_t>(acc)};
  }
  return y;
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> rows) const {
  FieldMatrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= rows_) throw ParameterError("select_rows: row index out of range");
    auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

FieldMatrix FieldMatrix::select_cols(std::span<const std::size_t> cols) const {
  for (std::size_t c : cols) {
    if (c >= cols_) throw ParameterError("select_cols: column index out of range");
  }
  FieldMatrix out(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) out(r, i) = (*this)(r, cols[i]);
  }
  return out;
}

void FieldMatrix::set_block(std::size_t r, std::size_t c, const FieldMatrix& block) {
  if (r + block.rows_ > rows_ || c + block.cols_ > cols_) {
    throw ParameterError("set_block: " + shape(block.rows_, block.cols_) + " block at (" +
                         std::to_string(r) + "," + std::to_string(c) + ") exceeds " +
                         shape(rows_, cols_));
  }
  for (std::size_t i = 0; i < block.rows_; ++i) {
    auto src = block.row(i);
    std::copy(src.begin(), src.end(), entries_.begin() + (r + i) * cols_ + c);
  }
}

FieldMatrix FieldMatrix::block(std::size_t r, std::size_t c, std::size_t rows,
                               std::size_t cols) const {
  if (r + rows > rows_ || c + cols > cols_) {
    throw ParameterError("block: range exceeds " + shape(rows_, cols_));
  }
  FieldMatrix out(field_, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(r + i, c + j);
  }
  return out;
}

FieldMatrix mat_stack(std::span<const FieldMatrix> parts) {
  if (parts.empty()) throw ParameterError("mat_stack: no parts");
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != parts.front().cols() || !(p.field() == parts.front().field())) {
      throw ParameterError("mat_stack: column count mismatch");
    }
    rows += p.rows();
  }
  FieldMatrix out(parts.front().field(), rows, parts.front().cols());
  std::size_t at = 0;
  for (const auto& p : parts) {
    out.set_block(at, 0, p);
    at += p.rows();
  }
  return out;
}

FieldMatrix mat_hcat(std::span<const FieldMatrix> parts) {
  if (parts.empty()) throw ParameterError("mat_hcat: no parts");
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != parts.front().rows() || !(p.field() == parts.front().field())) {
      throw ParameterError("mat_hcat: row count mismatch");
    }
    cols += p.cols();
  }
  FieldMatrix out(parts.front().field(), parts.front().rows(), cols);
  std::size_t at = 0;
  for (const auto& p : parts) {
    out.set_block(0, at, p);
    at += p.cols();
  }
  return out;
}

std::size_t rank(const FieldMatrix& m) {
  FieldMatrix work = m;
  return reduce(work, work.cols(), false).pivots.size();
}

FieldElement det(const FieldMatrix& m) {
  if (!m.is_square()) throw ParameterError("det: matrix is " + shape(m.rows(), m.cols()));
  const FieldSpec& f = m.field();
  FieldMatrix work = m;
  const Echelon e = reduce(work, work.cols(), false);
  if (e.pivots.size() < m.rows()) return f.zero();
  FieldElement d = f.one();
  for (std::size_t i = 0; i < m.rows(); ++i) d = f.mul(d, work(i, i));
  return e.odd_swaps ? f.neg(d) : d;
}

FieldMatrix invert(const FieldMatrix& m) {
  if (!m.is_square()) throw ParameterError("invert: matrix is " + shape(m.rows(), m.cols()));
  const std::size_t n = m.rows();
  FieldMatrix aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, FieldMatrix::identity(m.field(), n));
  if (reduce(aug, n, true).pivots.size() < n) {
    throw SingularMatrixError("invert: " + shape(n, n) + " matrix is singular");
  }
  return aug.block(0, n, n, n);
}

FieldMatrix solve(const FieldMatrix& m, const FieldMatrix& rhs) {
  if (rhs.rows() != m.rows()) {
    throw ParameterError("solve: rhs has " + std::to_string(rhs.rows()) + " rows, matrix " +
                         shape(m.rows(), m.cols()));
  }
  const std::size_t n = m.cols();
  FieldMatrix aug(m.field(), m.rows(), n + rhs.cols());
  aug.set_block(0, 0, m);
  aug.set_block(0, n, rhs);
  const Echelon e = reduce(aug, n, true);
  for (std::size_t r = e.pivots.size(); r < aug.rows(); ++r) {
    for (std::size_t c = n; c < aug.cols(); ++c) {
      if (aug(r, c).value != 0) throw NoSolutionError("solve: inconsistent linear system");
    }
  }
  if (e.pivots.size() < n) {
    throw SingularMatrixError("solve: system of rank " + std::to_string(e.pivots.size()) +
                              " has no unique solution in " + std::to_string(n) + " unknowns");
  }
  return aug.block(0, n, n, rhs.cols());
}

FieldMatrix block_vandermonde(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) throw ParameterError("block_vandermonde: no blocks");
  const std::size_t b = blocks.front().rows();
  const FieldSpec& f = blocks.front().field();
  for (const auto& m : blocks) {
    if (!m.is_square() || m.rows() != b) {
      throw ParameterError("block_vandermonde: blocks must be square and equally sized");
    }
  }
  const std::size_t count = blocks.size();
  FieldMatrix v(f, count * b, count * b);
  for (std::size_t j = 0; j < count; ++j) {
    FieldMatrix power = FieldMatrix::identity(f, b);
    for (std::size_t i = 0; i < count; ++i) {
      v.set_block(i * b, j * b, power);
      power = power * blocks[j];
    }
  }
  return v;
}

bool block_vandermonde_det_check(std::span<const FieldMatrix> blocks) {
  const FieldMatrix v = block_vandermonde(blocks);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (!(blocks[i] * blocks[j] == blocks[j] * blocks[i])) {
        throw ParameterError("block_vandermonde_det_check: blocks do not commute");
      }
    }
  }
  // Sign convention: the 1x1 case reduces to the classic det = prod_{i<j} (x_j - x_i).
  const FieldSpec& f = v.field();
  FieldElement product = f.one();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      product = f.mul(product, det(blocks[j] - blocks[i]));
    }
  }
  return det(v) == product;
}

}  // namespace epsmsr
