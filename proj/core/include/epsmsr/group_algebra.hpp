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

// Group algebra F[G] for G = Z_m^t.
//
// Group elements are ranked mixed-radix with the first coordinate most
// significant, so for Z_2^2 the basis order is x_(0,0), x_(0,1), x_(1,0),
// x_(1,1). Every matrix, selector and shard layout in the library uses this
// order.
//
// The regular representation is taken with respect to row vectors:
// rep(x_v) has a one at (g, g + v), so e_g^T rep(x_v) = e_{g+v}^T and
// (rep(x_v) c)[g] = c[g + v].

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "epsmsr/matrix.hpp"
#include "epsmsr/prime_field.hpp"

namespace epsmsr {

// Canonical position of a group element in [0, m^t).
using GroupIndex = std::uint32_t;

class GroupShape {
 public:
  // Throws ParameterError unless m >= 1, t >= 1 and m^t fits in 32 bits.
  GroupShape(std::uint32_t modulus, std::uint32_t width);

  std::uint32_t modulus() const noexcept { return modulus_; }
  std::uint32_t width() const noexcept { return width_; }
  std::size_t order() const noexcept { return order_; }

  // Coordinate `coord` (0-based, 0 is most significant) of the element at `idx`.
  std::uint32_t digit(GroupIndex idx, std::uint32_t coord) const noexcept {
    return (idx / strides_[coord]) % modulus_;
  }
  std::size_t stride(std::uint32_t coord) const noexcept { return strides_[coord]; }
  GroupIndex add(GroupIndex a, GroupIndex b) const noexcept;
  GroupIndex negate(GroupIndex a) const noexcept;

  friend bool operator==(const GroupShape& a, const GroupShape& b) noexcept {
    return a.modulus_ == b.modulus_ && a.width_ == b.width_;
  }

 private:
  std::uint32_t modulus_;
  std::uint32_t width_;
  std::size_t order_;
  std::vector<std::size_t> strides_;
};

class GroupVector {
 public:
  // Entries are reduced mod m; throws ParameterError on a length mismatch.
  GroupVector(const GroupShape& shape, std::vector<std::uint32_t> entries);

  static GroupVector zero(const GroupShape& shape);
  // Standard basis vector e_coord (0-based coordinate).
  static GroupVector unit(const GroupShape& shape, std::uint32_t coord);
  static GroupVector unrank(const GroupShape& shape, GroupIndex idx);

  const GroupShape& shape() const noexcept { return shape_; }
  const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
  GroupIndex rank() const noexcept;

  // v + ... + v (`times` copies).
  GroupVector multiple(std::uint64_t times) const;

  friend bool operator==(const GroupVector& a, const GroupVector& b) {
    return a.shape_ == b.shape_ && a.entries_ == b.entries_;
  }

 private:
  GroupShape shape_;
  std::vector<std::uint32_t> entries_;
};

// Throws ParameterError when the shapes differ.
GroupVector group_add(const GroupVector& u, const GroupVector& v);

class SubspaceSelector;

// Element of F[G], stored sparsely: no zero coefficients are kept.
class AlgebraElement {
 public:
  AlgebraElement(const GroupShape& shape, const FieldSpec& field);

  static AlgebraElement identity(const GroupShape& shape, const FieldSpec& field);
  // coeff * x_g.
  static AlgebraElement basis(const GroupVector& g, const FieldSpec& field, FieldElement coeff);
  static AlgebraElement basis(const GroupVector& g, const FieldSpec& field) {
    return basis(g, field, field.one());
  }

  const GroupShape& shape() const noexcept { return shape_; }
  const FieldSpec& field() const noexcept { return field_; }
  const std::map<GroupIndex, FieldElement>& terms() const noexcept { return terms_; }
  FieldElement coefficient(GroupIndex g) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  AlgebraElement operator+(const AlgebraElement& rhs) const;
  AlgebraElement operator-(const AlgebraElement& rhs) const;
  AlgebraElement operator*(const AlgebraElement& rhs) const;
  AlgebraElement scaled(FieldElement factor) const;
  AlgebraElement pow(std::uint64_t e) const;

  // Multiplication by this element as an m^t x m^t matrix.
  FieldMatrix regular_representation() const;
  // sel * rep(this), built without materializing rep(this).
  FieldMatrix selected_representation(const SubspaceSelector& sel) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.shape_ == b.shape_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const AlgebraElement& rhs) const;
  void accumulate(GroupIndex g, FieldElement v);

  GroupShape shape_;
  FieldSpec field_;
  std::map<GroupIndex, FieldElement> terms_;
};

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);
FieldMatrix regular_representation(const AlgebraElement& a);

// Polynomial in X with coefficients in F[G]; coefficient index = degree.
class AlgebraPolynomial {
 public:
  // The zero polynomial.
  AlgebraPolynomial(const GroupShape& shape, const FieldSpec& field);
  explicit AlgebraPolynomial(std::vector<AlgebraElement> coefficients);

  static AlgebraPolynomial constant(const AlgebraElement& c);
  // X - a.
  static AlgebraPolynomial linear_root(const AlgebraElement& a);

  const std::vector<AlgebraElement>& coefficients() const noexcept { return coeffs_; }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const GroupShape& shape() const noexcept { return shape_; }
  const FieldSpec& field() const noexcept { return field_; }

  AlgebraPolynomial operator+(const AlgebraPolynomial& rhs) const;
  AlgebraPolynomial operator*(const AlgebraPolynomial& rhs) const;
  // Horner evaluation at a ring element.
  AlgebraElement operator()(const AlgebraElement& at) const;

  friend bool operator==(const AlgebraPolynomial& a, const AlgebraPolynomial& b) {
    return a.shape_ == b.shape_ && a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  void require_compatible(const GroupShape& shape, const FieldSpec& field) const;

  GroupShape shape_;
  FieldSpec field_;
  std::vector<AlgebraElement> coeffs_;
};

AlgebraPolynomial poly_mul(const AlgebraPolynomial& p, const AlgebraPolynomial& q);
AlgebraElement poly_eval(const AlgebraPolynomial& p, const AlgebraElement& at);

// One root alpha * x_shift of an annihilator polynomial.
struct AnnihilatorPoint {
  FieldElement scalar;
  GroupVector shift;
};

// prod_j (X - scalar_j * x_{shift_j}); the constant identity for no points.
AlgebraPolynomial annihilator_poly(const GroupShape& shape, const FieldSpec& field,
                                   std::span<const AnnihilatorPoint> points);

// Coordinate subspace span{x_g : g in index set}, viewed as a 0/1 matrix
// with one unit row per selected basis element in ascending index order.
class SubspaceSelector {
 public:
  // `rows` must be strictly ascending and inside the group.
  SubspaceSelector(const GroupShape& shape, std::vector<GroupIndex> rows);

  const GroupShape& shape() const noexcept { return shape_; }
  const std::vector<GroupIndex>& rows() const noexcept { return rows_; }
  std::size_t dimension() const noexcept { return rows_.size(); }
  bool contains(GroupIndex g) const;
  // Position of g among the rows; throws ParameterError if absent.
  std::size_t position(GroupIndex g) const;

  FieldMatrix as_matrix(const FieldSpec& field) const;

  friend bool operator==(const SubspaceSelector& a, const SubspaceSelector& b) {
    return a.shape_ == b.shape_ && a.rows_ == b.rows_;
  }

 private:
  GroupShape shape_;
  std::vector<GroupIndex> rows_;
};

// {g : g(coord) = 0 mod step}. `coord` is 0-based; throws ParameterError
// unless step divides m.
SubspaceSelector build_selector(const GroupShape& shape, std::uint32_t coord, std::uint32_t step);

SubspaceSelector union_selector(std::span<const SubspaceSelector> selectors);

// R with sel * rep(a) = R * sel. Throws InvarianceError when the row space of
// sel is not invariant under rep(a).
FieldMatrix restrict_operator(const SubspaceSelector& sel, const AlgebraElement& a);

}  // namespace epsmsr
