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

#include "epsmsr/group_algebra.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr {

GroupShape::GroupShape(std::uint32_t modulus, std::uint32_t width)
    : modulus_(modulus), width_(width), order_(1), strides_(width) {
  if (modulus == 0 || width == 0) {
    throw ParameterError("group Z_m^t needs m >= 1 and t >= 1");
  }
  for (std::uint32_t i = width; i-- > 0;) {
    strides_[i] = order_;
    if (order_ > std::numeric_limits<std::uint32_t>::max() / modulus) {
      throw ParameterError("group Z_" + std::to_string(modulus) + "^" + std::to_string(width) +
                           " is too large");
    }
    order_ *= modulus;
  }
}

GroupIndex GroupShape::add(GroupIndex a, GroupIndex b) const noexcept {
  GroupIndex out = 0;
  for (std::uint32_t i = 0; i < width_; ++i) {
    out += static_cast<GroupIndex>(((digit(a, i) + digit(b, i)) % modulus_) * strides_[i]);
  }
  return out;
}

GroupIndex GroupShape::negate(GroupIndex a) const noexcept {
  GroupIndex out = 0;
  for (std::uint32_t i = 0; i < width_; ++i) {
    out += static_cast<GroupIndex>(((modulus_ - digit(a, i)) % modulus_) * strides_[i]);
  }
  return out;
}

GroupVector::GroupVector(const GroupShape& shape, std::vector<std::uint32_t> entries)
    : shape_(shape), entries_(std::move(entries)) {
  if (entries_.size() != shape.width()) {
    throw ParameterError("group vector has " + std::to_string(entries_.size()) +
                         " entries, expected " + std::to_string(shape.width()));
  }
  for (auto& e : entries_) e %= shape.modulus();
}

GroupVector GroupVector::zero(const GroupShape& shape) {
  return GroupVector(shape, std::vector<std::uint32_t>(shape.width(), 0));
}

GroupVector GroupVector::unit(const GroupShape& shape, std::uint32_t coord) {
  if (coord >= shape.width()) {
    throw ParameterError("unit vector coordinate " + std::to_string(coord) + " out of range");
  }
  std::vector<std::uint32_t> e(shape.width(), 0);
  e[coord] = 1;
  return GroupVector(shape, std::move(e));
}

GroupVector GroupVector::unrank(const GroupShape& shape, GroupIndex idx) {
  if (idx >= shape.order()) throw ParameterError("group index out of range");
  std::vector<std::uint32_t> e(shape.width());
  for (std::uint32_t i = 0; i < shape.width(); ++i) e[i] = shape.digit(idx, i);
  return GroupVector(shape, std::move(e));
}

GroupIndex GroupVector::rank() const noexcept {
  GroupIndex out = 0;
  for (std::uint32_t i = 0; i < shape_.width(); ++i) {
    out += static_cast<GroupIndex>(entries_[i] * shape_.stride(i));
  }
  return out;
}

GroupVector GroupVector::multiple(std::uint64_t times) const {
  std::vector<std::uint32_t> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = static_cast<std::uint32_t>((entries_[i] * (times % shape_.modulus())) % shape_.modulus());
  }
  return GroupVector(shape_, std::move(e));
}

GroupVector group_add(const GroupVector& u, const GroupVector& v) {
  if (!(u.shape() == v.shape())) throw ParameterError("group_add: group mismatch");
  std::vector<std::uint32_t> e(u.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = u.entries()[i] + v.entries()[i];
  return GroupVector(u.shape(), std::move(e));
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(const GroupShape& shape, const FieldSpec& field)
    : shape_(shape), field_(field) {}

AlgebraElement AlgebraElement::identity(const GroupShape& shape, const FieldSpec& field) {
  return basis(GroupVector::zero(shape), field, field.one());
}

AlgebraElement AlgebraElement::basis(const GroupVector& g, const FieldSpec& field,
                                     FieldElement coeff) {
  AlgebraElement out(g.shape(), field);
  out.accumulate(g.rank(), coeff);
  return out;
}

FieldElement AlgebraElement::coefficient(GroupIndex g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? field_.zero() : it->second;
}

void AlgebraElement::require_compatible(const AlgebraElement& rhs) const {
  if (!(shape_ == rhs.shape_) || !(field_ == rhs.field_)) {
    throw ParameterError("group algebra elements from different contexts");
  }
}

void AlgebraElement::accumulate(GroupIndex g, FieldElement v) {
  if (v.value == 0) return;
  auto [it, inserted] = terms_.try_emplace(g, v);
  if (inserted) return;
  it->second = field_.add(it->second, v);
  if (it->second.value == 0) terms_.erase(it);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
  require_compatible(rhs);
  AlgebraElement out = *this;
  for (const auto& [g, v] : rhs.terms_) out.accumulate(g, v);
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const {
  require_compatible(rhs);
  AlgebraElement out = *this;
  for (const auto& [g, v] : rhs.terms_) out.accumulate(g, field_.neg(v));
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
  require_compatible(rhs);
  AlgebraElement out(shape_, field_);
  for (const auto& [g, a] : terms_) {
    for (const auto& [h, b] : rhs.terms_) out.accumulate(shape_.add(g, h), field_.mul(a, b));
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(FieldElement factor) const {
  AlgebraElement out(shape_, field_);
  for (const auto& [g, v] : terms_) out.accumulate(g, field_.mul(v, factor));
  return out;
}

AlgebraElement AlgebraElement::pow(std::uint64_t e) const {
  AlgebraElement result = identity(shape_, field_);
  AlgebraElement base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

FieldMatrix AlgebraElement::regular_representation() const {
  const std::size_t n = shape_.order();
  FieldMatrix m(field_, n, n);
  for (GroupIndex row = 0; row < n; ++row) {
    for (const auto& [v, coeff] : terms_) {
      auto& cell = m(row, shape_.add(row, v));
      cell = field_.add(cell, coeff);
    }
  }
  return m;
}

FieldMatrix AlgebraElement::selected_representation(const SubspaceSelector& sel) const {
  if (!(sel.shape() == shape_)) throw ParameterError("selector and element from different groups");
  FieldMatrix m(field_, sel.dimension(), shape_.order());
  for (std::size_t r = 0; r < sel.dimension(); ++r) {
    const GroupIndex g = sel.rows()[r];
    for (const auto& [v, coeff] : terms_) {
      auto& cell = m(r, shape_.add(g, v));
      cell = field_.add(cell, coeff);
    }
  }
  return m;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

FieldMatrix regular_representation(const AlgebraElement& a) { return a.regular_representation(); }

// ---------------------------------------------------------------------------

AlgebraPolynomial::AlgebraPolynomial(const GroupShape& shape, const FieldSpec& field)
    : shape_(shape), field_(field) {}

AlgebraPolynomial::AlgebraPolynomial(std::vector<AlgebraElement> coefficients)
    : shape_(coefficients.empty() ? throw ParameterError("polynomial needs a context")
                                  : coefficients.front().shape()),
      field_(coefficients.front().field()),
      coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) require_compatible(c.shape(), c.field());
  trim();
}

AlgebraPolynomial AlgebraPolynomial::constant(const AlgebraElement& c) {
  return AlgebraPolynomial(std::vector<AlgebraElement>{c});
}

AlgebraPolynomial AlgebraPolynomial::linear_root(const AlgebraElement& a) {
  const AlgebraElement zero(a.shape(), a.field());
  return AlgebraPolynomial(
      std::vector<AlgebraElement>{zero - a, AlgebraElement::identity(a.shape(), a.field())});
}

void AlgebraPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void AlgebraPolynomial::require_compatible(const GroupShape& shape, const FieldSpec& field) const {
  if (!(shape_ == shape) || !(field_ == field)) {
    throw ParameterError("polynomials over different group algebras");
  }
}

AlgebraPolynomial AlgebraPolynomial::operator+(const AlgebraPolynomial& rhs) const {
  require_compatible(rhs.shape_, rhs.field_);
  AlgebraPolynomial out(shape_, field_);
  const std::size_t len = std::max(coeffs_.size(), rhs.coeffs_.size());
  out.coeffs_.assign(len, AlgebraElement(shape_, field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i];
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) {
    out.coeffs_[i] = out.coeffs_[i] + rhs.coeffs_[i];
  }
  out.trim();
  return out;
}

AlgebraPolynomial AlgebraPolynomial::operator*(const AlgebraPolynomial& rhs) const {
  require_compatible(rhs.shape_, rhs.field_);
  AlgebraPolynomial out(shape_, field_);
  if (coeffs_.empty() || rhs.coeffs_.empty()) return out;
  out.coeffs_.assign(coeffs_.size() + rhs.coeffs_.size() - 1, AlgebraElement(shape_, field_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out.coeffs_[i + j] = out.coeffs_[i + j] + coeffs_[i] * rhs.coeffs_[j];
    }
  }
  out.trim();
  return out;
}

AlgebraElement AlgebraPolynomial::operator()(const AlgebraElement& at) const {
  if (!(at.shape() == shape_) || !(at.field() == field_)) {
    throw ParameterError("evaluation point from a different group algebra");
  }
  AlgebraElement acc(shape_, field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

AlgebraPolynomial poly_mul(const AlgebraPolynomial& p, const AlgebraPolynomial& q) { return p * q; }

AlgebraElement poly_eval(const AlgebraPolynomial& p, const AlgebraElement& at) { return p(at); }

AlgebraPolynomial annihilator_poly(const GroupShape& shape, const FieldSpec& field,
                                   std::span<const AnnihilatorPoint> points) {
  AlgebraPolynomial h = AlgebraPolynomial::constant(AlgebraElement::identity(shape, field));
  for (const auto& p : points) {
    if (!(p.shift.shape() == shape)) throw ParameterError("annihilator point from another group");
    h = h * AlgebraPolynomial::linear_root(AlgebraElement::basis(p.shift, field, p.scalar));
  }
  return h;
}

// ---------------------------------------------------------------------------

SubspaceSelector::SubspaceSelector(const GroupShape& shape, std::vector<GroupIndex> rows)
    : shape_(shape), rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] >= shape_.order() || (i > 0 && rows_[i] <= rows_[i - 1])) {
      throw ParameterError("selector rows must be strictly ascending group indices");
    }
  }
}

bool SubspaceSelector::contains(GroupIndex g) const {
  return std::binary_search(rows_.begin(), rows_.end(), g);
}

std::size_t SubspaceSelector::position(GroupIndex g) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), g);
  if (it == rows_.end() || *it != g) throw ParameterError("group index not in selector");
  return static_cast<std::size_t>(it - rows_.begin());
}

FieldMatrix SubspaceSelector::as_matrix(const FieldSpec& field) const {
  FieldMatrix m(field, rows_.size(), shape_.order());
  for (std::size_t r = 0; r < rows_.size(); ++r) m(r, rows_[r]) = field.one();
  return m;
}

SubspaceSelector build_selector(const GroupShape& shape, std::uint32_t coord, std::uint32_t step) {
  if (coord >= shape.width()) {
    throw ParameterError("selector coordinate " + std::to_string(coord) + " out of range");
  }
  if (step == 0 || shape.modulus() % step != 0) {
    throw ParameterError("selector step " + std::to_string(step) + " does not divide " +
                         std::to_string(shape.modulus()));
  }
  std::vector<GroupIndex> rows;
  rows.reserve(shape.order() / step);
  for (GroupIndex g = 0; g < shape.order(); ++g) {
    if (shape.digit(g, coord) % step == 0) rows.push_back(g);
  }
  return SubspaceSelector(shape, std::move(rows));
}

SubspaceSelector union_selector(std::span<const SubspaceSelector> selectors) {
  if (selectors.empty()) throw ParameterError("union_selector: no selectors");
  std::vector<GroupIndex> rows;
  for (const auto& s : selectors) {
    if (!(s.shape() == selectors.front().shape())) {
      throw ParameterError("union_selector: selectors from different groups");
    }
    rows.insert(rows.end(), s.rows().begin(), s.rows().end());
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return SubspaceSelector(selectors.front().shape(), std::move(rows));
}

FieldMatrix restrict_operator(const SubspaceSelector& sel, const AlgebraElement& a) {
  if (!(sel.shape() == a.shape())) throw ParameterError("selector and element from different groups");
  const FieldSpec& f = a.field();
  FieldMatrix r(f, sel.dimension(), sel.dimension());
  for (std::size_t row = 0; row < sel.dimension(); ++row) {
    const GroupIndex g = sel.rows()[row];
    for (const auto& [v, coeff] : a.terms()) {
      const GroupIndex target = a.shape().add(g, v);
      if (!sel.contains(target)) {
        throw InvarianceError("selector row space is not invariant under the operator");
      }
      auto& cell = r(row, sel.position(target));
      cell = f.add(cell, coeff);
    }
  }
  return r;
}

}  // namespace epsmsr
