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

#include "epsmsr/array_code.hpp"

#include <mutex>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr {

std::int64_t ceil_fraction(const Fraction& f) {
  const std::int64_t num = f.numerator();
  const std::int64_t den = f.denominator();
  return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

NodeShard shift_symbols(const GroupShape& shape, std::span<const FieldElement> in,
                        GroupIndex shift) {
  NodeShard out(in.size());
  for (GroupIndex g = 0; g < in.size(); ++g) out[g] = in[shape.add(g, shift)];
  return out;
}

struct ArrayCode::Cache {
  std::once_flag once;
  std::optional<FieldMatrix> parity_encoder;
};

ArrayCode::ArrayCode(std::size_t n, std::size_t k, GroupShape shape,
                     std::vector<std::uint32_t> assignment, FieldSpec field)
    : n_(n),
      k_(k),
      shape_(std::move(shape)),
      assignment_(std::move(assignment)),
      field_(field),
      cache_(std::make_shared<Cache>()) {
  if (k_ < 1 || k_ >= n_) {
    throw ParameterError("array code needs 1 <= k < n, got n=" + std::to_string(n_) +
                         " k=" + std::to_string(k_));
  }
  if (assignment_.size() != n_) {
    throw ParameterError("assignment has " + std::to_string(assignment_.size()) +
                         " entries for " + std::to_string(n_) + " nodes");
  }
  for (auto a : assignment_) {
    if (a >= shape_.width()) {
      throw ParameterError("assignment coordinate " + std::to_string(a) + " exceeds t=" +
                           std::to_string(shape_.width()));
    }
  }
  alphas_ = evaluation_points(field_, n_);
  if (shape_.modulus() >= 2 && !verify_root_condition(field_, n_, shape_.modulus())) {
    throw ParameterError("GF(" + std::to_string(field_.modulus()) +
                         ") fails the root condition for n=" + std::to_string(n_) +
                         ", m=" + std::to_string(shape_.modulus()));
  }
}

AlgebraElement ArrayCode::node_element(std::size_t node) const {
  return AlgebraElement::basis(GroupVector::unit(shape_, assignment_.at(node)), field_,
                               alphas_.at(node));
}

FieldMatrix ArrayCode::parity_block(std::size_t block_row, std::size_t node) const {
  const GroupIndex shift =
      GroupVector::unit(shape_, assignment_.at(node)).multiple(block_row).rank();
  const FieldElement scale = field_.pow(alphas_.at(node), block_row);
  FieldMatrix m(field_, ell(), ell());
  for (GroupIndex g = 0; g < ell(); ++g) m(g, shape_.add(g, shift)) = scale;
  return m;
}

FieldMatrix ArrayCode::parity_check() const {
  FieldMatrix a(field_, r() * ell(), n_ * ell());
  for (std::size_t i = 0; i < r(); ++i) {
    for (std::size_t j = 0; j < n_; ++j) a.set_block(i * ell(), j * ell(), parity_block(i, j));
  }
  return a;
}

namespace {

// Column blocks of the parity-check matrix for the listed nodes.
FieldMatrix parity_columns(const ArrayCode& code, std::span<const std::size_t> nodes) {
  FieldMatrix a(code.field(), code.r() * code.ell(), nodes.size() * code.ell());
  for (std::size_t i = 0; i < code.r(); ++i) {
    for (std::size_t c = 0; c < nodes.size(); ++c) {
      a.set_block(i * code.ell(), c * code.ell(), code.parity_block(i, nodes[c]));
    }
  }
  return a;
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

bool ArrayCode::verify_mds() const {
  std::vector<std::size_t> comb(r());
  for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = i;
  do {
    if (rank(parity_columns(*this, comb)) != r() * ell()) return false;
  } while (next_combination(comb, n_));
  return true;
}

const FieldMatrix& ArrayCode::parity_encoder() const {
  std::call_once(cache_->once, [this] {
    std::vector<std::size_t> systematic(k_);
    std::vector<std::size_t> parity(r());
    for (std::size_t j = 0; j < k_; ++j) systematic[j] = j;
    for (std::size_t j = 0; j < r(); ++j) parity[j] = k_ + j;
    const FieldMatrix a_par = parity_columns(*this, parity);
    const FieldMatrix a_sys = parity_columns(*this, systematic);
    FieldMatrix enc = invert(a_par) * a_sys;
    cache_->parity_encoder = enc.scaled(field_.neg(field_.one()));
  });
  return *cache_->parity_encoder;
}

Codeword ArrayCode::encode(std::span<const FieldElement> message) const {
  if (message.size() != k_ * ell()) {
    throw ParameterError("message has " + std::to_string(message.size()) + " symbols, expected " +
                         std::to_string(k_ * ell()));
  }
  Codeword word;
  word.nodes.reserve(n_);
  for (std::size_t j = 0; j < k_; ++j) {
    word.nodes.emplace_back(message.begin() + j * ell(), message.begin() + (j + 1) * ell());
  }
  const std::vector<FieldElement> parity = parity_encoder().apply(message);
  for (std::size_t j = 0; j < r(); ++j) {
    word.nodes.emplace_back(parity.begin() + j * ell(), parity.begin() + (j + 1) * ell());
  }
  return word;
}

void ArrayCode::check_word_shape(const Codeword& word) const {
  if (word.nodes.size() != n_) {
    throw ParameterError("codeword has " + std::to_string(word.nodes.size()) + " nodes, expected " +
                         std::to_string(n_));
  }
  for (const auto& node : word.nodes) {
    if (node.size() != ell()) {
      throw ParameterError("node holds " + std::to_string(node.size()) + " symbols, expected " +
                           std::to_string(ell()));
    }
  }
}

bool ArrayCode::is_codeword(const Codeword& word) const {
  check_word_shape(word);
  for (std::size_t i = 0; i < r(); ++i) {
    NodeShard acc(ell(), field_.zero());
    for (std::size_t j = 0; j < n_; ++j) {
      const GroupIndex shift = GroupVector::unit(shape_, assignment_[j]).multiple(i).rank();
      const FieldElement scale = field_.pow(alphas_[j], i);
      for (GroupIndex g = 0; g < ell(); ++g) {
        acc[g] = field_.add(acc[g], field_.mul(scale, word.nodes[j][shape_.add(g, shift)]));
      }
    }
    for (auto v : acc) {
      if (v.value != 0) return false;
    }
  }
  return true;
}

Codeword ArrayCode::erase_decode(std::span<const std::optional<NodeShard>> nodes) const {
  if (nodes.size() != n_) {
    throw ParameterError("erase_decode: expected " + std::to_string(n_) + " node slots");
  }
  std::vector<std::size_t> missing;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!nodes[j]) {
      missing.push_back(j);
    } else if (nodes[j]->size() != ell()) {
      throw ParameterError("erase_decode: node " + std::to_string(j) + " has wrong length");
    }
  }
  if (missing.size() > r()) {
    throw UnrecoverableError(std::to_string(missing.size()) + " erasures exceed r=" +
                             std::to_string(r()));
  }
  Codeword word;
  word.nodes.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (nodes[j]) word.nodes[j] = *nodes[j];
  }
  if (missing.empty()) return word;

  // A_E x = -sum_{known j} A_j c_j.
  std::vector<FieldElement> rhs(r() * ell(), field_.zero());
  for (std::size_t i = 0; i < r(); ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!nodes[j]) continue;
      const GroupIndex shift = GroupVector::unit(shape_, assignment_[j]).multiple(i).rank();
      const FieldElement scale = field_.neg(field_.pow(alphas_[j], i));
      for (GroupIndex g = 0; g < ell(); ++g) {
        auto& cell = rhs[i * ell() + g];
        cell = field_.add(cell, field_.mul(scale, (*nodes[j])[shape_.add(g, shift)]));
      }
    }
  }
  const FieldMatrix x = solve(parity_columns(*this, missing), FieldMatrix::column(field_, rhs));
  for (std::size_t c = 0; c < missing.size(); ++c) {
    NodeShard& node = word.nodes[missing[c]];
    node.resize(ell());
    for (std::size_t g = 0; g < ell(); ++g) node[g] = x(c * ell() + g, 0);
  }
  return word;
}

std::optional<std::size_t> ArrayCode::locate_single_error(const Codeword& word) const {
  check_word_shape(word);
  if (r() < 2 || is_codeword(word)) return std::nullopt;
  std::vector<std::optional<NodeShard>> slots(word.nodes.begin(), word.nodes.end());
  for (std::size_t j = 0; j < n_; ++j) {
    auto saved = std::exchange(slots[j], std::nullopt);
    try {
      erase_decode(slots);
      return j;
    } catch (const NoSolutionError&) {
    }
    slots[j] = std::move(saved);
  }
  return std::nullopt;
}

}  // namespace epsmsr
