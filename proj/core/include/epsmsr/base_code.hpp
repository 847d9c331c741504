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

// Single-group MSR-style base code: an ArrayCode over Z_s^t with repair
// degree d = k + s - 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epsmsr/array_code.hpp"
#include "epsmsr/repair_plan.hpp"

namespace epsmsr {

class BaseCode {
 public:
  // Throws ParameterError unless k < n, 2 <= s <= r, 1 <= t <= n and the
  // field satisfies the root condition for (n, s).
  BaseCode(std::size_t n, std::size_t k, std::uint32_t s, std::uint32_t t,
           std::vector<std::uint32_t> assignment, FieldSpec field);

  std::size_t n() const noexcept { return array_.n(); }
  std::size_t k() const noexcept { return array_.k(); }
  std::size_t r() const noexcept { return array_.r(); }
  std::size_t d() const noexcept { return array_.k() + s_ - 1; }
  std::uint32_t s() const noexcept { return s_; }
  std::uint32_t t() const noexcept { return array_.shape().width(); }
  std::size_t ell() const noexcept { return array_.ell(); }
  const FieldSpec& field() const noexcept { return array_.field(); }
  const std::vector<std::uint32_t>& assignment() const noexcept { return array_.assignment(); }
  const ArrayCode& array() const noexcept { return array_; }

 private:
  std::uint32_t s_;
  ArrayCode array_;
};

FieldMatrix build_parity_check(const BaseCode& code);
bool verify_mds(const BaseCode& code);
Codeword encode(const BaseCode& code, std::span<const FieldElement> message);
bool is_codeword(const BaseCode& code, const Codeword& word);
Codeword erase_decode(const BaseCode& code, std::span<const std::optional<NodeShard>> nodes);

// Nominal download fraction of helper j: 1/s when a_j != a_i, else 1.
Fraction repair_fraction(const BaseCode& code, std::size_t i, std::size_t j);

// Throws ParameterError unless |D| = d, i is not in D and every index is a node.
NodeRepairPlan plan_repair(const BaseCode& code, std::size_t i, std::span<const std::size_t> helpers);

// Symbols helper j sends to rebuild node i from D, read verbatim from
// `stored` (node j's content).
HelperPayload repair_helper_payload(const BaseCode& code, std::size_t i, std::size_t j,
                                    std::span<const std::size_t> helpers,
                                    std::span<const FieldElement> stored);

NodeShard repair_reconstruct(const BaseCode& code, std::size_t i, std::span<const std::size_t> helpers,
                             std::span<const HelperPayload> payloads);

}  // namespace epsmsr
