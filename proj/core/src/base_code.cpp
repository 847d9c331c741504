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

#include "epsmsr/base_code.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr {

namespace {

std::uint32_t checked_s(std::size_t n, std::size_t k, std::uint32_t s, std::uint32_t t) {
  if (k >= n) throw ParameterError("base code needs k < n");
  if (s < 2 || s > n - k) {
    throw ParameterError("base code needs 2 <= s <= r, got s=" + std::to_string(s) +
                         " r=" + std::to_string(n - k));
  }
  if (t < 1 || t > n) throw ParameterError("base code needs 1 <= t <= n, got t=" + std::to_string(t));
  return s;
}

}  // namespace

BaseCode::BaseCode(std::size_t n, std::size_t k, std::uint32_t s, std::uint32_t t,
                   std::vector<std::uint32_t> assignment, FieldSpec field)
    : s_(checked_s(n, k, s, t)), array_(n, k, GroupShape(s, t), std::move(assignment), field) {}

FieldMatrix build_parity_check(const BaseCode& code) { return code.array().parity_check(); }

bool verify_mds(const BaseCode& code) { return code.array().verify_mds(); }

Codeword encode(const BaseCode& code, std::span<const FieldElement> message) {
  return code.array().encode(message);
}

bool is_codeword(const BaseCode& code, const Codeword& word) { return code.array().is_codeword(word); }

Codeword erase_decode(const BaseCode& code, std::span<const std::optional<NodeShard>> nodes) {
  return code.array().erase_decode(nodes);
}

Fraction repair_fraction(const BaseCode& code, std::size_t i, std::size_t j) {
  if (i >= code.n() || j >= code.n()) throw ParameterError("node index out of range");
  if (i == j) throw ParameterError("a node cannot help repair itself");
  return code.assignment()[i] == code.assignment()[j] ? Fraction(1) : Fraction(1, code.s());
}

NodeRepairPlan plan_repair(const BaseCode& code, std::size_t i, std::span<const std::size_t> helpers) {
  if (helpers.size() != code.d()) {
    throw ParameterError("repair needs exactly d=" + std::to_string(code.d()) + " helpers, got " +
                         std::to_string(helpers.size()));
  }
  return NodeRepairPlan(code.array(), i, {helpers.begin(), helpers.end()}, code.s());
}

HelperPayload repair_helper_payload(const BaseCode& code, std::size_t i, std::size_t j,
                                    std::span<const std::size_t> helpers,
                                    std::span<const FieldElement> stored) {
  if (std::find(helpers.begin(), helpers.end(), j) == helpers.end()) {
    throw ParameterError("node " + std::to_string(j) + " is not a helper");
  }
  const NodeRepairPlan plan = plan_repair(code, i, helpers);
  for (const auto& req : plan.requests()) {
    if (req.node == j) return read_payload(j, req.indices, stored);
  }
  throw InternalError("repair plan has no request for helper " + std::to_string(j));
}

NodeShard repair_reconstruct(const BaseCode& code, std::size_t i, std::span<const std::size_t> helpers,
                             std::span<const HelperPayload> payloads) {
  return plan_repair(code, i, helpers).reconstruct(payloads);
}

}  // namespace epsmsr
