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

// Multi-failure code over Z_zeta^t with zeta = lcm(1..r), repairing any h <= r
// failures from any d helpers, k <= d <= n - h, by sequential steps.
//
// In chunk b the failed nodes are grouped by their symbol u_b^(i). Classes
// are handled in ascending symbol order; step mu uses s_mu = d - k + mu
// equations and, besides D, the lowest node of every earlier class.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epsmsr/array_code.hpp"
#include "epsmsr/eps_msr.hpp"
#include "epsmsr/outer_code.hpp"
#include "epsmsr/repair_plan.hpp"

namespace epsmsr {

std::uint64_t lcm_up_to(std::uint32_t r);

class MultiCode {
 public:
  // Throws ParameterError unless 1 <= k < n, outer has n words over t <= n
  // symbols, q >= gcd(zeta, q - 1) n + 1, and (alpha_i / alpha_j)^m != 1 for
  // every pair and every m in {2..r} and zeta.
  MultiCode(std::size_t n, std::size_t k, OuterCode outer, FieldSpec field);

  // Smallest prime field meeting the constructor's field conditions.
  static FieldSpec select_field(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t r() const noexcept { return n_ - k_; }
  std::uint32_t zeta() const noexcept { return zeta_; }
  std::uint32_t t() const noexcept { return outer_.t(); }
  std::size_t lambda() const noexcept { return outer_.lambda(); }
  std::size_t chunk_len() const noexcept { return chunks_.front().ell(); }
  std::size_t ell() const noexcept { return lambda() * chunk_len(); }
  const FieldSpec& field() const noexcept { return field_; }
  const OuterCode& outer() const noexcept { return outer_; }
  const ArrayCode& chunk(std::size_t b) const { return chunks_.at(chunk_code_.at(b)); }

  Codeword encode(std::span<const FieldElement> message) const;
  bool is_codeword(const Codeword& word) const;
  Codeword erase_decode(std::span<const std::optional<NodeShard>> nodes) const;

  // (1 + (1 - delta)(d - k)) h ell / (d - k + h).
  Fraction bandwidth_bound_exact(std::size_t h, std::size_t d) const;

 private:
  friend StripeRepairPlan plan_repair_multi(const MultiCode&, std::span<const std::size_t>,
                                            std::span<const std::size_t>);

  std::size_t n_;
  std::size_t k_;
  std::uint32_t zeta_;
  OuterCode outer_;
  FieldSpec field_;
  std::vector<ArrayCode> chunks_;
  std::vector<std::size_t> chunk_code_;
};

struct FailureClasses {
  std::vector<std::uint32_t> symbols;            // W, ascending
  std::vector<std::vector<std::size_t>> classes;  // F_mu, ascending nodes
  std::vector<std::uint32_t> moduli;             // s_mu = d - k + mu
  std::size_t z() const noexcept { return symbols.size(); }
};

// Throws ParameterError for an empty F, repeated or out-of-range nodes, or
// |F| > r.
FailureClasses classify_failures(const MultiCode& code, std::span<const std::size_t> failed, std::size_t chunk,
                                 std::size_t d);

// Size of the union of {g : g(w_mu) = 0 mod s_mu} over Z_zeta^t, by
// enumeration. Throws ParameterError if some s_mu does not divide zeta.
std::size_t union_dimension(std::uint32_t zeta, std::uint32_t t, std::span<const std::uint32_t> moduli,
                            std::span<const std::uint32_t> coords);

// Throws ParameterError unless 1 <= |F| <= r, k <= |D| <= n - |F| and F, D
// are disjoint.
StripeRepairPlan plan_repair_multi(const MultiCode& code, std::span<const std::size_t> failed,
                                   std::span<const std::size_t> helpers);

// Repair of chunk b alone. `chunk_shards` holds every node's chunk b; only
// the helpers' are read. The transcript bound is h zeta^t / (d - k + h).
RepairOutcome sequential_repair_chunk(const MultiCode& code, std::span<const std::size_t> failed,
                                      std::span<const std::size_t> helpers, std::size_t chunk,
                                      std::span<const NodeShard> chunk_shards);

RepairOutcome repair_multi(const MultiCode& code, std::span<const std::size_t> failed,
                           std::span<const std::size_t> helpers, std::span<const NodeShard> stored);

}  // namespace epsmsr
