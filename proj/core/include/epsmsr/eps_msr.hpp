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

// Chunked epsilon-MSR code: lambda base codes over Z_s^t, chunk b assigning
// node j the coordinate u_b^(j) of the outer code. Shards are chunk-major.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epsmsr/array_code.hpp"
#include "epsmsr/outer_code.hpp"
#include "epsmsr/repair_plan.hpp"

namespace epsmsr {

// Splits chunk-major shards: result[b][j] is node j's chunk b.
std::vector<std::vector<NodeShard>> split_chunks(std::span<const NodeShard> shards, std::size_t lambda,
                                                 std::size_t chunk_len);

class EpsMsrCode {
 public:
  // Throws ParameterError unless s = d - k + 1 >= 2, d < n, outer has n words
  // over an alphabet of size t <= n, and the field passes the root condition.
  EpsMsrCode(std::size_t n, std::size_t k, std::size_t d, FieldSpec field, OuterCode outer);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t r() const noexcept { return n_ - k_; }
  std::uint32_t s() const noexcept { return static_cast<std::uint32_t>(d_ - k_ + 1); }
  std::uint32_t t() const noexcept { return outer_.t(); }
  std::size_t lambda() const noexcept { return outer_.lambda(); }
  std::size_t chunk_len() const noexcept { return chunks_.front().ell(); }
  std::size_t ell() const noexcept { return lambda() * chunk_len(); }
  const FieldSpec& field() const noexcept { return field_; }
  const OuterCode& outer() const noexcept { return outer_; }
  Fraction epsilon() const { return epsilon_of(outer_, s()); }
  const ArrayCode& chunk(std::size_t b) const { return chunks_.at(chunk_code_.at(b)); }

  Codeword encode(std::span<const FieldElement> message) const;
  bool is_codeword(const Codeword& word) const;
  Codeword erase_decode(std::span<const std::optional<NodeShard>> nodes) const;

  // Global parity-check matrix (r*ell x n*ell) with block (i, j) = H_j^i and
  // H_j block diagonal over the chunks.
  FieldMatrix global_parity_check() const;

  // Throws ParameterError unless |D| = d and i is not in D.
  StripeRepairPlan plan_repair(std::size_t i, std::span<const std::size_t> helpers) const;

  // (1 + epsilon) ell / s.
  Fraction bandwidth_bound_exact() const;
  std::size_t bandwidth_bound() const { return static_cast<std::size_t>(ceil_fraction(bandwidth_bound_exact())); }

 private:
  std::size_t n_;
  std::size_t k_;
  std::size_t d_;
  FieldSpec field_;
  OuterCode outer_;
  // Chunks with equal assignments share one ArrayCode.
  std::vector<ArrayCode> chunks_;
  std::vector<std::size_t> chunk_code_;
};

struct RepairOutcome {
  std::vector<NodeShard> contents;  // aligned with the failed nodes
  RepairTranscript transcript;
};

// Plans, collects helper payloads from `stored` (all n shards; only the
// helpers' are read) and rebuilds node i.
RepairOutcome repair(const EpsMsrCode& code, std::size_t i, std::span<const std::size_t> helpers,
                     std::span<const NodeShard> stored);

}  // namespace epsmsr
