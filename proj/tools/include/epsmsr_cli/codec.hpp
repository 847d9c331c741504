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

// Codec metadata (codec.json) and a uniform wrapper over the three
// constructions.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "epsmsr/base_code.hpp"
#include "epsmsr/eps_msr.hpp"
#include "epsmsr/multi_repair.hpp"

namespace epsmsr::cli {

inline constexpr int kMetadataVersion = 1;

struct CodecMetadata {
  std::string construction;  // base | eps-msr | multi
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;        // base and eps-msr; 0 for multi
  std::uint32_t modulus = 0;  // s, or zeta for multi
  std::uint32_t t = 0;
  std::size_t lambda = 1;
  std::uint32_t q = 0;
  std::uint32_t alpha = 0;
  std::vector<OuterWord> outer;            // eps-msr and multi
  std::vector<std::uint32_t> assignment;  // base
  std::uint32_t bits_per_symbol = 0;
  std::uint64_t file_length = 0;
  std::uint64_t stripes = 0;
};

// Largest b in {8, 4, 2, 1} with 2^b <= q.
std::uint32_t packing_bits(std::uint32_t q);

nlohmann::json to_json(const CodecMetadata& meta);
// Throws ParameterError on missing or inconsistent fields.
CodecMetadata metadata_from_json(const nlohmann::json& j);

// Lowercase hex SHA-256 of the canonical metadata JSON, and its raw bytes.
std::string metadata_hash_hex(const CodecMetadata& meta);
std::array<std::uint8_t, 32> metadata_hash(const CodecMetadata& meta);

class Codec {
 public:
  // Rebuilds the code; every constructor check applies.
  explicit Codec(const CodecMetadata& meta);

  const CodecMetadata& metadata() const noexcept { return meta_; }
  std::size_t n() const noexcept { return meta_.n; }
  std::size_t k() const noexcept { return meta_.k; }
  std::size_t r() const noexcept { return meta_.n - meta_.k; }
  std::size_t ell() const;
  const FieldSpec& field() const noexcept { return field_; }
  std::size_t lambda() const;
  std::size_t chunk_len() const;
  const ArrayCode& chunk(std::size_t b) const;
  // Epsilon for the repair degree d (multi: (1 - delta)(d - k)).
  Fraction epsilon(std::size_t d) const;

  Codeword encode(std::span<const FieldElement> message) const;
  std::vector<FieldElement> message_of(const Codeword& word) const;
  bool is_codeword(const Codeword& word) const;
  Codeword erase_decode(std::span<const std::optional<NodeShard>> nodes) const;
  // Node whose replacement makes the word consistent, if exactly one does.
  std::optional<std::size_t> locate_error(const Codeword& word) const;
  // Every r-subset of column blocks of every distinct chunk code; returns the
  // number of submatrices checked and whether all were invertible.
  std::pair<std::size_t, bool> verify_mds() const;

  // Throws ParameterError for inadmissible (F, D).
  StripeRepairPlan plan(std::span<const std::size_t> failed, std::span<const std::size_t> helpers) const;
  Fraction bound(std::span<const std::size_t> failed, std::span<const std::size_t> helpers) const;
  // Admissible helper counts for h failures.
  std::vector<std::size_t> repair_degrees(std::size_t h) const;

 private:
  CodecMetadata meta_;
  FieldSpec field_;
  std::variant<BaseCode, EpsMsrCode, MultiCode> code_;
};

// Builds metadata for a fresh code: selects the field and, for eps-msr and
// multi, a greedy outer code. Base codes use `assignment` or, if empty,
// a_j = j mod t.
struct GenParams {
  std::string construction = "eps-msr";
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::uint32_t t = 0;
  std::size_t lambda = 1;
  double delta_target = 1.0;
  std::vector<std::uint32_t> assignment;
};
CodecMetadata generate_metadata(const GenParams& params);

}  // namespace epsmsr::cli
