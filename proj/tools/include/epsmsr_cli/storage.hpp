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

// Byte packing and the node shard file format:
//
//   8 bytes  magic "EPSMSR\0\1"
//   4 bytes  format version (LE)
//   4 bytes  node index (LE)
//  32 bytes  SHA-256 of codec.json's canonical form
//   8 bytes  symbol count (LE)
//   payload  symbols as LE u32

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "epsmsr/array_code.hpp"
#include "epsmsr/errors.hpp"

namespace epsmsr::cli {

inline constexpr std::uint32_t kShardVersion = 1;

class IoError : public Error {
 public:
  using Error::Error;
};

// Splits each byte into 8 / bits symbols, high bits first.
std::vector<FieldElement> pack_bytes(std::span<const std::uint8_t> bytes, std::uint32_t bits);
// Inverse of pack_bytes; reads the first byte_count bytes' worth of symbols.
std::vector<std::uint8_t> unpack_symbols(std::span<const FieldElement> symbols, std::uint32_t bits,
                                         std::size_t byte_count);

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t node);

void write_shard(const std::filesystem::path& path, std::size_t node, const std::array<std::uint8_t, 32>& hash,
                 std::span<const FieldElement> symbols);

// Throws IoError if the file is unreadable, malformed, belongs to another
// node or codec, has the wrong length or holds symbols >= q.
NodeShard read_shard(const std::filesystem::path& path, std::size_t node, const std::array<std::uint8_t, 32>& hash,
                     std::uint64_t expected_count, std::uint32_t q);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace epsmsr::cli
