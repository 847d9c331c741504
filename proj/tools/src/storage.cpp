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

#include "epsmsr_cli/storage.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace epsmsr::cli {

namespace {

constexpr std::array<char, 8> kMagic = {'E', 'P', 'S', 'M', 'S', 'R', '\0', '\1'};
constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 32 + 8;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <class T>
T get_le(const std::uint8_t* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
  return v;
}

void check_bits(std::uint32_t bits) {
  if (bits != 1 && bits != 2 && bits != 4 && bits != 8) {
    throw ParameterError("unsupported packing width " + std::to_string(bits));
  }
}

}  // namespace

std::vector<FieldElement> pack_bytes(std::span<const std::uint8_t> bytes, std::uint32_t bits) {
  check_bits(bits);
  const std::uint32_t per = 8 / bits;
  const std::uint32_t mask = (1u << bits) - 1;
  std::vector<FieldElement> out;
  out.reserve(bytes.size() * per);
  for (auto byte : bytes) {
    for (std::uint32_t p = per; p-- > 0;) out.push_back({(byte >> (p * bits)) & mask});
  }
  return out;
}

std::vector<std::uint8_t> unpack_symbols(std::span<const FieldElement> symbols, std::uint32_t bits,
                                         std::size_t byte_count) {
  check_bits(bits);
  const std::uint32_t per = 8 / bits;
  if (symbols.size() < byte_count * per) throw ParameterError("too few symbols to unpack");
  std::vector<std::uint8_t> out(byte_count);
  for (std::size_t i = 0; i < byte_count; ++i) {
    std::uint32_t v = 0;
    for (std::uint32_t p = 0; p < per; ++p) {
      const std::uint32_t s = symbols[i * per + p].value;
      if (s >> bits) throw IoError("symbol " + std::to_string(s) + " does not fit the packing width");
      v = (v << bits) | s;
    }
    out[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t node) {
  return dir / ("node_" + std::to_string(node) + ".shard");
}

void write_shard(const std::filesystem::path& path, std::size_t node, const std::array<std::uint8_t, 32>& hash,
                 std::span<const FieldElement> symbols) {
  std::vector<std::uint8_t> buf;
  buf.reserve(kHeaderSize + 4 * symbols.size());
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(buf, kShardVersion);
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(node));
  buf.insert(buf.end(), hash.begin(), hash.end());
  put_le<std::uint64_t>(buf, symbols.size());
  for (auto s : symbols) put_le<std::uint32_t>(buf, s.value);
  write_file(path, buf);
}

NodeShard read_shard(const std::filesystem::path& path, std::size_t node, const std::array<std::uint8_t, 32>& hash,
                     std::uint64_t expected_count, std::uint32_t q) {
  const auto buf = read_file(path);
  const std::string where = path.string() + ": ";
  if (buf.size() < kHeaderSize) throw IoError(where + "truncated header");
  if (!std::equal(kMagic.begin(), kMagic.end(), buf.begin())) throw IoError(where + "bad magic");
  if (get_le<std::uint32_t>(buf.data() + 8) != kShardVersion) throw IoError(where + "unsupported shard version");
  if (get_le<std::uint32_t>(buf.data() + 12) != node) {
    throw IoError(where + "holds node " + std::to_string(get_le<std::uint32_t>(buf.data() + 12)) + ", expected " +
                  std::to_string(node));
  }
  if (!std::equal(hash.begin(), hash.end(), buf.begin() + 16)) throw IoError(where + "metadata hash mismatch");
  const auto count = get_le<std::uint64_t>(buf.data() + 48);
  if (count != expected_count) {
    throw IoError(where + "holds " + std::to_string(count) + " symbols, expected " + std::to_string(expected_count));
  }
  if (buf.size() != kHeaderSize + 4 * count) throw IoError(where + "payload length does not match symbol count");
  NodeShard out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto v = get_le<std::uint32_t>(buf.data() + kHeaderSize + 4 * i);
    if (v >= q) throw IoError(where + "symbol " + std::to_string(i) + " is not a field element");
    out[i] = {v};
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace epsmsr::cli
