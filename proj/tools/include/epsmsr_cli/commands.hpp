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

// The simulator's commands. Node indices are 0-based throughout.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "epsmsr_cli/codec.hpp"

namespace epsmsr::cli {

CodecMetadata load_metadata(const std::filesystem::path& path);
void save_metadata(const std::filesystem::path& path, const CodecMetadata& meta);

// Human-readable parameter summary printed by gen-params.
void describe(const Codec& codec, std::ostream& out);

// Packs the input, stripes it into k*ell symbols per stripe (zero padded) and
// writes out_dir/codec.json plus one shard per node.
void cmd_encode(const std::filesystem::path& codec_json, const std::filesystem::path& input,
                const std::filesystem::path& out_dir);

// Restores the original file from any k surviving shards.
void cmd_decode(const std::filesystem::path& dir, const std::filesystem::path& output);

// Renames node_<i>.shard to node_<i>.shard.lost.
void cmd_fail(const std::filesystem::path& dir, std::span<const std::size_t> nodes);

// Rebuilds the failed shards from the helpers' and writes transcript.json
// into the directory (or `transcript_path` when given). Returns the transcript.
nlohmann::json cmd_repair(const std::filesystem::path& dir, std::span<const std::size_t> failed,
                          std::span<const std::size_t> helpers, const std::filesystem::path& transcript_path = {});

// Parity check per stripe; names missing and corrupt nodes. With
// mds_exhaustive, also checks every r-subset of column blocks (refused when
// the code is too large).
nlohmann::json cmd_verify(const std::filesystem::path& dir, bool mds_exhaustive);

// Sweeps every admissible (F, D) with |F| = h on random data and writes one
// CSV row per helper.
void cmd_bench(const std::filesystem::path& codec_json, std::size_t h, std::uint64_t seed, std::ostream& csv);

nlohmann::json transcript_to_json(const RepairTranscript& t, const Fraction& epsilon, std::uint64_t stripes);

}  // namespace epsmsr::cli
