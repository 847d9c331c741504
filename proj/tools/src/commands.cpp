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

#include "epsmsr_cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "epsmsr/errors.hpp"
#include "epsmsr_cli/storage.hpp"

namespace epsmsr::cli {

namespace fs = std::filesystem;

namespace {

std::string fraction_text(const Fraction& f) {
  if (f.denominator() == 1) return std::to_string(f.numerator());
  return std::to_string(f.numerator()) + "/" + std::to_string(f.denominator());
}

std::string node_list(std::span<const std::size_t> nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? ";" : "") + std::to_string(nodes[i]);
  return s;
}

struct Store {
  CodecMetadata meta;
  Codec codec;
  std::array<std::uint8_t, 32> hash;

  explicit Store(const fs::path& dir)
      : meta(load_metadata(dir / "codec.json")), codec(meta), hash(metadata_hash(meta)) {}

  std::uint64_t shard_len() const { return meta.stripes * codec.ell(); }

  NodeShard read(const fs::path& dir, std::size_t node) const {
    return read_shard(shard_path(dir, node), node, hash, shard_len(), meta.q);
  }

  // The ell symbols of one stripe.
  NodeShard slice(const NodeShard& shard, std::uint64_t stripe) const {
    const std::size_t ell = codec.ell();
    return NodeShard(shard.begin() + static_cast<std::ptrdiff_t>(stripe * ell),
                     shard.begin() + static_cast<std::ptrdiff_t>((stripe + 1) * ell));
  }
};

std::vector<std::size_t> check_nodes(std::span<const std::size_t> nodes, std::size_t n, const char* what) {
  std::vector<std::size_t> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ParameterError(std::string(what) + " nodes repeat");
  for (auto j : out) {
    if (j >= n) throw ParameterError(std::string(what) + " node " + std::to_string(j) + " out of range");
  }
  return out;
}

void check_repair_sets(const Codec& codec, std::span<const std::size_t> failed, std::span<const std::size_t> helpers) {
  const auto f = check_nodes(failed, codec.n(), "failed");
  const auto d = check_nodes(helpers, codec.n(), "helper");
  if (f.empty()) throw ParameterError("no failed nodes given");
  for (auto j : d) {
    if (std::binary_search(f.begin(), f.end(), j)) {
      throw ParameterError("node " + std::to_string(j) + " is listed as both failed and helper");
    }
  }
  const auto degrees = codec.repair_degrees(f.size());
  if (degrees.empty()) {
    throw ParameterError(codec.metadata().construction + " code cannot repair " + std::to_string(f.size()) +
                         " failures");
  }
  if (std::find(degrees.begin(), degrees.end(), d.size()) == degrees.end()) {
    std::string allowed;
    for (auto x : degrees) allowed += (allowed.empty() ? "" : ",") + std::to_string(x);
    throw ParameterError("repairing " + std::to_string(f.size()) + " node(s) needs a helper count in {" + allowed +
                         "}, got " + std::to_string(d.size()));
  }
}

}  // namespace

CodecMetadata load_metadata(const fs::path& path) {
  const auto bytes = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes.begin(), bytes.end());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return metadata_from_json(j);
}

void save_metadata(const fs::path& path, const CodecMetadata& meta) {
  const std::string text = to_json(meta).dump(2) + "\n";
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void describe(const Codec& codec, std::ostream& out) {
  const auto& m = codec.metadata();
  out << "construction " << m.construction << "\n";
  out << "n=" << m.n << " k=" << m.k << " t=" << m.t << " lambda=" << m.lambda << "\n";
  out << "q=" << m.q << " alpha=" << m.alpha << " ell=" << codec.ell() << " packing=" << m.bits_per_symbol
      << " bits/symbol\n";
  if (m.construction == "base") {
    out << "s=" << m.modulus << " d=" << m.d << "\n";
    return;
  }
  const OuterCode outer(m.t, m.lambda, m.outer);
  out << "outer min distance=" << outer.min_distance() << " delta=" << fraction_text(outer.delta()) << "\n";
  if (m.construction == "eps-msr") {
    const Fraction eps = codec.epsilon(m.d);
    const std::vector<std::size_t> one{0};
    std::vector<std::size_t> helpers;
    for (std::size_t j = 1; j <= m.d; ++j) helpers.push_back(j);
    const Fraction bound = codec.bound(one, helpers);
    out << "s=" << m.modulus << " d=" << m.d << " epsilon=" << fraction_text(eps) << "\n";
    out << "per-helper bound=" << ceil_fraction(bound) << " symbols ((1+eps) ell/s = " << fraction_text(bound) << ")\n";
    if (eps > 0) {
      const auto needed = (m.modulus - 1) / boost::rational_cast<double>(eps);
      if (m.t <= needed) out << "note: t=" << m.t << " does not exceed (s-1)/eps=" << needed << "\n";
    }
    return;
  }
  out << "zeta=" << m.modulus << "\n";
  for (std::size_t h = 1; h <= codec.r(); ++h) {
    for (auto d : codec.repair_degrees(h)) {
      std::vector<std::size_t> f(h), helpers(d);
      for (std::size_t i = 0; i < h; ++i) f[i] = i;
      for (std::size_t i = 0; i < d; ++i) helpers[i] = h + i;
      const Fraction bound = codec.bound(f, helpers);
      out << "h=" << h << " d=" << d << " epsilon=" << fraction_text(codec.epsilon(d))
          << " per-helper bound=" << ceil_fraction(bound) << "\n";
    }
  }
}

void cmd_encode(const fs::path& codec_json, const fs::path& input, const fs::path& out_dir) {
  CodecMetadata meta = load_metadata(codec_json);
  const Codec codec(meta);
  const auto bytes = read_file(input);
  const auto symbols = pack_bytes(bytes, meta.bits_per_symbol);
  const std::size_t per_stripe = codec.k() * codec.ell();
  meta.file_length = bytes.size();
  meta.stripes = (symbols.size() + per_stripe - 1) / per_stripe;

  std::vector<NodeShard> shards(codec.n());
  for (auto& s : shards) s.reserve(meta.stripes * codec.ell());
  std::vector<FieldElement> message(per_stripe);
  for (std::uint64_t st = 0; st < meta.stripes; ++st) {
    std::fill(message.begin(), message.end(), FieldElement{0});
    const std::size_t from = st * per_stripe;
    const std::size_t take = std::min(per_stripe, symbols.size() - from);
    std::copy_n(symbols.begin() + static_cast<std::ptrdiff_t>(from), take, message.begin());
    const Codeword word = codec.encode(message);
    for (std::size_t j = 0; j < codec.n(); ++j) shards[j].insert(shards[j].end(), word.nodes[j].begin(), word.nodes[j].end());
  }

  fs::create_directories(out_dir);
  save_metadata(out_dir / "codec.json", meta);
  const auto hash = metadata_hash(meta);
  for (std::size_t j = 0; j < codec.n(); ++j) write_shard(shard_path(out_dir, j), j, hash, shards[j]);
}

void cmd_decode(const fs::path& dir, const fs::path& output) {
  const Store store(dir);
  const Codec& codec = store.codec;
  std::vector<std::optional<NodeShard>> shards(codec.n());
  std::size_t present = 0;
  for (std::size_t j = 0; j < codec.n(); ++j) {
    if (!fs::exists(shard_path(dir, j))) continue;
    try {
      shards[j] = store.read(dir, j);
      ++present;
    } catch (const IoError& e) {
      std::cerr << "ignoring node " << j << ": " << e.what() << "\n";
    }
  }
  if (present < codec.k()) {
    throw UnrecoverableError("only " + std::to_string(present) + " usable shards, need k=" + std::to_string(codec.k()));
  }
  std::vector<FieldElement> symbols;
  symbols.reserve(store.meta.stripes * codec.k() * codec.ell());
  for (std::uint64_t st = 0; st < store.meta.stripes; ++st) {
    std::vector<std::optional<NodeShard>> slots(codec.n());
    for (std::size_t j = 0; j < codec.n(); ++j) {
      if (shards[j]) slots[j] = store.slice(*shards[j], st);
    }
    const auto msg = codec.message_of(codec.erase_decode(slots));
    symbols.insert(symbols.end(), msg.begin(), msg.end());
  }
  write_file(output, unpack_symbols(symbols, store.meta.bits_per_symbol, store.meta.file_length));
}

void cmd_fail(const fs::path& dir, std::span<const std::size_t> nodes) {
  for (auto j : nodes) {
    const fs::path from = shard_path(dir, j);
    if (!fs::exists(from)) throw IoError(from.string() + " does not exist");
    fs::path to = from;
    to += ".lost";
    fs::rename(from, to);
  }
}

nlohmann::json transcript_to_json(const RepairTranscript& t, const Fraction& epsilon, std::uint64_t stripes) {
  nlohmann::json helpers = nlohmann::json::array();
  for (const auto& h : t.traffic) {
    helpers.push_back({{"node", h.node},
                       {"accessed", h.accessed},
                       {"accessed_count", h.accessed.size()},
                       {"transmitted", h.transmitted},
                       {"help_by_transfer", h.help_by_transfer}});
  }
  return {{"construction", t.construction},
          {"failed", t.failed},
          {"helpers", t.helpers},
          {"ell", t.ell},
          {"stripes", stripes},
          {"epsilon", fraction_text(epsilon)},
          {"bound", t.bound},
          {"bound_exact", fraction_text(t.bound_exact)},
          {"per_helper", helpers},
          {"total_transmitted", t.total_transmitted},
          {"max_transmitted", t.max_transmitted},
          {"pass", {{"bandwidth", t.within_bound}, {"help_by_transfer", t.help_by_transfer}}}};
}

nlohmann::json cmd_repair(const fs::path& dir, std::span<const std::size_t> failed, std::span<const std::size_t> helpers,
                          const fs::path& transcript_path) {
  const Store store(dir);
  const Codec& codec = store.codec;
  check_repair_sets(codec, failed, helpers);
  const StripeRepairPlan plan = codec.plan(failed, helpers);
  const Fraction bound = codec.bound(failed, helpers);

  std::vector<NodeShard> full(codec.n());
  for (auto j : plan.helpers()) full[j] = store.read(dir, j);

  std::vector<NodeShard> rebuilt(plan.failed().size());
  std::optional<RepairTranscript> transcript;
  // An empty file still yields a transcript, from one all-zero stripe.
  const std::uint64_t rounds = std::max<std::uint64_t>(store.meta.stripes, 1);
  for (std::uint64_t st = 0; st < rounds; ++st) {
    std::vector<NodeShard> stored(codec.n());
    for (auto j : plan.helpers()) {
      stored[j] = store.meta.stripes ? store.slice(full[j], st) : NodeShard(codec.ell(), FieldElement{0});
    }
    const auto payloads = plan.collect(stored);
    const auto contents = plan.reconstruct(payloads);
    if (!transcript) transcript = make_transcript(codec.metadata().construction, plan, payloads, stored, bound);
    if (store.meta.stripes == 0) break;
    for (std::size_t x = 0; x < contents.size(); ++x) rebuilt[x].insert(rebuilt[x].end(), contents[x].begin(), contents[x].end());
  }
  for (std::size_t x = 0; x < plan.failed().size(); ++x) {
    write_shard(shard_path(dir, plan.failed()[x]), plan.failed()[x], store.hash, rebuilt[x]);
  }
  const auto json = transcript_to_json(*transcript, codec.epsilon(plan.helpers().size()), store.meta.stripes);
  const std::string text = json.dump(2) + "\n";
  write_file(transcript_path.empty() ? dir / "transcript.json" : transcript_path,
             {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
  return json;
}

nlohmann::json cmd_verify(const fs::path& dir, bool mds_exhaustive) {
  const Store store(dir);
  const Codec& codec = store.codec;
  nlohmann::json report;
  std::vector<std::size_t> missing, unreadable, corrupt;
  std::vector<NodeShard> shards(codec.n());
  for (std::size_t j = 0; j < codec.n(); ++j) {
    if (!fs::exists(shard_path(dir, j))) {
      missing.push_back(j);
      continue;
    }
    try {
      shards[j] = store.read(dir, j);
    } catch (const IoError& e) {
      unreadable.push_back(j);
      report["errors"].push_back(e.what());
    }
  }
  std::uint64_t bad_stripes = 0;
  bool unlocated = false;
  if (missing.empty() && unreadable.empty()) {
    for (std::uint64_t st = 0; st < store.meta.stripes; ++st) {
      Codeword word;
      for (const auto& s : shards) word.nodes.push_back(store.slice(s, st));
      if (codec.is_codeword(word)) continue;
      ++bad_stripes;
      if (const auto at = codec.locate_error(word)) {
        if (std::find(corrupt.begin(), corrupt.end(), *at) == corrupt.end()) corrupt.push_back(*at);
      } else {
        unlocated = true;
      }
    }
  }
  std::sort(corrupt.begin(), corrupt.end());
  report["stripes"] = store.meta.stripes;
  report["missing"] = missing;
  report["unreadable"] = unreadable;
  report["corrupt"] = corrupt;
  report["bad_stripes"] = bad_stripes;
  report["unlocated_corruption"] = unlocated;
  bool pass = missing.empty() && unreadable.empty() && bad_stripes == 0;
  if (mds_exhaustive) {
    if (codec.n() > 12 || codec.r() * codec.chunk_len() > 512) {
      throw ParameterError("--mds-exhaustive is limited to n <= 12 and r * chunk length <= 512");
    }
    const auto [checked, ok] = codec.verify_mds();
    report["mds"] = {{"submatrices", checked}, {"pass", ok}};
    pass = pass && ok;
  }
  report["pass"] = pass;
  return report;
}

void cmd_bench(const fs::path& codec_json, std::size_t h, std::uint64_t seed, std::ostream& csv) {
  const CodecMetadata meta = load_metadata(codec_json);
  const Codec codec(meta);
  const std::size_t n = codec.n();
  const auto degrees = codec.repair_degrees(h);
  if (degrees.empty()) throw ParameterError(meta.construction + " code cannot repair " + std::to_string(h) + " failures");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, meta.q - 1);
  std::vector<FieldElement> message(codec.k() * codec.ell());
  for (auto& x : message) x = {pick(rng)};
  const Codeword word = codec.encode(message);

  csv << "construction,failed,helpers,d,helper,accessed,transmitted,bound,within_bound,exact\n";
  for (std::uint64_t fm = 0; fm < (1ull << n); ++fm) {
    if (static_cast<std::size_t>(__builtin_popcountll(fm)) != h) continue;
    std::vector<std::size_t> failed;
    for (std::size_t j = 0; j < n; ++j) {
      if (fm >> j & 1) failed.push_back(j);
    }
    for (std::uint64_t dm = 0; dm < (1ull << n); ++dm) {
      if (dm & fm) continue;
      const auto d = static_cast<std::size_t>(__builtin_popcountll(dm));
      if (std::find(degrees.begin(), degrees.end(), d) == degrees.end()) continue;
      std::vector<std::size_t> helpers;
      for (std::size_t j = 0; j < n; ++j) {
        if (dm >> j & 1) helpers.push_back(j);
      }
      const StripeRepairPlan plan = codec.plan(failed, helpers);
      const auto payloads = plan.collect(word.nodes);
      const auto contents = plan.reconstruct(payloads);
      bool exact = true;
      for (std::size_t x = 0; x < failed.size(); ++x) exact = exact && contents[x] == word.nodes[failed[x]];
      const auto t = make_transcript(meta.construction, plan, payloads, word.nodes, codec.bound(failed, helpers));
      for (const auto& tr : t.traffic) {
        csv << meta.construction << ',' << node_list(failed) << ',' << node_list(helpers) << ',' << d << ','
            << tr.node << ',' << tr.accessed.size() << ',' << tr.transmitted << ',' << t.bound << ','
            << (tr.transmitted <= t.bound ? 1 : 0) << ',' << (exact ? 1 : 0) << '\n';
      }
    }
  }
}

}  // namespace epsmsr::cli
