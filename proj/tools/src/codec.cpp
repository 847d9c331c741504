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

#include "epsmsr_cli/codec.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr::cli {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

template <class T>
T required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("codec metadata lacks \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("codec metadata field \"") + key + "\": " + e.what());
  }
}

std::variant<BaseCode, EpsMsrCode, MultiCode> build(const CodecMetadata& m, const FieldSpec& field) {
  if (m.construction == "base") {
    if (m.d != m.k + m.modulus - 1) throw ParameterError("base code needs d = k + s - 1");
    return BaseCode(m.n, m.k, m.modulus, m.t, m.assignment, field);
  }
  if (m.construction == "eps-msr") {
    EpsMsrCode code(m.n, m.k, m.d, field, OuterCode(m.t, m.lambda, m.outer));
    if (code.s() != m.modulus) throw ParameterError("eps-msr metadata has s != d - k + 1");
    return code;
  }
  if (m.construction == "multi") {
    MultiCode code(m.n, m.k, OuterCode(m.t, m.lambda, m.outer), field);
    if (code.zeta() != m.modulus) throw ParameterError("multi metadata has zeta != lcm(1..r)");
    return code;
  }
  throw ParameterError("unknown construction \"" + m.construction + "\"");
}

std::vector<std::size_t> sorted(std::span<const std::size_t> v) {
  std::vector<std::size_t> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

void require_single(std::span<const std::size_t> failed, const std::string& construction) {
  if (failed.size() != 1) {
    throw ParameterError(construction + " codes repair one node at a time, got " + std::to_string(failed.size()) +
                         " failures");
  }
}

}  // namespace

std::uint32_t packing_bits(std::uint32_t q) {
  for (std::uint32_t b : {8u, 4u, 2u, 1u}) {
    if ((1ull << b) <= q) return b;
  }
  throw ParameterError("field too small to pack bits");
}

nlohmann::json to_json(const CodecMetadata& m) {
  nlohmann::json j;
  j["version"] = kMetadataVersion;
  j["construction"] = m.construction;
  j["n"] = m.n;
  j["k"] = m.k;
  j["t"] = m.t;
  j["lambda"] = m.lambda;
  j["q"] = m.q;
  j["alpha"] = m.alpha;
  j["packing"] = {{"bits_per_symbol", m.bits_per_symbol}, {"symbols_per_byte", 8 / m.bits_per_symbol}};
  j["file_length"] = m.file_length;
  j["stripes"] = m.stripes;
  if (m.construction == "multi") {
    j["zeta"] = m.modulus;
  } else {
    j["d"] = m.d;
    j["s"] = m.modulus;
  }
  if (m.construction == "base") {
    j["assignment"] = m.assignment;
  } else {
    j["outer"] = m.outer;
  }
  return j;
}

CodecMetadata metadata_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("codec metadata is not a JSON object");
  if (required<int>(j, "version") != kMetadataVersion) throw ParameterError("unsupported codec metadata version");
  CodecMetadata m;
  m.construction = required<std::string>(j, "construction");
  m.n = required<std::size_t>(j, "n");
  m.k = required<std::size_t>(j, "k");
  m.t = required<std::uint32_t>(j, "t");
  m.lambda = required<std::size_t>(j, "lambda");
  m.q = required<std::uint32_t>(j, "q");
  m.alpha = required<std::uint32_t>(j, "alpha");
  m.file_length = required<std::uint64_t>(j, "file_length");
  m.stripes = required<std::uint64_t>(j, "stripes");
  const auto packing = required<nlohmann::json>(j, "packing");
  m.bits_per_symbol = required<std::uint32_t>(packing, "bits_per_symbol");
  if (m.construction == "multi") {
    m.modulus = required<std::uint32_t>(j, "zeta");
  } else {
    m.d = required<std::size_t>(j, "d");
    m.modulus = required<std::uint32_t>(j, "s");
  }
  if (m.construction == "base") {
    m.assignment = required<std::vector<std::uint32_t>>(j, "assignment");
  } else {
    m.outer = required<std::vector<OuterWord>>(j, "outer");
  }
  if (m.bits_per_symbol != packing_bits(m.q)) {
    throw ParameterError("packing of " + std::to_string(m.bits_per_symbol) + " bits does not match q=" +
                         std::to_string(m.q));
  }
  return m;
}

std::array<std::uint8_t, 32> metadata_hash(const CodecMetadata& meta) {
  const std::string text = to_json(meta).dump();
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
    throw InternalError("SHA-256 failed");
  }
  return out;
}

std::string metadata_hash_hex(const CodecMetadata& meta) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  for (auto b : metadata_hash(meta)) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 15]);
  }
  return s;
}

Codec::Codec(const CodecMetadata& meta)
    : meta_(meta), field_(meta.q, meta.alpha), code_(build(meta_, field_)) {
  if (meta_.bits_per_symbol != packing_bits(meta_.q)) throw ParameterError("packing does not match the field");
}

std::size_t Codec::ell() const { return lambda() * chunk_len(); }

std::size_t Codec::lambda() const {
  return std::visit(Overload{[](const BaseCode&) -> std::size_t { return 1; },
                             [](const auto& c) -> std::size_t { return c.lambda(); }},
                    code_);
}

std::size_t Codec::chunk_len() const {
  return std::visit(Overload{[](const BaseCode& c) { return c.ell(); }, [](const auto& c) { return c.chunk_len(); }},
                    code_);
}

const ArrayCode& Codec::chunk(std::size_t b) const {
  return std::visit(Overload{[&](const BaseCode& c) -> const ArrayCode& {
                               if (b != 0) throw ParameterError("base codes have one chunk");
                               return c.array();
                             },
                             [&](const auto& c) -> const ArrayCode& { return c.chunk(b); }},
                    code_);
}

Fraction Codec::epsilon(std::size_t d) const {
  return std::visit(
      Overload{[](const BaseCode&) { return Fraction(0); },
               [](const EpsMsrCode& c) { return c.epsilon(); },
               [&](const MultiCode& c) {
                 return (Fraction(1) - c.outer().delta()) * Fraction(static_cast<std::int64_t>(d - c.k()));
               }},
      code_);
}

Codeword Codec::encode(std::span<const FieldElement> message) const {
  return std::visit(Overload{[&](const BaseCode& c) { return epsmsr::encode(c, message); },
                             [&](const auto& c) { return c.encode(message); }},
                    code_);
}

std::vector<FieldElement> Codec::message_of(const Codeword& word) const {
  const std::size_t len = chunk_len();
  std::vector<FieldElement> msg;
  msg.reserve(k() * ell());
  for (std::size_t b = 0; b < lambda(); ++b) {
    for (std::size_t j = 0; j < k(); ++j) {
      msg.insert(msg.end(), word.nodes.at(j).begin() + b * len, word.nodes.at(j).begin() + (b + 1) * len);
    }
  }
  return msg;
}

bool Codec::is_codeword(const Codeword& word) const {
  return std::visit(Overload{[&](const BaseCode& c) { return epsmsr::is_codeword(c, word); },
                             [&](const auto& c) { return c.is_codeword(word); }},
                    code_);
}

Codeword Codec::erase_decode(std::span<const std::optional<NodeShard>> nodes) const {
  return std::visit(Overload{[&](const BaseCode& c) { return epsmsr::erase_decode(c, nodes); },
                             [&](const auto& c) { return c.erase_decode(nodes); }},
                    code_);
}

std::optional<std::size_t> Codec::locate_error(const Codeword& word) const {
  const auto parts = split_chunks(word.nodes, lambda(), chunk_len());
  std::optional<std::size_t> found;
  for (std::size_t b = 0; b < lambda(); ++b) {
    const Codeword part{parts[b]};
    if (chunk(b).is_codeword(part)) continue;
    const auto at = chunk(b).locate_single_error(part);
    if (!at || (found && *found != *at)) return std::nullopt;
    found = at;
  }
  return found;
}

std::pair<std::size_t, bool> Codec::verify_mds() const {
  std::map<std::vector<std::uint32_t>, bool> seen;
  for (std::size_t b = 0; b < lambda(); ++b) {
    const ArrayCode& c = chunk(b);
    if (!seen.count(c.assignment())) seen[c.assignment()] = c.verify_mds();
  }
  // C(n, r) per distinct chunk code.
  std::size_t per = 1;
  for (std::size_t i = 0; i < r(); ++i) per = per * (n() - i) / (i + 1);
  bool ok = true;
  for (const auto& [a, v] : seen) ok = ok && v;
  return {per * seen.size(), ok};
}

StripeRepairPlan Codec::plan(std::span<const std::size_t> failed, std::span<const std::size_t> helpers) const {
  return std::visit(
      Overload{[&](const BaseCode& c) {
                 require_single(failed, "base");
                 std::vector<StripeRepairPlan::Step> steps;
                 steps.push_back({0, plan_repair(c, failed[0], helpers)});
                 return StripeRepairPlan(c.n(), c.ell(), {failed[0]}, sorted(helpers), std::move(steps));
               },
               [&](const EpsMsrCode& c) {
                 require_single(failed, "eps-msr");
                 return c.plan_repair(failed[0], helpers);
               },
               [&](const MultiCode& c) { return plan_repair_multi(c, failed, helpers); }},
      code_);
}

Fraction Codec::bound(std::span<const std::size_t> failed, std::span<const std::size_t> helpers) const {
  return std::visit(Overload{[&](const BaseCode& c) {
                               require_single(failed, "base");
                               Fraction worst(0);
                               for (auto j : helpers) worst = std::max(worst, repair_fraction(c, failed[0], j));
                               return worst * Fraction(static_cast<std::int64_t>(c.ell()));
                             },
                             [&](const EpsMsrCode& c) { return c.bandwidth_bound_exact(); },
                             [&](const MultiCode& c) { return c.bandwidth_bound_exact(failed.size(), helpers.size()); }},
                    code_);
}

std::vector<std::size_t> Codec::repair_degrees(std::size_t h) const {
  if (meta_.construction != "multi") return h == 1 ? std::vector<std::size_t>{meta_.d} : std::vector<std::size_t>{};
  std::vector<std::size_t> out;
  if (h < 1 || h > r()) return out;
  for (std::size_t d = k(); d + h <= n(); ++d) out.push_back(d);
  return out;
}

CodecMetadata generate_metadata(const GenParams& p) {
  CodecMetadata m;
  m.construction = p.construction;
  m.n = p.n;
  m.k = p.k;
  m.t = p.t;
  if (p.n < 2 || p.k < 1 || p.k >= p.n) throw ParameterError("need 1 <= k < n");
  std::optional<FieldSpec> field;
  if (p.construction == "base" || p.construction == "eps-msr") {
    if (p.d <= p.k || p.d >= p.n) throw ParameterError("need k < d < n");
    m.d = p.d;
    m.modulus = static_cast<std::uint32_t>(p.d - p.k + 1);
    field = select_field(p.n, m.modulus);
  } else if (p.construction == "multi") {
    m.modulus = static_cast<std::uint32_t>(lcm_up_to(static_cast<std::uint32_t>(p.n - p.k)));
    field = MultiCode::select_field(p.n, p.k);
  } else {
    throw ParameterError("unknown construction \"" + p.construction + "\"");
  }
  if (p.construction == "base") {
    m.lambda = 1;
    m.assignment = p.assignment;
    if (m.assignment.empty()) {
      for (std::size_t j = 0; j < p.n; ++j) m.assignment.push_back(static_cast<std::uint32_t>(j % std::max(1u, p.t)));
    }
  } else {
    m.lambda = p.lambda;
    m.outer = gv_greedy(p.t, p.lambda, p.delta_target, p.n).words();
  }
  m.q = field->modulus();
  m.alpha = field->primitive().value;
  m.bits_per_symbol = packing_bits(m.q);
  Codec check(m);
  return m;
}

}  // namespace epsmsr::cli
