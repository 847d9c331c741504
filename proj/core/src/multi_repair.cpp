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

#include "epsmsr/multi_repair.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"
#include "epsmsr/parallel.hpp"

namespace epsmsr {

std::uint64_t lcm_up_to(std::uint32_t r) {
  if (r < 1) throw ParameterError("lcm_up_to needs r >= 1");
  std::uint64_t acc = 1;
  for (std::uint64_t i = 2; i <= r; ++i) acc = std::lcm(acc, i);
  return acc;
}

namespace {

std::uint32_t checked_zeta(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n) throw ParameterError("multi code needs 1 <= k < n");
  const std::uint64_t z = lcm_up_to(static_cast<std::uint32_t>(n - k));
  if (z > (1u << 16)) throw ParameterError("zeta=" + std::to_string(z) + " is too large");
  return static_cast<std::uint32_t>(z);
}

// Field conditions beyond what ArrayCode checks for zeta.
std::string field_defect(const FieldSpec& field, std::size_t n, std::size_t r, std::uint32_t zeta) {
  const std::uint32_t q = field.modulus();
  const std::uint64_t g = std::gcd<std::uint64_t>(zeta, q - 1);
  if (static_cast<std::uint64_t>(q) < g * n + 1) {
    return "q=" + std::to_string(q) + " is below gcd(zeta, q-1) n + 1";
  }
  if (n > q - 1) return "q=" + std::to_string(q) + " has fewer than n nonzero elements";
  for (std::uint32_t m = 2; m <= r; ++m) {
    if (!verify_root_condition(field, n, m)) {
      return "GF(" + std::to_string(q) + ") fails the root condition for step modulus " + std::to_string(m);
    }
  }
  if (zeta >= 2 && !verify_root_condition(field, n, zeta)) {
    return "GF(" + std::to_string(q) + ") fails the root condition for zeta=" + std::to_string(zeta);
  }
  return {};
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> nodes, std::size_t n, const char* what) {
  std::vector<std::size_t> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ParameterError(std::string(what) + " nodes repeat");
  }
  for (auto j : out) {
    if (j >= n) throw ParameterError(std::string(what) + " node " + std::to_string(j) + " out of range");
  }
  return out;
}

void check_admissible(const MultiCode& code, std::span<const std::size_t> failed,
                      std::span<const std::size_t> helpers) {
  const auto f = sorted_unique(failed, code.n(), "failed");
  const auto d = sorted_unique(helpers, code.n(), "helper");
  if (f.empty()) throw ParameterError("no failed nodes");
  if (f.size() > code.r()) {
    throw ParameterError(std::to_string(f.size()) + " failures exceed r=" + std::to_string(code.r()));
  }
  if (d.size() < code.k() || d.size() > code.n() - f.size()) {
    throw ParameterError("helper count " + std::to_string(d.size()) + " outside [k, n - h] = [" +
                         std::to_string(code.k()) + ", " + std::to_string(code.n() - f.size()) + "]");
  }
  for (auto j : d) {
    if (std::binary_search(f.begin(), f.end(), j)) {
      throw ParameterError("node " + std::to_string(j) + " is both failed and a helper");
    }
  }
}

FailureClasses classify(std::span<const std::uint32_t> column, std::span<const std::size_t> failed,
                        std::size_t k, std::size_t d) {
  std::map<std::uint32_t, std::vector<std::size_t>> by_symbol;
  for (auto i : failed) by_symbol[column[i]].push_back(i);
  FailureClasses out;
  std::uint32_t mu = 1;
  for (auto& [sym, nodes] : by_symbol) {
    std::sort(nodes.begin(), nodes.end());
    out.symbols.push_back(sym);
    out.classes.push_back(std::move(nodes));
    out.moduli.push_back(static_cast<std::uint32_t>(d - k) + mu++);
  }
  return out;
}

// Steps for one chunk at offset 0.
std::vector<StripeRepairPlan::Step> chunk_steps(const ArrayCode& chunk, std::span<const std::size_t> failed,
                                                std::span<const std::size_t> helpers) {
  std::vector<StripeRepairPlan::Step> steps;
  const std::size_t d = helpers.size();
  if (failed.size() == chunk.r() && d == chunk.k()) {
    steps.push_back({0, StripeRepairPlan::DecodeStep{chunk, {failed.begin(), failed.end()}}});
    return steps;
  }
  const FailureClasses fc = classify(chunk.assignment(), failed, chunk.k(), d);
  std::vector<std::size_t> contributors(helpers.begin(), helpers.end());
  for (std::size_t mu = 0; mu < fc.z(); ++mu) {
    for (auto i : fc.classes[mu]) steps.push_back({0, NodeRepairPlan(chunk, i, contributors, fc.moduli[mu])});
    contributors.push_back(fc.classes[mu].front());
  }
  return steps;
}

}  // namespace

MultiCode::MultiCode(std::size_t n, std::size_t k, OuterCode outer, FieldSpec field)
    : n_(n), k_(k), zeta_(checked_zeta(n, k)), outer_(std::move(outer)), field_(field) {
  if (outer_.size() != n_) {
    throw ParameterError("outer code has " + std::to_string(outer_.size()) + " words for " +
                         std::to_string(n_) + " nodes");
  }
  if (outer_.t() > n_) throw ParameterError("outer alphabet t=" + std::to_string(outer_.t()) + " exceeds n");
  if (auto defect = field_defect(field_, n_, r(), zeta_); !defect.empty()) throw ParameterError(defect);
  const GroupShape shape(zeta_, outer_.t());
  std::map<std::vector<std::uint32_t>, std::size_t> seen;
  for (std::size_t b = 0; b < outer_.lambda(); ++b) {
    auto col = outer_.column(b);
    auto [it, fresh] = seen.emplace(col, chunks_.size());
    if (fresh) chunks_.emplace_back(n_, k_, shape, std::move(col), field_);
    chunk_code_.push_back(it->second);
  }
}

FieldSpec MultiCode::select_field(std::size_t n, std::size_t k) {
  const std::uint32_t zeta = checked_zeta(n, k);
  FieldSpec field = epsmsr::select_field(n, zeta);
  for (std::uint64_t q = field.modulus();; ++q) {
    if (q >= (1ull << 31)) throw ParameterError("no field below 2^31 fits n=" + std::to_string(n));
    if (!is_prime(q)) continue;
    const auto qq = static_cast<std::uint32_t>(q);
    FieldSpec candidate = qq == field.modulus() ? field : FieldSpec(qq, find_primitive_element(qq).value);
    if (field_defect(candidate, n, n - k, zeta).empty()) return candidate;
  }
}

Codeword MultiCode::encode(std::span<const FieldElement> message) const {
  if (message.size() != k_ * ell()) {
    throw ParameterError("message has " + std::to_string(message.size()) + " symbols, expected " +
                         std::to_string(k_ * ell()));
  }
  const std::size_t len = chunk_len();
  std::vector<Codeword> parts(lambda());
  parallel_for(lambda(), [&](std::size_t b) {
    parts[b] = chunk(b).encode(message.subspan(b * k_ * len, k_ * len));
  });
  Codeword word;
  word.nodes.assign(n_, NodeShard(ell()));
  for (std::size_t b = 0; b < lambda(); ++b) {
    for (std::size_t j = 0; j < n_; ++j) {
      std::copy(parts[b].nodes[j].begin(), parts[b].nodes[j].end(), word.nodes[j].begin() + b * len);
    }
  }
  return word;
}

bool MultiCode::is_codeword(const Codeword& word) const {
  if (word.nodes.size() != n_) throw ParameterError("codeword has the wrong number of nodes");
  const auto parts = split_chunks(word.nodes, lambda(), chunk_len());
  for (std::size_t b = 0; b < lambda(); ++b) {
    if (!chunk(b).is_codeword(Codeword{parts[b]})) return false;
  }
  return true;
}

Codeword MultiCode::erase_decode(std::span<const std::optional<NodeShard>> nodes) const {
  if (nodes.size() != n_) throw ParameterError("erase_decode: expected " + std::to_string(n_) + " node slots");
  const std::size_t len = chunk_len();
  std::size_t missing = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (!nodes[j]) {
      ++missing;
    } else if (nodes[j]->size() != ell()) {
      throw ParameterError("erase_decode: node " + std::to_string(j) + " has wrong length");
    }
  }
  if (missing > r()) {
    throw UnrecoverableError(std::to_string(missing) + " erasures exceed r=" + std::to_string(r()));
  }
  std::vector<Codeword> parts(lambda());
  parallel_for(lambda(), [&](std::size_t b) {
    std::vector<std::optional<NodeShard>> slots(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (nodes[j]) slots[j] = NodeShard(nodes[j]->begin() + b * len, nodes[j]->begin() + (b + 1) * len);
    }
    parts[b] = chunk(b).erase_decode(slots);
  });
  Codeword word;
  word.nodes.assign(n_, NodeShard(ell()));
  for (std::size_t b = 0; b < lambda(); ++b) {
    for (std::size_t j = 0; j < n_; ++j) {
      std::copy(parts[b].nodes[j].begin(), parts[b].nodes[j].end(), word.nodes[j].begin() + b * len);
    }
  }
  return word;
}

Fraction MultiCode::bandwidth_bound_exact(std::size_t h, std::size_t d) const {
  if (h < 1 || d < k_) throw ParameterError("bound needs h >= 1 and d >= k");
  const auto dk = static_cast<std::int64_t>(d - k_);
  const Fraction eps = (Fraction(1) - outer_.delta()) * Fraction(dk);
  return (Fraction(1) + eps) *
         Fraction(static_cast<std::int64_t>(h * ell()), dk + static_cast<std::int64_t>(h));
}

FailureClasses classify_failures(const MultiCode& code, std::span<const std::size_t> failed, std::size_t chunk,
                                 std::size_t d) {
  const auto f = sorted_unique(failed, code.n(), "failed");
  if (f.empty()) throw ParameterError("no failed nodes");
  if (f.size() > code.r()) {
    throw ParameterError(std::to_string(f.size()) + " failures exceed r=" + std::to_string(code.r()));
  }
  if (d < code.k()) throw ParameterError("d must be at least k");
  return classify(code.outer().column(chunk), f, code.k(), d);
}

std::size_t union_dimension(std::uint32_t zeta, std::uint32_t t, std::span<const std::uint32_t> moduli,
                            std::span<const std::uint32_t> coords) {
  if (moduli.size() != coords.size()) throw ParameterError("moduli and coordinates differ in count");
  for (auto s : moduli) {
    if (s == 0 || zeta % s != 0) throw ParameterError("step " + std::to_string(s) + " does not divide zeta");
  }
  for (auto w : coords) {
    if (w >= t) throw ParameterError("coordinate " + std::to_string(w) + " exceeds t");
  }
  const GroupShape shape(zeta, t);
  std::size_t count = 0;
  for (GroupIndex g = 0; g < shape.order(); ++g) {
    for (std::size_t mu = 0; mu < moduli.size(); ++mu) {
      if (shape.digit(g, coords[mu]) % moduli[mu] == 0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

StripeRepairPlan plan_repair_multi(const MultiCode& code, std::span<const std::size_t> failed,
                                   std::span<const std::size_t> helpers) {
  check_admissible(code, failed, helpers);
  std::vector<std::size_t> f(failed.begin(), failed.end());
  std::vector<std::size_t> d(helpers.begin(), helpers.end());
  std::sort(f.begin(), f.end());
  std::sort(d.begin(), d.end());
  std::vector<std::vector<StripeRepairPlan::Step>> per_code(code.chunks_.size());
  parallel_for(code.chunks_.size(), [&](std::size_t c) { per_code[c] = chunk_steps(code.chunks_[c], f, d); });
  std::vector<StripeRepairPlan::Step> steps;
  for (std::size_t b = 0; b < code.lambda(); ++b) {
    for (const auto& step : per_code[code.chunk_code_[b]]) {
      steps.push_back({b * code.chunk_len(), step.action});
    }
  }
  return StripeRepairPlan(code.n(), code.ell(), std::move(f), std::move(d), std::move(steps));
}

RepairOutcome sequential_repair_chunk(const MultiCode& code, std::span<const std::size_t> failed,
                                      std::span<const std::size_t> helpers, std::size_t chunk,
                                      std::span<const NodeShard> chunk_shards) {
  check_admissible(code, failed, helpers);
  if (chunk_shards.size() != code.n()) throw ParameterError("expected chunk data for every node slot");
  std::vector<std::size_t> f(failed.begin(), failed.end());
  std::vector<std::size_t> d(helpers.begin(), helpers.end());
  std::sort(f.begin(), f.end());
  std::sort(d.begin(), d.end());
  const ArrayCode& array = code.chunk(chunk);
  StripeRepairPlan plan(code.n(), array.ell(), f, d, chunk_steps(array, f, d));
  const auto payloads = plan.collect(chunk_shards);
  RepairOutcome out;
  out.contents = plan.reconstruct(payloads);
  const auto dk = static_cast<std::int64_t>(d.size() - code.k());
  const Fraction bound(static_cast<std::int64_t>(f.size() * array.ell()), dk + static_cast<std::int64_t>(f.size()));
  out.transcript = make_transcript("multi-chunk", plan, payloads, chunk_shards, bound);
  return out;
}

RepairOutcome repair_multi(const MultiCode& code, std::span<const std::size_t> failed,
                           std::span<const std::size_t> helpers, std::span<const NodeShard> stored) {
  if (stored.size() != code.n()) throw ParameterError("expected shards for all " + std::to_string(code.n()) + " nodes");
  const StripeRepairPlan plan = plan_repair_multi(code, failed, helpers);
  const auto payloads = plan.collect(stored);
  RepairOutcome out;
  out.contents = plan.reconstruct(payloads);
  out.transcript = make_transcript("multi", plan, payloads, stored,
                                   code.bandwidth_bound_exact(plan.failed().size(), plan.helpers().size()));
  return out;
}

}  // namespace epsmsr
