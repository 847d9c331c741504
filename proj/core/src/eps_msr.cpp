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

#include "epsmsr/eps_msr.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"
#include "epsmsr/parallel.hpp"

namespace epsmsr {

std::vector<std::vector<NodeShard>> split_chunks(std::span<const NodeShard> shards, std::size_t lambda,
                                                 std::size_t chunk_len) {
  std::vector<std::vector<NodeShard>> out(lambda, std::vector<NodeShard>(shards.size()));
  for (std::size_t j = 0; j < shards.size(); ++j) {
    if (shards[j].size() != lambda * chunk_len) {
      throw ParameterError("node " + std::to_string(j) + " holds " + std::to_string(shards[j].size()) +
                           " symbols, expected " + std::to_string(lambda * chunk_len));
    }
    for (std::size_t b = 0; b < lambda; ++b) {
      out[b][j].assign(shards[j].begin() + b * chunk_len, shards[j].begin() + (b + 1) * chunk_len);
    }
  }
  return out;
}

namespace {

std::size_t checked_d(std::size_t n, std::size_t k, std::size_t d, const OuterCode& outer) {
  if (k < 1 || k >= n) throw ParameterError("eps-MSR code needs 1 <= k < n");
  if (d <= k) throw ParameterError("eps-MSR code needs s = d - k + 1 >= 2");
  if (d >= n) throw ParameterError("eps-MSR code needs d < n");
  if (outer.size() != n) {
    throw ParameterError("outer code has " + std::to_string(outer.size()) + " words for " +
                         std::to_string(n) + " nodes");
  }
  if (outer.t() > n) throw ParameterError("outer alphabet t=" + std::to_string(outer.t()) + " exceeds n");
  return d;
}

}  // namespace

EpsMsrCode::EpsMsrCode(std::size_t n, std::size_t k, std::size_t d, FieldSpec field, OuterCode outer)
    : n_(n), k_(k), d_(checked_d(n, k, d, outer)), field_(field), outer_(std::move(outer)) {
  if (!verify_root_condition(field_, n_, s())) {
    throw ParameterError("GF(" + std::to_string(field_.modulus()) + ") fails the root condition for n=" +
                         std::to_string(n_) + ", s=" + std::to_string(s()));
  }
  const GroupShape shape(s(), outer_.t());
  std::map<std::vector<std::uint32_t>, std::size_t> seen;
  for (std::size_t b = 0; b < outer_.lambda(); ++b) {
    auto col = outer_.column(b);
    auto [it, fresh] = seen.emplace(col, chunks_.size());
    if (fresh) chunks_.emplace_back(n_, k_, shape, std::move(col), field_);
    chunk_code_.push_back(it->second);
  }
}

Codeword EpsMsrCode::encode(std::span<const FieldElement> message) const {
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

bool EpsMsrCode::is_codeword(const Codeword& word) const {
  if (word.nodes.size() != n_) throw ParameterError("codeword has the wrong number of nodes");
  const auto parts = split_chunks(word.nodes, lambda(), chunk_len());
  for (std::size_t b = 0; b < lambda(); ++b) {
    if (!chunk(b).is_codeword(Codeword{parts[b]})) return false;
  }
  return true;
}

Codeword EpsMsrCode::erase_decode(std::span<const std::optional<NodeShard>> nodes) const {
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

FieldMatrix EpsMsrCode::global_parity_check() const {
  const std::size_t len = chunk_len();
  FieldMatrix h(field_, r() * ell(), n_ * ell());
  for (std::size_t i = 0; i < r(); ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t b = 0; b < lambda(); ++b) {
        h.set_block(i * ell() + b * len, j * ell() + b * len, chunk(b).parity_block(i, j));
      }
    }
  }
  return h;
}

StripeRepairPlan EpsMsrCode::plan_repair(std::size_t i, std::span<const std::size_t> helpers) const {
  if (helpers.size() != d_) {
    throw ParameterError("repair needs exactly d=" + std::to_string(d_) + " helpers, got " +
                         std::to_string(helpers.size()));
  }
  std::vector<std::size_t> contributors(helpers.begin(), helpers.end());
  // One plan per distinct chunk code; chunks sharing a code share the plan.
  std::vector<std::optional<NodeRepairPlan>> plans(chunks_.size());
  parallel_for(chunks_.size(), [&](std::size_t c) {
    plans[c].emplace(chunks_[c], i, contributors, s());
  });
  std::vector<StripeRepairPlan::Step> steps;
  steps.reserve(lambda());
  for (std::size_t b = 0; b < lambda(); ++b) {
    steps.push_back({b * chunk_len(), *plans[chunk_code_[b]]});
  }
  return StripeRepairPlan(n_, ell(), {i}, std::move(contributors), std::move(steps));
}

Fraction EpsMsrCode::bandwidth_bound_exact() const {
  return (Fraction(1) + epsilon()) * Fraction(static_cast<std::int64_t>(ell()), s());
}

RepairOutcome repair(const EpsMsrCode& code, std::size_t i, std::span<const std::size_t> helpers,
                     std::span<const NodeShard> stored) {
  if (stored.size() != code.n()) throw ParameterError("expected shards for all " + std::to_string(code.n()) + " nodes");
  const StripeRepairPlan plan = code.plan_repair(i, helpers);
  const auto payloads = plan.collect(stored);
  RepairOutcome out;
  out.contents = plan.reconstruct(payloads);
  out.transcript = make_transcript("eps-msr", plan, payloads, stored, code.bandwidth_bound_exact());
  return out;
}

}  // namespace epsmsr
