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

#include "epsmsr/repair_plan.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr {

namespace {

std::vector<std::size_t> checked_contributors(const ArrayCode& code, std::size_t failed,
                                              std::span<const std::size_t> contributors,
                                              std::uint32_t step) {
  if (failed >= code.n()) throw ParameterError("failed node " + std::to_string(failed) + " out of range");
  std::vector<std::size_t> sorted(contributors.begin(), contributors.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ParameterError("contributing nodes repeat");
  }
  for (auto j : sorted) {
    if (j >= code.n()) throw ParameterError("contributing node " + std::to_string(j) + " out of range");
    if (j == failed) throw ParameterError("failed node " + std::to_string(j) + " cannot contribute");
  }
  if (step == 0 || code.shape().modulus() % step != 0) {
    throw ParameterError("repair step " + std::to_string(step) + " does not divide the group modulus " +
                         std::to_string(code.shape().modulus()));
  }
  if (sorted.size() + 1 < code.k() + step) {
    throw ParameterError(std::to_string(sorted.size()) + " contributors cannot support " +
                         std::to_string(step) + " repair equations with k=" +
                         std::to_string(code.k()));
  }
  return sorted;
}

AlgebraPolynomial excluded_annihilator(const ArrayCode& code, std::size_t failed,
                                       std::span<const std::size_t> sorted_contributors) {
  std::vector<AnnihilatorPoint> points;
  for (std::size_t l = 0; l < code.n(); ++l) {
    if (l == failed || std::binary_search(sorted_contributors.begin(), sorted_contributors.end(), l)) {
      continue;
    }
    points.push_back({code.alpha(l), GroupVector::unit(code.shape(), code.assignment()[l])});
  }
  return annihilator_poly(code.shape(), code.field(), points);
}

// (alpha_j x_{a_j})^m h(alpha_j x_{a_j}) for m < step.
std::vector<AlgebraElement> equation_operators(const ArrayCode& code, const AlgebraPolynomial& h,
                                               std::uint32_t step, std::size_t node) {
  const AlgebraElement base = code.node_element(node);
  std::vector<AlgebraElement> ops;
  ops.reserve(step);
  AlgebraElement current = h(base);
  for (std::uint32_t m = 0; m < step; ++m) {
    ops.push_back(current);
    current = current * base;
  }
  return ops;
}

FieldMatrix stacked_functionals(const SubspaceSelector& sel, std::span<const AlgebraElement> ops) {
  std::vector<FieldMatrix> parts;
  parts.reserve(ops.size());
  for (const auto& op : ops) parts.push_back(op.selected_representation(sel));
  return mat_stack(parts);
}

std::vector<std::uint32_t> column_support(const FieldMatrix& m) {
  std::vector<std::uint32_t> support;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m(r, c).value != 0) {
        support.push_back(static_cast<std::uint32_t>(c));
        break;
      }
    }
  }
  return support;
}

const HelperPayload& find_payload(std::span<const HelperPayload> payloads, std::size_t node) {
  for (const auto& p : payloads) {
    if (p.helper == node) return p;
  }
  throw ParameterError("no payload from node " + std::to_string(node));
}

}  // namespace

HelperPayload read_payload(std::size_t helper, std::span<const std::uint32_t> indices,
                           std::span<const FieldElement> stored) {
  HelperPayload p;
  p.helper = helper;
  p.accessed.assign(indices.begin(), indices.end());
  p.symbols.reserve(indices.size());
  for (auto idx : indices) {
    if (idx >= stored.size()) {
      throw ParameterError("node " + std::to_string(helper) + " has no symbol " + std::to_string(idx));
    }
    p.symbols.push_back(stored[idx]);
  }
  return p;
}

FieldMatrix repair_functionals(const ArrayCode& code, std::size_t failed,
                               std::span<const std::size_t> contributors, std::uint32_t step,
                               std::size_t node) {
  const auto sorted = checked_contributors(code, failed, contributors, step);
  const AlgebraPolynomial h = excluded_annihilator(code, failed, sorted);
  const SubspaceSelector sel = build_selector(code.shape(), code.assignment()[failed], step);
  const auto ops = equation_operators(code, h, step, node);
  return stacked_functionals(sel, ops);
}

NodeRepairPlan::NodeRepairPlan(const ArrayCode& code, std::size_t failed,
                               std::vector<std::size_t> contributors, std::uint32_t step)
    : failed_(failed),
      step_(step),
      selector_(build_selector(code.shape(),
                               code.assignment().at(failed < code.n() ? failed : 0),
                               step == 0 ? 1 : step)),
      recovery_(code.field(), 0, 0) {
  const auto sorted = checked_contributors(code, failed, contributors, step);
  const AlgebraPolynomial h = excluded_annihilator(code, failed, sorted);

  const FieldMatrix lhs = stacked_functionals(selector_, equation_operators(code, h, step, failed));
  FieldMatrix lhs_inv(code.field(), 0, 0);
  try {
    lhs_inv = invert(lhs);
  } catch (const SingularMatrixError&) {
    throw InternalError("stacked repair system for node " + std::to_string(failed) +
                        " is singular");
  }

  std::vector<FieldMatrix> blocks;
  for (std::size_t j : sorted) {
    const auto ops = equation_operators(code, h, step, j);
    const FieldMatrix full = stacked_functionals(selector_, ops);
    HelperRequest request{j, column_support(full)};
    const bool restricted = std::equal(request.indices.begin(), request.indices.end(),
                                       selector_.rows().begin(), selector_.rows().end());
    if (restricted) {
      std::vector<FieldMatrix> parts;
      for (const auto& op : ops) parts.push_back(restrict_operator(selector_, op));
      blocks.push_back(mat_stack(parts));
      routes_.push_back(HelperRoute::kRestricted);
    } else {
      std::vector<std::size_t> cols(request.indices.begin(), request.indices.end());
      blocks.push_back(full.select_cols(cols));
      routes_.push_back(HelperRoute::kSliced);
    }
    requests_.push_back(std::move(request));
  }
  const FieldMatrix rhs = blocks.empty() ? FieldMatrix(code.field(), code.ell(), 0) : mat_hcat(blocks);
  recovery_ = (lhs_inv * rhs).scaled(code.field().neg(code.field().one()));
}

NodeShard NodeRepairPlan::reconstruct(std::span<const HelperPayload> payloads) const {
  if (payloads.size() != requests_.size()) {
    throw ParameterError("expected " + std::to_string(requests_.size()) + " payloads, got " +
                         std::to_string(payloads.size()));
  }
  std::vector<FieldElement> stacked;
  stacked.reserve(recovery_.cols());
  for (const auto& request : requests_) {
    const HelperPayload& p = find_payload(payloads, request.node);
    if (p.accessed != request.indices || p.symbols.size() != p.accessed.size()) {
      throw ParameterError("payload from node " + std::to_string(request.node) +
                           " does not match its repair request");
    }
    stacked.insert(stacked.end(), p.symbols.begin(), p.symbols.end());
  }
  return recovery_.apply(stacked);
}

// ---------------------------------------------------------------------------

StripeRepairPlan::StripeRepairPlan(std::size_t n, std::size_t ell, std::vector<std::size_t> failed,
                                   std::vector<std::size_t> helpers, std::vector<Step> steps)
    : n_(n), ell_(ell), failed_(std::move(failed)), helpers_(std::move(helpers)), steps_(std::move(steps)) {
  std::sort(helpers_.begin(), helpers_.end());
  std::map<std::size_t, std::set<std::uint32_t>> wanted;
  for (auto j : helpers_) wanted[j];
  auto is_helper = [&](std::size_t j) { return wanted.count(j) != 0; };
  auto is_failed = [&](std::size_t j) {
    return std::find(failed_.begin(), failed_.end(), j) != failed_.end();
  };
  for (const auto& step : steps_) {
    if (const auto* plan = std::get_if<NodeRepairPlan>(&step.action)) {
      for (const auto& req : plan->requests()) {
        if (is_helper(req.node)) {
          for (auto idx : req.indices) wanted[req.node].insert(static_cast<std::uint32_t>(step.chunk_offset + idx));
        } else if (!is_failed(req.node)) {
          throw ParameterError("node " + std::to_string(req.node) + " is neither helper nor failed");
        }
      }
    } else {
      const auto& decode = std::get<DecodeStep>(step.action);
      for (auto j : helpers_) {
        for (std::size_t g = 0; g < decode.code.ell(); ++g) {
          wanted[j].insert(static_cast<std::uint32_t>(step.chunk_offset + g));
        }
      }
    }
  }
  for (auto& [node, idx] : wanted) requests_.push_back({node, {idx.begin(), idx.end()}});
}

std::vector<HelperPayload> StripeRepairPlan::collect(std::span<const NodeShard> stored) const {
  std::vector<HelperPayload> out;
  out.reserve(requests_.size());
  for (const auto& req : requests_) {
    if (req.node >= stored.size()) throw ParameterError("no stored data for helper " + std::to_string(req.node));
    out.push_back(read_payload(req.node, req.indices, stored[req.node]));
  }
  return out;
}

std::vector<NodeShard> StripeRepairPlan::reconstruct(std::span<const HelperPayload> payloads) const {
  // Dense views of what is known so far: helper downloads and rebuilt nodes.
  std::vector<std::vector<std::optional<FieldElement>>> known(n_);
  for (const auto& req : requests_) {
    const HelperPayload& p = find_payload(payloads, req.node);
    if (p.accessed != req.indices || p.symbols.size() != p.accessed.size()) {
      throw ParameterError("payload from node " + std::to_string(req.node) +
                           " does not match its repair request");
    }
    known[req.node].assign(ell_, std::nullopt);
    for (std::size_t i = 0; i < p.accessed.size(); ++i) known[req.node][p.accessed[i]] = p.symbols[i];
  }
  for (auto j : failed_) known[j].assign(ell_, std::nullopt);

  auto read = [&](std::size_t node, std::size_t at) -> FieldElement {
    const auto& v = known[node].empty() ? throw InternalError("node " + std::to_string(node) + " unknown")
                                        : known[node][at];
    if (!v) throw InternalError("symbol " + std::to_string(at) + " of node " + std::to_string(node) +
                                " unavailable during repair");
    return *v;
  };

  for (const auto& step : steps_) {
    if (const auto* plan = std::get_if<NodeRepairPlan>(&step.action)) {
      std::vector<HelperPayload> local;
      for (const auto& req : plan->requests()) {
        HelperPayload p{req.node, req.indices, {}};
        for (auto idx : req.indices) p.symbols.push_back(read(req.node, step.chunk_offset + idx));
        local.push_back(std::move(p));
      }
      const NodeShard chunk = plan->reconstruct(local);
      for (std::size_t g = 0; g < chunk.size(); ++g) known[plan->failed()][step.chunk_offset + g] = chunk[g];
    } else {
      const auto& decode = std::get<DecodeStep>(step.action);
      const std::size_t len = decode.code.ell();
      std::vector<std::optional<NodeShard>> slots(decode.code.n());
      for (std::size_t j = 0; j < decode.code.n(); ++j) {
        if (std::find(decode.targets.begin(), decode.targets.end(), j) != decode.targets.end()) continue;
        if (known[j].empty()) continue;
        NodeShard chunk(len);
        bool complete = true;
        for (std::size_t g = 0; g < len && complete; ++g) {
          const auto& v = known[j][step.chunk_offset + g];
          if (!v) complete = false; else chunk[g] = *v;
        }
        if (complete) slots[j] = std::move(chunk);
      }
      const Codeword word = decode.code.erase_decode(slots);
      for (auto t : decode.targets) {
        for (std::size_t g = 0; g < len; ++g) known[t][step.chunk_offset + g] = word.nodes[t][g];
      }
    }
  }

  std::vector<NodeShard> out;
  for (auto j : failed_) {
    NodeShard shard(ell_);
    for (std::size_t g = 0; g < ell_; ++g) shard[g] = read(j, g);
    out.push_back(std::move(shard));
  }
  return out;
}

RepairTranscript make_transcript(std::string construction, const StripeRepairPlan& plan,
                                 std::span<const HelperPayload> payloads,
                                 std::span<const NodeShard> stored, const Fraction& bound) {
  RepairTranscript t;
  t.construction = std::move(construction);
  t.failed = plan.failed();
  t.helpers = plan.helpers();
  t.ell = plan.ell();
  t.bound_exact = bound;
  t.bound = static_cast<std::size_t>(ceil_fraction(bound));
  t.help_by_transfer = true;
  for (const auto& req : plan.requests()) {
    const HelperPayload& p = find_payload(payloads, req.node);
    HelperTraffic traffic;
    traffic.node = req.node;
    traffic.accessed = p.accessed;
    traffic.transmitted = p.symbols.size();
    traffic.help_by_transfer = p.accessed == req.indices && p.symbols.size() == p.accessed.size();
    if (traffic.help_by_transfer && !stored.empty()) {
      const NodeShard& src = stored[req.node];
      for (std::size_t i = 0; i < p.accessed.size(); ++i) {
        if (p.accessed[i] >= src.size() || !(src[p.accessed[i]] == p.symbols[i])) {
          traffic.help_by_transfer = false;
          break;
        }
      }
    }
    t.help_by_transfer = t.help_by_transfer && traffic.help_by_transfer;
    t.total_transmitted += traffic.transmitted;
    t.max_transmitted = std::max(t.max_transmitted, traffic.transmitted);
    t.traffic.push_back(std::move(traffic));
  }
  t.within_bound = t.max_transmitted <= t.bound;
  return t;
}

}  // namespace epsmsr
