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

// Repair machinery shared by every construction.
//
// A failed node i of an ArrayCode is rebuilt from a set of contributing
// nodes using `step` parity equations. With h(X) the annihilator of the
// nodes that neither failed nor contribute, and S the selector
// {g : g(a_i) = 0 mod step}, equation m < step reads
//
//   S (alpha_i x_{a_i})^m h(alpha_i x_{a_i}) c_i
//       = - sum_{j contributing} S (alpha_j x_{a_j})^m h(alpha_j x_{a_j}) c_j.
//
// The stacked left-hand side is invertible. Contributor j has to supply the
// symbols in the column support of its stacked functionals. When S is
// invariant under those functionals that support is exactly S's rows and the
// contribution is computed through restricted operators acting on S c_j;
// otherwise the support grows and the contribution is computed by slicing
// the functionals to the transmitted columns. Either way the transmitted
// symbols are stored symbols read verbatim.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "epsmsr/array_code.hpp"
#include "epsmsr/group_algebra.hpp"
#include "epsmsr/matrix.hpp"

namespace epsmsr {

// Symbols a helper is asked to read and send, ascending.
struct HelperRequest {
  std::size_t node = 0;
  std::vector<std::uint32_t> indices;

  friend bool operator==(const HelperRequest&, const HelperRequest&) = default;
};

// What a helper sent: the accessed indices and the symbols read there.
struct HelperPayload {
  std::size_t helper = 0;
  std::vector<std::uint32_t> accessed;
  std::vector<FieldElement> symbols;
};

// Reads `indices` from `stored` verbatim.
HelperPayload read_payload(std::size_t helper, std::span<const std::uint32_t> indices,
                           std::span<const FieldElement> stored);

enum class HelperRoute {
  kRestricted,  // support equals the selector; restricted operators on S c_j
  kSliced,      // support exceeds the selector; functionals sliced to the support
};

// Stacked functionals [S (a_j)^0 h(a_j); ...; S (a_j)^{step-1} h(a_j)] of
// `node`, with a_j = alpha_j x_{a_j}: an ell x ell matrix. `node` may be the
// failed node itself, which yields the left-hand side.
FieldMatrix repair_functionals(const ArrayCode& code, std::size_t failed,
                               std::span<const std::size_t> contributors, std::uint32_t step,
                               std::size_t node);

class NodeRepairPlan {
 public:
  // Throws ParameterError when `failed` is among the contributors, indices
  // are out of range or repeated, `step` does not divide m, or fewer than
  // k + step - 1 nodes contribute. Throws InternalError if the stacked
  // left-hand side is singular.
  NodeRepairPlan(const ArrayCode& code, std::size_t failed, std::vector<std::size_t> contributors,
                 std::uint32_t step);

  std::size_t failed() const noexcept { return failed_; }
  std::uint32_t step() const noexcept { return step_; }
  const SubspaceSelector& selector() const noexcept { return selector_; }
  // One per contributor, ascending node order.
  const std::vector<HelperRequest>& requests() const noexcept { return requests_; }
  const std::vector<HelperRoute>& routes() const noexcept { return routes_; }

  // Payloads must match requests() one to one (any order).
  NodeShard reconstruct(std::span<const HelperPayload> payloads) const;

 private:
  std::size_t failed_;
  std::uint32_t step_;
  SubspaceSelector selector_;
  std::vector<HelperRequest> requests_;
  std::vector<HelperRoute> routes_;
  // c_i = recovery_ * concat(payload symbols in request order).
  FieldMatrix recovery_;
};

// Chunk-wise, possibly multi-step repair of one stripe (n nodes x ell
// symbols, chunk-major). Each step rebuilds nodes of one chunk either by a
// NodeRepairPlan or, for the (h = r, d = k) corner, by erasure decoding.
class StripeRepairPlan {
 public:
  struct DecodeStep {
    ArrayCode code;
    std::vector<std::size_t> targets;
  };
  struct Step {
    std::size_t chunk_offset = 0;
    std::variant<NodeRepairPlan, DecodeStep> action;
  };

  StripeRepairPlan(std::size_t n, std::size_t ell, std::vector<std::size_t> failed,
                   std::vector<std::size_t> helpers, std::vector<Step> steps);

  std::size_t n() const noexcept { return n_; }
  std::size_t ell() const noexcept { return ell_; }
  const std::vector<std::size_t>& failed() const noexcept { return failed_; }
  const std::vector<std::size_t>& helpers() const noexcept { return helpers_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  // One per helper, ascending node order; indices are stripe-level and
  // ascending. A helper is asked for each symbol once, even when several
  // steps use it.
  const std::vector<HelperRequest>& requests() const noexcept { return requests_; }

  std::vector<HelperPayload> collect(std::span<const NodeShard> stored) const;
  // Rebuilt contents, aligned with failed().
  std::vector<NodeShard> reconstruct(std::span<const HelperPayload> payloads) const;

 private:
  std::size_t n_;
  std::size_t ell_;
  std::vector<std::size_t> failed_;
  std::vector<std::size_t> helpers_;
  std::vector<Step> steps_;
  std::vector<HelperRequest> requests_;
};

struct HelperTraffic {
  std::size_t node = 0;
  std::vector<std::uint32_t> accessed;
  std::size_t transmitted = 0;
  bool help_by_transfer = false;
};

// Per-repair bandwidth and access accounting.
struct RepairTranscript {
  std::string construction;
  std::vector<std::size_t> failed;
  std::vector<std::size_t> helpers;
  std::size_t ell = 0;
  std::vector<HelperTraffic> traffic;
  std::size_t total_transmitted = 0;
  std::size_t max_transmitted = 0;
  Fraction bound_exact{0};
  std::size_t bound = 0;
  bool within_bound = false;
  bool help_by_transfer = false;
};

// Checks each payload against the plan and, when `stored` is non-empty,
// against the helpers' stored symbols.
RepairTranscript make_transcript(std::string construction, const StripeRepairPlan& plan,
                                 std::span<const HelperPayload> payloads,
                                 std::span<const NodeShard> stored, const Fraction& bound);

}  // namespace epsmsr
