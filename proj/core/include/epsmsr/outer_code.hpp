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

// Outer codes over the alphabet {0, ..., t-1}. Word j assigns node j its
// coordinate in every chunk.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "epsmsr/array_code.hpp"

namespace epsmsr {

using OuterWord = std::vector<std::uint32_t>;

class OuterCode {
 public:
  // Throws ParameterError unless t >= 1, lambda >= 1, there are at least two
  // words, every word has lambda symbols below t and the words are distinct.
  OuterCode(std::uint32_t t, std::size_t lambda, std::vector<OuterWord> words);

  std::uint32_t t() const noexcept { return t_; }
  std::size_t lambda() const noexcept { return lambda_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<OuterWord>& words() const noexcept { return words_; }
  std::uint32_t symbol(std::size_t node, std::size_t chunk) const { return words_.at(node).at(chunk); }
  // Chunk b's column: the assignment of every node in that chunk.
  std::vector<std::uint32_t> column(std::size_t chunk) const;

  std::size_t min_distance() const noexcept { return min_distance_; }
  // min_distance / lambda.
  Fraction delta() const { return {static_cast<std::int64_t>(min_distance_), static_cast<std::int64_t>(lambda_)}; }

 private:
  std::uint32_t t_;
  std::size_t lambda_;
  std::vector<OuterWord> words_;
  std::size_t min_distance_ = 0;
};

std::size_t hamming_distance(const OuterWord& a, const OuterWord& b);

// Lexicographic greedy search over [t]^lambda keeping words at distance
// >= ceil(delta_target * lambda) from all kept ones. Throws CapacityError with
// the achieved size when fewer than n_target words exist.
OuterCode gv_greedy(std::uint32_t t, std::size_t lambda, double delta_target, std::size_t n_target);

// t-ary entropy. Throws DomainError outside [0, 1 - 1/t] or for t < 2.
double entropy_t(std::uint32_t t, double x);

// t^(lambda (1 - h_t(delta))).
double gv_size_estimate(std::uint32_t t, std::size_t lambda, double delta);

// (1 - delta)(s - 1).
Fraction epsilon_of(const OuterCode& outer, std::uint32_t s);

}  // namespace epsmsr
