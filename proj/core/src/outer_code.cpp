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

#include "epsmsr/outer_code.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "epsmsr/errors.hpp"

namespace epsmsr {

std::size_t hamming_distance(const OuterWord& a, const OuterWord& b) {
  if (a.size() != b.size()) throw ParameterError("words of different lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

OuterCode::OuterCode(std::uint32_t t, std::size_t lambda, std::vector<OuterWord> words)
    : t_(t), lambda_(lambda), words_(std::move(words)) {
  if (t_ < 1) throw ParameterError("outer alphabet must be non-empty");
  if (lambda_ < 1) throw ParameterError("outer block length must be positive");
  if (words_.size() < 2) throw ParameterError("outer code needs at least two words");
  for (const auto& w : words_) {
    if (w.size() != lambda_) {
      throw ParameterError("outer word has " + std::to_string(w.size()) + " symbols, expected " +
                           std::to_string(lambda_));
    }
    for (auto sym : w) {
      if (sym >= t_) throw ParameterError("outer symbol " + std::to_string(sym) + " not below t=" + std::to_string(t_));
    }
  }
  min_distance_ = lambda_;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    for (std::size_t j = i + 1; j < words_.size(); ++j) {
      min_distance_ = std::min(min_distance_, hamming_distance(words_[i], words_[j]));
    }
  }
  if (min_distance_ == 0) throw ParameterError("outer code words repeat");
}

std::vector<std::uint32_t> OuterCode::column(std::size_t chunk) const {
  if (chunk >= lambda_) throw ParameterError("chunk " + std::to_string(chunk) + " out of range");
  std::vector<std::uint32_t> col;
  col.reserve(words_.size());
  for (const auto& w : words_) col.push_back(w[chunk]);
  return col;
}

OuterCode gv_greedy(std::uint32_t t, std::size_t lambda, double delta_target, std::size_t n_target) {
  if (!(delta_target > 0.0 && delta_target <= 1.0)) throw ParameterError("delta_target must lie in (0, 1]");
  if (t < 2) throw ParameterError("gv_greedy needs t >= 2");
  if (lambda < 1) throw ParameterError("gv_greedy needs lambda >= 1");
  if (n_target < 2) throw ParameterError("gv_greedy needs n_target >= 2");
  const auto threshold = static_cast<std::size_t>(std::ceil(delta_target * static_cast<double>(lambda) - 1e-9));

  std::vector<OuterWord> kept;
  OuterWord word(lambda, 0);
  for (;;) {
    bool far = true;
    for (const auto& w : kept) {
      if (hamming_distance(w, word) < threshold) {
        far = false;
        break;
      }
    }
    if (far) {
      kept.push_back(word);
      if (kept.size() == n_target) return OuterCode(t, lambda, std::move(kept));
    }
    // Odometer step, last symbol fastest.
    std::size_t pos = lambda;
    while (pos > 0 && word[pos - 1] + 1 == t) word[--pos] = 0;
    if (pos == 0) break;
    ++word[pos - 1];
  }
  throw CapacityError("only " + std::to_string(kept.size()) + " words over [" + std::to_string(t) + "]^" +
                          std::to_string(lambda) + " at distance >= " + std::to_string(threshold) +
                          ", wanted " + std::to_string(n_target),
                      kept.size());
}

double entropy_t(std::uint32_t t, double x) {
  if (t < 2) throw DomainError("entropy needs t >= 2");
  const double top = 1.0 - 1.0 / t;
  if (!(x >= 0.0 && x <= top + 1e-12)) throw DomainError("entropy argument outside [0, 1 - 1/t]");
  if (x == 0.0) return 0.0;
  const double lt = std::log(static_cast<double>(t));
  double h = x * std::log(static_cast<double>(t - 1)) / lt - x * std::log(x) / lt;
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x) / lt;
  return h;
}

double gv_size_estimate(std::uint32_t t, std::size_t lambda, double delta) {
  const double top = 1.0 - 1.0 / t;
  const double h = delta >= top ? 1.0 : entropy_t(t, delta);
  return std::pow(static_cast<double>(t), static_cast<double>(lambda) * (1.0 - h));
}

Fraction epsilon_of(const OuterCode& outer, std::uint32_t s) {
  if (s < 1) throw ParameterError("epsilon_of needs s >= 1");
  return (Fraction(1) - outer.delta()) * Fraction(static_cast<std::int64_t>(s) - 1);
}

}  // namespace epsmsr
