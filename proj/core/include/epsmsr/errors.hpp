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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epsmsr {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied parameter violates a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Arithmetic outside an operation's domain (inverting zero, entropy outside [0, 1-1/t]).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class NoSolutionError : public Error {
 public:
  using Error::Error;
};

// A selector's row space is not invariant under the requested operator.
class InvarianceError : public Error {
 public:
  using Error::Error;
};

// More erasures than the code can correct.
class UnrecoverableError : public Error {
 public:
  using Error::Error;
};

// Greedy outer-code search ran out of candidates before reaching the target size.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t achieved)
      : Error(what), achieved_(achieved) {}

  std::size_t achieved() const noexcept { return achieved_; }

 private:
  std::size_t achieved_;
};

// An internal invariant that must hold for every valid input did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace epsmsr
