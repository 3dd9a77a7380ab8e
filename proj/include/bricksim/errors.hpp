// Copyright 2026 The bricksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BRICKSIM_ERRORS_HPP
#define BRICKSIM_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bricksim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad argument, malformed input file, or violated precondition.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// (I - D) in the feedback solve is numerically singular: a lossless loop is
/// exactly on resonance. `cycle()` lists the internal ports carrying the
/// resonant mode, in propagation order.
class SingularFeedback : public Error {
   public:
    SingularFeedback(std::string message, std::vector<std::string> cycle, double condition)
        : Error(std::move(message)), cycle_(std::move(cycle)), condition_(condition) {}

    const std::vector<std::string> &cycle() const noexcept { return cycle_; }
    double condition() const noexcept { return condition_; }

   private:
    std::vector<std::string> cycle_;
    double condition_;
};

/// The Fock space to enumerate is larger than the configured cap.
class StateSpaceTooLarge : public Error {
   public:
    StateSpaceTooLarge(std::uint64_t count, std::uint64_t cap)
        : Error("state space too large: " + std::to_string(count) + " outcomes exceed cap " +
                std::to_string(cap)),
          count_(count),
          cap_(cap) {}

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t cap() const noexcept { return cap_; }

   private:
    std::uint64_t count_;
    std::uint64_t cap_;
};

/// A derived quantity is undefined, e.g. the visibility of an all-zero scan.
class DegenerateResult : public Error {
   public:
    using Error::Error;
};

}  // namespace bricksim

#endif  // BRICKSIM_ERRORS_HPP
