// Copyright 2026 The qregress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QREGRESS_TIMER_HPP
#define QREGRESS_TIMER_HPP

#include <chrono>

namespace qregress {

/// Monotonic wall clock, captured in microseconds and reported in ms.
class Stopwatch {
 public:
  using Clock = std::chrono::steady_clock;

  Stopwatch() : start_(Clock::now()) {}

  void reset() { start_ = Clock::now(); }

  double elapsed_ms() const {
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start_);
    return static_cast<double>(us.count()) / 1000.0;
  }

 private:
  Clock::time_point start_;
};

}  // namespace qregress

#endif  // QREGRESS_TIMER_HPP
