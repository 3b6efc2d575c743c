// Copyright 2026 The TNG Solver Authors
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

#ifndef TNG_COST_H_
#define TNG_COST_H_

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace tng {

// A non-negative integer cost extended with +infinity. Infinity absorbs under
// addition and compares greater than every finite value.
class Cost {
 public:
  constexpr Cost() = default;
  constexpr explicit Cost(int64_t value) : value_(value) {}

  static constexpr Cost Infinite() { return Cost(kInfinity); }

  constexpr bool IsFinite() const { return value_ != kInfinity; }
  constexpr bool IsInfinite() const { return value_ == kInfinity; }
  // Only meaningful for finite costs.
  constexpr int64_t value() const { return value_; }

  friend constexpr Cost operator+(Cost a, Cost b) {
    if (a.IsInfinite() || b.IsInfinite()) return Infinite();
    if (a.value_ > kInfinity - 1 - b.value_) return Infinite();
    return Cost(a.value_ + b.value_);
  }
  constexpr Cost& operator+=(Cost other) { return *this = *this + other; }

  friend constexpr auto operator<=>(Cost, Cost) = default;
  friend constexpr bool operator==(Cost, Cost) = default;

  std::string ToString() const {
    return IsInfinite() ? std::string("inf") : std::to_string(value_);
  }
  friend std::ostream& operator<<(std::ostream& os, Cost c) {
    return os << c.ToString();
  }

 private:
  static constexpr int64_t kInfinity = std::numeric_limits<int64_t>::max();
  int64_t value_ = 0;
};

}  // namespace tng

#endif  // TNG_COST_H_
