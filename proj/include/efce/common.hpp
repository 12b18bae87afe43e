// Copyright 2026 The EFCE Solver Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EFCE_COMMON_HPP
#define EFCE_COMMON_HPP

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <system_error>

namespace efce {

// The two players. Values double as array indices.
enum class Player : std::uint8_t { kOne = 0, kTwo = 1 };

inline constexpr std::array<Player, 2> kPlayers = {Player::kOne, Player::kTwo};

constexpr int Index(Player p) { return static_cast<int>(p); }
constexpr Player Opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
// 1-based number used in files and reports.
constexpr int Number(Player p) { return Index(p) + 1; }

// Feasibility tolerance used throughout unless a caller overrides it.
inline constexpr double kDefaultTolerance = 1e-9;

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inadmissible game input.
class GameError : public Error {
 public:
  using Error::Error;
};

// A structural property the algorithms rely on does not hold.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Contract violation inside a regret minimizer.
class ContractError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// Shortest decimal text that parses back to exactly the same double.
inline std::string FormatDouble(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error("cannot format floating-point value");
  return std::string(buf.data(), end);
}

}  // namespace efce

#endif  // EFCE_COMMON_HPP
