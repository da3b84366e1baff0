// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace logsob {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every
/// output block is a pure function of (key, counter), so draws can be
/// addressed directly by (seed, path, step, coordinate) with no stream state.
class Philox {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block counter, Key key);
};

/// Uniform double in (0, 1) from a 64-bit word; never returns 0 or 1.
double uniform_open(std::uint64_t word);

/// Addresses normal variates by (stream, index, coordinate). `stream`
/// typically carries the path or sample index and `index` the step.
class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : seed_(seed) {}

  /// Fills out[c] with the standard normal at coordinate c of (stream, index).
  void normals(std::uint64_t stream, std::uint64_t index, std::span<double> out) const;

  /// Two uniforms in (0, 1) at (stream, index, slot).
  std::array<double, 2> uniforms(std::uint64_t stream, std::uint64_t index, std::uint32_t slot) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace logsob
