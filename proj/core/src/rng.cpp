// Copyright 2026 The logsob Authors.
// SPDX-License-Identifier: Apache-2.0

#include "logsob/rng.hpp"

#include <cmath>
#include <numbers>

namespace logsob {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// The counter's last word holds the coordinate pair; the stream's upper half
// shares the third word with the index's upper bits, which stay zero for any
// realistic step count.
Philox::Block counter_for(std::uint64_t stream, std::uint64_t index, std::uint32_t slot) {
  return {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
          static_cast<std::uint32_t>(index), slot ^ (static_cast<std::uint32_t>(index >> 32) << 20)};
}

Philox::Key key_for(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

}  // namespace

Philox::Block Philox::generate(Block c, Key k) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      k[0] += kW0;
      k[1] += kW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
  return c;
}

double uniform_open(std::uint64_t word) {
  // 52 bits so that the largest value, 1 - 2^-53, is representable.
  return (static_cast<double>(word >> 12) + 0.5) * 0x1.0p-52;
}

std::array<double, 2> NormalSource::uniforms(std::uint64_t stream, std::uint64_t index, std::uint32_t slot) const {
  const auto b = Philox::generate(counter_for(stream, index, slot), key_for(seed_));
  const std::uint64_t w0 = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
  const std::uint64_t w1 = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
  return {uniform_open(w0), uniform_open(w1)};
}

void NormalSource::normals(std::uint64_t stream, std::uint64_t index, std::span<double> out) const {
  for (std::size_t c = 0; c < out.size(); c += 2) {
    const auto u = uniforms(stream, index, static_cast<std::uint32_t>(c / 2));
    const double r = std::sqrt(-2.0 * std::log(u[0]));
    const double theta = 2.0 * std::numbers::pi * u[1];
    out[c] = r * std::cos(theta);
    if (c + 1 < out.size()) out[c + 1] = r * std::sin(theta);
  }
}

}  // namespace logsob
