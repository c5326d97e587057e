#pragma once

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "mlob/error.hpp"
#include "mlob/tape.hpp"

namespace support {

/// Code of the mlob::Error thrown by fn; fails the test if nothing is thrown.
template <class Fn>
mlob::Errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const mlob::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return mlob::Errc::Io;
}

/// Prices in the tests are written in currency and stored in 1e-4 units.
constexpr std::uint32_t px(double currency) { return static_cast<std::uint32_t>(currency * 10000.0 + 0.5); }

/// A one-symbol stream with a two-sided book: bid order 1, ask order 2.
inline std::vector<mlob::TapeMessage> two_sided(double bid, std::uint32_t bid_sh, double ask, std::uint32_t ask_sh) {
  using mlob::TapeMessage;
  return {TapeMessage::directory(1, "TEST"), TapeMessage::add(1, 0, 1, mlob::Side::Bid, bid_sh, px(bid)),
          TapeMessage::add(1, 0, 2, mlob::Side::Ask, ask_sh, px(ask))};
}

/// A valid message of a uniformly chosen kind with random fields.
inline mlob::TapeMessage random_message(std::mt19937_64& rng) {
  const char kinds[] = {'R', 'T', 'A', 'E', 'X', 'D', 'C', 'P'};
  const auto u32 = [&] { return static_cast<std::uint32_t>(rng() % 0xFFFFFFFFULL) + 1; };
  const auto loc = static_cast<std::uint16_t>(rng());
  const std::uint64_t ts = rng();
  const mlob::Side side = rng() & 1 ? mlob::Side::Bid : mlob::Side::Ask;
  switch (kinds[rng() % 8]) {
    case 'R': {
      std::string sym;
      for (int i = 0, n = 1 + static_cast<int>(rng() % 8); i < n; ++i) sym += static_cast<char>('A' + rng() % 26);
      return mlob::TapeMessage::directory(loc, sym);
    }
    case 'T': return mlob::TapeMessage::timestamp(loc, ts);
    case 'A': return mlob::TapeMessage::add(loc, ts, rng(), side, u32(), u32());
    case 'E': return mlob::TapeMessage::execute(loc, ts, rng(), u32(), rng());
    case 'X': return mlob::TapeMessage::cancel(loc, ts, rng(), u32());
    case 'D': return mlob::TapeMessage::remove(loc, ts, rng());
    case 'C': return mlob::TapeMessage::special_deal(loc, ts, u32(), u32());
    default: return mlob::TapeMessage::hidden_exec(loc, ts, side, u32(), u32(), rng());
  }
}

}  // namespace support
