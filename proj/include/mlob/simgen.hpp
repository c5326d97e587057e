#pragma once

// Synthetic single-symbol market with known ground truth. One resting quote
// order per side keeps the spread constant; every trade executes at the best
// quote. Informed trades move the mid one tick in their direction before the
// next trade, noise trades move it +/- one tick with probability q/2 each.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mlob/hftest.hpp"
#include "mlob/tape.hpp"

namespace mlob {

struct SimConfig {
  std::uint64_t seed = 1;
  std::size_t n_trades = 1000;
  std::uint32_t tick = 100;         // raw price units (1e-4)
  std::uint32_t spread_ticks = 1;
  std::uint32_t initial_bid = 1'000'000;
  double informed_fraction = 0.3;
  double noise_move_q = 0.2;
  double target_rho = 0.0;          // diffusion mode only
  std::uint32_t lot = 100;          // trade volume is lot * U{1..max_lots}
  std::uint32_t max_lots = 10;
  std::uint32_t max_children = 1;   // noise trades split into 1..max_children same-timestamp fills
  double hidden_fraction = 0.0;     // per trade, an extra 'P' message
  double special_fraction = 0.0;    // per trade, an extra 'C' message
  std::uint32_t quote_depth = 100'000;
  std::string symbol = "SIM";
  std::uint16_t locate = 1;
};

/// Throws Error{InvalidConfig}.
void validate(const SimConfig& cfg);

enum class TraderKind { Informed, Noise };

struct TruthRecord {
  std::size_t n = 0;          // 1-based trade index (a split trade counts once)
  TraderKind kind = TraderKind::Noise;
  int direction = 0;          // +1 active buy, -1 active sell
  std::uint32_t volume = 0;
  std::uint32_t children = 1;
  int mid_move = 0;           // ticks, applied after the trade
};

struct GeneratedTape {
  std::vector<TapeMessage> messages;
  std::vector<TruthRecord> truth;
};

/// Deterministic in the config.
[[nodiscard]] GeneratedTape generate_tape(const SimConfig& cfg);

/// Correlated Gaussian (dp, dL) increments with correlation target_rho, one
/// pair per trade, for the adverse-selection test.
[[nodiscard]] Increments generate_diffusion_tape(const SimConfig& cfg);

void write_truth_csv(const std::filesystem::path& path, const std::vector<TruthRecord>& truth,
                     const std::string& header_comment = {});

}  // namespace mlob
