#include "mlob/simgen.hpp"

#include <algorithm>
#include <fstream>

#include "mlob/error.hpp"
#include "mlob/limits.hpp"
#include "mlob/random.hpp"

namespace mlob {

namespace {

constexpr std::uint64_t kTradeSpacingNs = 1'000'000;

bool is_probability(double x) noexcept { return x >= 0.0 && x <= 1.0; }

class Generator {
 public:
  explicit Generator(const SimConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  GeneratedTape run() {
    out_.messages.push_back(TapeMessage::directory(cfg_.locate, cfg_.symbol));
    bid_ = cfg_.initial_bid;
    ask_ = bid_ + cfg_.spread_ticks * cfg_.tick;
    bid_order_ = post(0, Side::Bid, bid_);
    ask_order_ = post(0, Side::Ask, ask_);

    for (std::size_t n = 1; n <= cfg_.n_trades; ++n) trade(n);
    return std::move(out_);
  }

 private:
  struct Resting {
    std::uint64_t id = 0;
    std::uint32_t shares = 0;
  };

  Resting post(std::uint64_t ts, Side side, std::uint32_t price) {
    const Resting r{next_id_++, cfg_.quote_depth};
    out_.messages.push_back(TapeMessage::add(cfg_.locate, ts, r.id, side, r.shares, price));
    return r;
  }

  void pull(std::uint64_t ts, const Resting& r) {
    out_.messages.push_back(TapeMessage::remove(cfg_.locate, ts, r.id));
  }

  void trade(std::size_t n) {
    const std::uint64_t ts = n * kTradeSpacingNs;
    TruthRecord rec;
    rec.n = n;
    rec.kind = rng_.bernoulli(cfg_.informed_fraction) ? TraderKind::Informed : TraderKind::Noise;
    rec.direction = rng_.bernoulli(0.5) ? 1 : -1;
    rec.volume = cfg_.lot * static_cast<std::uint32_t>(rng_.integer(1, cfg_.max_lots));
    const bool floor = bid_ <= cfg_.tick;
    if (rec.kind == TraderKind::Informed) {
      if (floor) rec.direction = 1;
      rec.mid_move = rec.direction;
    } else {
      const double u = rng_.uniform();
      if (u < cfg_.noise_move_q / 2.0)
        rec.mid_move = 1;
      else if (u < cfg_.noise_move_q && !floor)
        rec.mid_move = -1;
      const std::uint32_t cap = std::min(cfg_.max_children, rec.volume);
      rec.children = cap > 1 ? static_cast<std::uint32_t>(rng_.integer(1, cap)) : 1;
    }

    // Active buy lifts the ask; active sell hits the bid.
    const Side passive = rec.direction > 0 ? Side::Ask : Side::Bid;
    Resting& quote = passive == Side::Ask ? ask_order_ : bid_order_;
    if (quote.shares < rec.volume) {
      pull(ts, quote);
      quote = post(ts, passive, passive == Side::Ask ? ask_ : bid_);
    }
    std::uint32_t left = rec.volume;
    for (std::uint32_t c = 0; c < rec.children; ++c) {
      const std::uint32_t size = c + 1 == rec.children ? left : rec.volume / rec.children;
      out_.messages.push_back(TapeMessage::execute(cfg_.locate, ts, quote.id, size, next_match_++));
      quote.shares -= size;
      left -= size;
    }
    if (quote.shares == 0) quote = post(ts, passive, passive == Side::Ask ? ask_ : bid_);

    if (rng_.bernoulli(cfg_.hidden_fraction)) {
      const Side side = rng_.bernoulli(0.5) ? Side::Bid : Side::Ask;
      out_.messages.push_back(TapeMessage::hidden_exec(cfg_.locate, ts + kTradeSpacingNs / 4, side, cfg_.lot,
                                                       side == Side::Bid ? bid_ : ask_, next_match_++));
    }
    if (rng_.bernoulli(cfg_.special_fraction))
      out_.messages.push_back(TapeMessage::special_deal(cfg_.locate, ts + kTradeSpacingNs / 4, cfg_.lot, bid_));

    if (rec.mid_move != 0) shift(ts + kTradeSpacingNs / 2, rec.mid_move);
    out_.truth.push_back(rec);
  }

  // Moves both quotes one tick; the leading side moves first so the book never crosses.
  void shift(std::uint64_t ts, int dir) {
    const auto move_ask = [&] {
      pull(ts, ask_order_);
      ask_ = dir > 0 ? ask_ + cfg_.tick : ask_ - cfg_.tick;
      ask_order_ = post(ts, Side::Ask, ask_);
    };
    const auto move_bid = [&] {
      pull(ts, bid_order_);
      bid_ = dir > 0 ? bid_ + cfg_.tick : bid_ - cfg_.tick;
      bid_order_ = post(ts, Side::Bid, bid_);
    };
    if (dir > 0) {
      move_ask();
      move_bid();
    } else {
      move_bid();
      move_ask();
    }
  }

  const SimConfig& cfg_;
  Rng rng_;
  GeneratedTape out_;
  std::uint32_t bid_ = 0;
  std::uint32_t ask_ = 0;
  Resting bid_order_;
  Resting ask_order_;
  std::uint64_t next_id_ = 1;
  std::uint64_t next_match_ = 1;
};

}  // namespace

void validate(const SimConfig& cfg) {
  const auto bad = [](const char* what) { fail(Errc::InvalidConfig, what); };
  if (cfg.n_trades < 1) bad("n_trades must be at least 1");
  if (cfg.tick == 0) bad("tick must be positive");
  if (cfg.spread_ticks < 1) bad("spread must be at least one tick");
  if (cfg.initial_bid <= cfg.tick) bad("initial bid must exceed one tick");
  if (!is_probability(cfg.informed_fraction) || !is_probability(cfg.noise_move_q) ||
      !is_probability(cfg.hidden_fraction) || !is_probability(cfg.special_fraction))
    bad("probabilities must lie in [0, 1]");
  if (!(cfg.target_rho >= -1.0 && cfg.target_rho <= 1.0)) bad("target rho must lie in [-1, 1]");
  if (cfg.lot == 0 || cfg.max_lots == 0 || cfg.max_children == 0) bad("volume parameters must be positive");
  if (static_cast<std::uint64_t>(cfg.lot) * cfg.max_lots > cfg.quote_depth) bad("quote depth below the largest trade");
  if (cfg.symbol.empty() || cfg.symbol.size() > 8) bad("symbol must have 1 to 8 characters");
  const std::uint64_t headroom = static_cast<std::uint64_t>(cfg.initial_bid) +
                                 static_cast<std::uint64_t>(cfg.tick) * (cfg.spread_ticks + cfg.n_trades);
  if (headroom > 0xFFFFFFFFULL) bad("price path could overflow the 32-bit price field");
}

GeneratedTape generate_tape(const SimConfig& cfg) {
  validate(cfg);
  return Generator(cfg).run();
}

Increments generate_diffusion_tape(const SimConfig& cfg) {
  validate(cfg);
  if (cfg.n_trades < 2) fail(Errc::InvalidConfig, "diffusion mode needs at least two increments");
  DiffusionParams params;
  params.rho = cfg.target_rho;
  const auto pair = simulate_pair(params, cfg.n_trades, cfg.seed);
  return {pair.dp(), pair.dL()};
}

void write_truth_csv(const std::filesystem::path& path, const std::vector<TruthRecord>& truth,
                     const std::string& header_comment) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot open " + path.string());
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "n,kind,direction,volume,children,mid_move\n";
  for (const auto& r : truth)
    out << r.n << ',' << (r.kind == TraderKind::Informed ? "informed" : "noise") << ',' << r.direction << ','
        << r.volume << ',' << r.children << ',' << r.mid_move << '\n';
  if (!out) fail(Errc::Io, "write failed for " + path.string());
}

}  // namespace mlob
