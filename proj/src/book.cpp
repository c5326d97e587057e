#include "mlob/book.hpp"

#include "mlob/error.hpp"

namespace mlob {

void OrderBook::add(std::uint64_t order_id, Side side, std::uint64_t shares, Price price) {
  if (shares == 0 || price == 0) fail(Errc::FieldRange, "add with zero shares or price");
  if (orders_.contains(order_id)) fail(Errc::DuplicateOrder, "order " + std::to_string(order_id));
  if (side == Side::Bid) {
    if (auto ask = best_ask(); ask && price >= *ask)
      fail(Errc::CrossedBook, "bid " + std::to_string(price) + " >= ask " + std::to_string(*ask));
    bids_[price] += shares;
  } else {
    if (auto bid = best_bid(); bid && price <= *bid)
      fail(Errc::CrossedBook, "ask " + std::to_string(price) + " <= bid " + std::to_string(*bid));
    asks_[price] += shares;
  }
  orders_.emplace(order_id, RestingOrder{side, price, shares});
  total_shares_ += shares;
}

void OrderBook::reduce(std::unordered_map<std::uint64_t, RestingOrder>::iterator it,
                       std::uint64_t shares) {
  auto& order = it->second;
  const auto shrink = [&](auto& levels) {
    auto level = levels.find(order.price);
    level->second -= shares;
    if (level->second == 0) levels.erase(level);
  };
  if (order.side == Side::Bid)
    shrink(bids_);
  else
    shrink(asks_);
  order.shares -= shares;
  total_shares_ -= shares;
  if (order.shares == 0) orders_.erase(it);
}

Fill OrderBook::execute(std::uint64_t order_id, std::uint64_t shares) {
  auto it = orders_.find(order_id);
  if (it == orders_.end()) fail(Errc::UnknownOrder, "execute of order " + std::to_string(order_id));
  if (shares == 0) fail(Errc::FieldRange, "execute of zero shares");
  if (shares > it->second.shares)
    fail(Errc::OverExecution, "execute " + std::to_string(shares) + " > remaining " +
                                  std::to_string(it->second.shares));
  Fill fill;
  fill.side = it->second.side;
  fill.price = it->second.price;
  fill.shares = shares;
  fill.pre_quote = quote();
  const auto best = fill.side == Side::Bid ? best_bid() : best_ask();
  fill.at_best = best && *best == fill.price;
  reduce(it, shares);
  return fill;
}

void OrderBook::cancel(std::uint64_t order_id, std::uint64_t shares) {
  auto it = orders_.find(order_id);
  if (it == orders_.end()) fail(Errc::UnknownOrder, "cancel of order " + std::to_string(order_id));
  if (shares > it->second.shares)
    fail(Errc::OverExecution, "cancel " + std::to_string(shares) + " > remaining " +
                                  std::to_string(it->second.shares));
  reduce(it, shares);
}

void OrderBook::remove(std::uint64_t order_id) {
  auto it = orders_.find(order_id);
  if (it == orders_.end()) fail(Errc::UnknownOrder, "delete of order " + std::to_string(order_id));
  reduce(it, it->second.shares);
}

std::optional<Price> OrderBook::best_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Price> OrderBook::best_ask() const {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

std::optional<Quote> OrderBook::quote() const {
  if (bids_.empty() || asks_.empty()) return std::nullopt;
  return Quote{bids_.begin()->first, asks_.begin()->first};
}

std::vector<Level> OrderBook::ladder(Side side) const {
  std::vector<Level> out;
  if (side == Side::Bid) {
    for (const auto& [px, qty] : bids_) out.push_back({px, qty});
  } else {
    for (const auto& [px, qty] : asks_) out.push_back({px, qty});
  }
  return out;
}

const RestingOrder* OrderBook::find(std::uint64_t order_id) const {
  auto it = orders_.find(order_id);
  return it == orders_.end() ? nullptr : &it->second;
}

bool OrderBook::consistent() const {
  std::map<Price, std::uint64_t> bid_sum;
  std::map<Price, std::uint64_t> ask_sum;
  std::uint64_t total = 0;
  for (const auto& [id, order] : orders_) {
    if (order.shares == 0) return false;
    (order.side == Side::Bid ? bid_sum : ask_sum)[order.price] += order.shares;
    total += order.shares;
  }
  if (total != total_shares_) return false;
  if (bid_sum.size() != bids_.size() || ask_sum.size() != asks_.size()) return false;
  for (const auto& [px, qty] : bids_)
    if (qty == 0 || bid_sum[px] != qty) return false;
  for (const auto& [px, qty] : asks_)
    if (qty == 0 || ask_sum[px] != qty) return false;
  if (auto q = quote(); q && q->bid >= q->ask) return false;
  return true;
}

}  // namespace mlob
