#include <gtest/gtest.h>

#include <random>

#include "mlob/error.hpp"
#include "mlob/tape.hpp"
#include "support.hpp"

using namespace mlob;
using support::code_of;

TEST(Codec, AddFrameFieldMapping) {
  // Hand-assembled bytes per the documented layout: 1000200 = 0x000F4308.
  const std::vector<std::uint8_t> bytes{0x00, 0x1C, 'A', 0x00, 0x01,   // length 28, kind, locate 1
                                        0, 0, 0, 0, 0, 0, 0, 0,        // timestamp 0
                                        0, 0, 0, 0, 0, 0, 0, 7,        // order 7
                                        'B', 0x00, 0x00, 0x00, 0x64,   // side, 100 shares
                                        0x00, 0x0F, 0x43, 0x08};       // price
  const auto m = decode_message(bytes);
  EXPECT_EQ(m.kind, MessageKind::Add);
  EXPECT_EQ(m.locate, 1);
  EXPECT_EQ(m.timestamp_ns, 0u);
  EXPECT_EQ(m.order_id, 7u);
  EXPECT_EQ(m.side, Side::Bid);
  EXPECT_EQ(m.shares, 100u);
  EXPECT_EQ(m.price, 1000200u);
  EXPECT_EQ(encode_message(m), bytes);
}

TEST(Codec, DeleteFrame) {
  const std::vector<std::uint8_t> bytes{0x00, 0x13, 'D', 0x00, 0x01, 0, 0, 0, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 7};
  const auto m = decode_message(bytes);
  EXPECT_EQ(m, TapeMessage::remove(1, 5, 7));
}

TEST(Codec, FixedBodySizes) {
  EXPECT_EQ(body_size('R'), 11u);
  EXPECT_EQ(body_size('T'), 11u);
  EXPECT_EQ(body_size('A'), 28u);
  EXPECT_EQ(body_size('E'), 31u);
  EXPECT_EQ(body_size('X'), 23u);
  EXPECT_EQ(body_size('D'), 19u);
  EXPECT_EQ(body_size('C'), 19u);
  EXPECT_EQ(body_size('P'), 28u);
  EXPECT_EQ(body_size('Z'), 0u);
  const auto ts = encode_message(TapeMessage::timestamp(3, 86399ULL * 1'000'000'000ULL));
  EXPECT_EQ(ts.size(), 13u);
}

TEST(Codec, TruncatedFrame) {
  const std::vector<std::uint8_t> bytes{0x00, 0x28, 'A'};
  EXPECT_EQ(code_of([&] { (void)decode_frame(bytes); }), Errc::TruncatedFrame);
}

TEST(Codec, UnknownKindIsReported) {
  const std::vector<std::uint8_t> bytes{0x00, 0x03, 'Z', 0x00, 0x01};
  EXPECT_EQ(code_of([&] { (void)decode_frame(bytes); }), Errc::UnknownKind);
}

TEST(Codec, ZeroSharesRejectedBothWays) {
  auto m = TapeMessage::add(1, 0, 1, Side::Bid, 0, 100);
  EXPECT_EQ(code_of([&] { (void)encode_message(m); }), Errc::FieldRange);
  auto bytes = encode_message(TapeMessage::add(1, 0, 1, Side::Bid, 1, 100));
  bytes[22] = bytes[23] = bytes[24] = bytes[25] = 0;
  EXPECT_EQ(code_of([&] { (void)decode_message(bytes); }), Errc::FieldRange);
}

TEST(Codec, RandomRoundTrip) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 20000; ++i) {
    const auto m = support::random_message(rng);
    const auto bytes = encode_message(m);
    ASSERT_EQ(bytes.size(), frame_size(m));
    const auto back = decode_message(bytes);
    ASSERT_EQ(back, m);
    ASSERT_EQ(encode_message(back), bytes);
  }
}

TEST(Codec, FuzzedBytesNeverCrash) {
  std::mt19937_64 rng(7);
  std::size_t errors = 0;
  for (int i = 0; i < 50000; ++i) {
    std::vector<std::uint8_t> bytes(rng() % 40);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    try {
      (void)decode_frame(bytes);
    } catch (const Error&) {
      ++errors;
    }
  }
  EXPECT_GT(errors, 45000u);
}

TEST(TapeFile, HeaderAndOrdering) {
  const std::vector<TapeMessage> msgs{TapeMessage::directory(1, "KO"), TapeMessage::timestamp(1, 10),
                                      TapeMessage::timestamp(1, 10), TapeMessage::timestamp(1, 11)};
  const auto bytes = encode_tape(msgs);
  EXPECT_EQ(bytes[0], 'M');
  EXPECT_EQ(bytes[4], 0);
  EXPECT_EQ(bytes[5], 1);
  EXPECT_EQ(decode_tape(bytes), msgs);

  auto bad = bytes;
  bad[3] = '2';
  EXPECT_EQ(code_of([&] { (void)decode_tape(bad); }), Errc::BadHeader);
  EXPECT_EQ(code_of([&] { (void)decode_tape(std::vector<std::uint8_t>{}); }), Errc::BadHeader);

  const std::vector<TapeMessage> backwards{TapeMessage::timestamp(1, 11), TapeMessage::timestamp(1, 10)};
  EXPECT_EQ(code_of([&] { (void)decode_tape(encode_tape(backwards)); }), Errc::TimestampOrder);
}

TEST(TapeFile, SymbolPadding) {
  const auto m = TapeMessage::directory(2, "KO");
  EXPECT_EQ(symbol_name(m.symbol), "KO");
  EXPECT_EQ(m.symbol[2], ' ');
}
