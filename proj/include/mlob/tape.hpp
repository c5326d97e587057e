#pragma once

// MLOB binary tape: an ITCH-flavoured subset used as the input format.
//
// File:  "MLB1" | version u16 BE (=1) | frame*
// Frame: length u16 BE | body (length bytes, first byte is the kind code)
//
// All integers are big-endian. Prices are u32 in 1e-4 currency units.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlob {

enum class MessageKind : char {
  Directory = 'R',
  Timestamp = 'T',
  Add = 'A',
  Execute = 'E',
  Cancel = 'X',
  Delete = 'D',
  SpecialDeal = 'C',  // ITCH 'C': executions outside the visible book, ignored
  HiddenExec = 'P',   // ITCH 'P': executions against hidden orders, ignored
};

enum class Side : char { Bid = 'B', Ask = 'S' };

[[nodiscard]] constexpr Side opposite(Side s) noexcept {
  return s == Side::Bid ? Side::Ask : Side::Bid;
}

using Symbol = std::array<char, 8>;

[[nodiscard]] Symbol make_symbol(std::string_view name);
[[nodiscard]] std::string symbol_name(const Symbol& sym);

/// One decoded tape event. Fields that a kind does not carry stay at their
/// defaults, so value equality is meaningful across a codec round trip.
struct TapeMessage {
  MessageKind kind = MessageKind::Timestamp;
  std::uint16_t locate = 0;
  std::uint64_t timestamp_ns = 0;
  std::uint64_t order_id = 0;
  Side side = Side::Bid;
  std::uint32_t shares = 0;
  std::uint32_t price = 0;
  std::uint64_t match_id = 0;
  Symbol symbol{' ', ' ', ' ', ' ', ' ', ' ', ' ', ' '};

  bool operator==(const TapeMessage&) const = default;

  static TapeMessage directory(std::uint16_t locate, std::string_view symbol);
  static TapeMessage timestamp(std::uint16_t locate, std::uint64_t ts);
  static TapeMessage add(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id, Side side,
                         std::uint32_t shares, std::uint32_t price);
  static TapeMessage execute(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id,
                             std::uint32_t shares, std::uint64_t match_id);
  static TapeMessage cancel(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id,
                            std::uint32_t shares);
  static TapeMessage remove(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id);
  static TapeMessage special_deal(std::uint16_t locate, std::uint64_t ts, std::uint32_t shares,
                                  std::uint32_t price);
  static TapeMessage hidden_exec(std::uint16_t locate, std::uint64_t ts, Side side,
                                 std::uint32_t shares, std::uint32_t price,
                                 std::uint64_t match_id);
};

inline constexpr std::array<char, 4> kTapeMagic{'M', 'L', 'B', '1'};
inline constexpr std::uint16_t kTapeVersion = 1;
inline constexpr std::size_t kTapeHeaderSize = 6;

/// Body size (kind byte included) of the fixed layout for a kind code, 0 if unknown.
[[nodiscard]] std::size_t body_size(char kind_code) noexcept;

/// Size of the complete frame (prefix + body) for a message.
[[nodiscard]] std::size_t frame_size(const TapeMessage& msg) noexcept;

struct DecodedFrame {
  TapeMessage message;
  std::size_t consumed = 0;  // prefix + body
};

/// Decodes one frame at the start of `bytes`. Trailing bytes are ignored.
/// Throws Error{TruncatedFrame | FrameLength | UnknownKind | FieldRange}.
[[nodiscard]] DecodedFrame decode_frame(std::span<const std::uint8_t> bytes);

/// Decodes exactly one frame; `frame` must hold nothing else.
[[nodiscard]] TapeMessage decode_message(std::span<const std::uint8_t> frame);

/// Appends the frame for `msg`. Throws Error{FieldRange}.
void encode_message(const TapeMessage& msg, std::vector<std::uint8_t>& out);
[[nodiscard]] std::vector<std::uint8_t> encode_message(const TapeMessage& msg);

/// Checks the per-kind field invariants. Throws Error{FieldRange}.
void validate(const TapeMessage& msg);

/// Whole-file encoding: header followed by frames.
[[nodiscard]] std::vector<std::uint8_t> encode_tape(std::span<const TapeMessage> messages);

/// Whole-file decoding; also enforces non-decreasing timestamps.
[[nodiscard]] std::vector<TapeMessage> decode_tape(std::span<const std::uint8_t> bytes);

[[nodiscard]] std::vector<TapeMessage> read_tape(const std::filesystem::path& path);
void write_tape(const std::filesystem::path& path, std::span<const TapeMessage> messages);

}  // namespace mlob
