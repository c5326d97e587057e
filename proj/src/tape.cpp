#include "mlob/tape.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "mlob/error.hpp"

namespace mlob {

namespace {

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
    out_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }
  void u64(std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
  }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() { return in_[pos_++]; }
  std::uint16_t u16() {
    std::uint16_t v = static_cast<std::uint16_t>((in_[pos_] << 8) | in_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

bool is_known_kind(char c) noexcept { return body_size(c) != 0; }

Side decode_side(std::uint8_t raw) {
  if (raw == 'B') return Side::Bid;
  if (raw == 'S') return Side::Ask;
  fail(Errc::FieldRange, "side byte must be 'B' or 'S'");
}

bool printable(char c) noexcept { return c >= 0x20 && c <= 0x7e; }

}  // namespace

Symbol make_symbol(std::string_view name) {
  Symbol sym;
  sym.fill(' ');
  std::copy_n(name.begin(), std::min(name.size(), sym.size()), sym.begin());
  return sym;
}

std::string symbol_name(const Symbol& sym) {
  std::string s(sym.begin(), sym.end());
  s.erase(s.find_last_not_of(' ') + 1);
  return s;
}

TapeMessage TapeMessage::directory(std::uint16_t locate, std::string_view symbol) {
  TapeMessage m;
  m.kind = MessageKind::Directory;
  m.locate = locate;
  m.symbol = make_symbol(symbol);
  return m;
}

TapeMessage TapeMessage::timestamp(std::uint16_t locate, std::uint64_t ts) {
  TapeMessage m;
  m.kind = MessageKind::Timestamp;
  m.locate = locate;
  m.timestamp_ns = ts;
  return m;
}

TapeMessage TapeMessage::add(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id,
                             Side side, std::uint32_t shares, std::uint32_t price) {
  TapeMessage m;
  m.kind = MessageKind::Add;
  m.locate = locate;
  m.timestamp_ns = ts;
  m.order_id = order_id;
  m.side = side;
  m.shares = shares;
  m.price = price;
  return m;
}

TapeMessage TapeMessage::execute(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id,
                                 std::uint32_t shares, std::uint64_t match_id) {
  TapeMessage m;
  m.kind = MessageKind::Execute;
  m.locate = locate;
  m.timestamp_ns = ts;
  m.order_id = order_id;
  m.shares = shares;
  m.match_id = match_id;
  return m;
}

TapeMessage TapeMessage::cancel(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id,
                                std::uint32_t shares) {
  TapeMessage m;
  m.kind = MessageKind::Cancel;
  m.locate = locate;
  m.timestamp_ns = ts;
  m.order_id = order_id;
  m.shares = shares;
  return m;
}

TapeMessage TapeMessage::remove(std::uint16_t locate, std::uint64_t ts, std::uint64_t order_id) {
  TapeMessage m;
  m.kind = MessageKind::Delete;
  m.locate = locate;
  m.timestamp_ns = ts;
  m.order_id = order_id;
  return m;
}

TapeMessage TapeMessage::special_deal(std::uint16_t locate, std::uint64_t ts, std::uint32_t shares,
                                      std::uint32_t price) {
  TapeMessage m;
  m.kind = MessageKind::SpecialDeal;
  m.locate = locate;
  m.timestamp_ns = ts;
  m.shares = shares;
  m.price = price;
  return m;
}

TapeMessage TapeMessage::hidden_exec(std::uint16_t locate, std::uint64_t ts, Side side,
                                     std::uint32_t shares, std::uint32_t price,
                                     std::uint64_t match_id) {
  TapeMessage m;
  m.kind = MessageKind::HiddenExec;
  m.locate = locate;
  m.timestamp_ns = ts;
  m.side = side;
  m.shares = shares;
  m.price = price;
  m.match_id = match_id;
  return m;
}

std::size_t body_size(char kind_code) noexcept {
  switch (kind_code) {
    case 'R': return 1 + 2 + 8;
    case 'T': return 1 + 2 + 8;
    case 'A': return 1 + 2 + 8 + 8 + 1 + 4 + 4;
    case 'E': return 1 + 2 + 8 + 8 + 4 + 8;
    case 'X': return 1 + 2 + 8 + 8 + 4;
    case 'D': return 1 + 2 + 8 + 8;
    case 'C': return 1 + 2 + 8 + 4 + 4;
    case 'P': return 1 + 2 + 8 + 1 + 4 + 4 + 8;
    default: return 0;
  }
}

std::size_t frame_size(const TapeMessage& msg) noexcept {
  return 2 + body_size(static_cast<char>(msg.kind));
}

void validate(const TapeMessage& msg) {
  const auto need_shares = [&] {
    if (msg.shares == 0) fail(Errc::FieldRange, "shares must be positive");
  };
  const auto need_price = [&] {
    if (msg.price == 0) fail(Errc::FieldRange, "price must be positive");
  };
  const auto need_side = [&] {
    if (msg.side != Side::Bid && msg.side != Side::Ask) fail(Errc::FieldRange, "invalid side");
  };
  switch (msg.kind) {
    case MessageKind::Directory:
      if (!std::all_of(msg.symbol.begin(), msg.symbol.end(), printable))
        fail(Errc::FieldRange, "symbol must be printable ASCII");
      break;
    case MessageKind::Timestamp:
    case MessageKind::Delete:
      break;
    case MessageKind::Add:
      need_side();
      need_shares();
      need_price();
      break;
    case MessageKind::Execute:
    case MessageKind::Cancel:
      need_shares();
      break;
    case MessageKind::SpecialDeal:
      need_shares();
      need_price();
      break;
    case MessageKind::HiddenExec:
      need_side();
      need_shares();
      need_price();
      break;
    default:
      fail(Errc::UnknownKind, "cannot encode unknown message kind");
  }
}

void encode_message(const TapeMessage& msg, std::vector<std::uint8_t>& out) {
  validate(msg);
  Writer w(out);
  w.u16(static_cast<std::uint16_t>(body_size(static_cast<char>(msg.kind))));
  w.u8(static_cast<std::uint8_t>(msg.kind));
  w.u16(msg.locate);
  switch (msg.kind) {
    case MessageKind::Directory:
      for (char c : msg.symbol) w.u8(static_cast<std::uint8_t>(c));
      break;
    case MessageKind::Timestamp:
      w.u64(msg.timestamp_ns);
      break;
    case MessageKind::Add:
      w.u64(msg.timestamp_ns);
      w.u64(msg.order_id);
      w.u8(static_cast<std::uint8_t>(msg.side));
      w.u32(msg.shares);
      w.u32(msg.price);
      break;
    case MessageKind::Execute:
      w.u64(msg.timestamp_ns);
      w.u64(msg.order_id);
      w.u32(msg.shares);
      w.u64(msg.match_id);
      break;
    case MessageKind::Cancel:
      w.u64(msg.timestamp_ns);
      w.u64(msg.order_id);
      w.u32(msg.shares);
      break;
    case MessageKind::Delete:
      w.u64(msg.timestamp_ns);
      w.u64(msg.order_id);
      break;
    case MessageKind::SpecialDeal:
      w.u64(msg.timestamp_ns);
      w.u32(msg.shares);
      w.u32(msg.price);
      break;
    case MessageKind::HiddenExec:
      w.u64(msg.timestamp_ns);
      w.u8(static_cast<std::uint8_t>(msg.side));
      w.u32(msg.shares);
      w.u32(msg.price);
      w.u64(msg.match_id);
      break;
  }
}

std::vector<std::uint8_t> encode_message(const TapeMessage& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(frame_size(msg));
  encode_message(msg, out);
  return out;
}

DecodedFrame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) fail(Errc::TruncatedFrame, "missing length prefix");
  const std::size_t length = (std::size_t{bytes[0]} << 8) | bytes[1];
  if (length == 0) fail(Errc::TruncatedFrame, "empty frame body");
  if (bytes.size() - 2 < length)
    fail(Errc::TruncatedFrame, "frame claims " + std::to_string(length) + " body bytes, " +
                                   std::to_string(bytes.size() - 2) + " available");
  const auto body = bytes.subspan(2, length);
  const char code = static_cast<char>(body[0]);
  if (!is_known_kind(code)) fail(Errc::UnknownKind, "kind code 0x" + std::to_string(body[0]));
  if (body_size(code) != length)
    fail(Errc::FrameLength, std::string("kind '") + code + "' expects " +
                                std::to_string(body_size(code)) + " body bytes, frame has " +
                                std::to_string(length));

  Reader r(body.subspan(1));
  TapeMessage m;
  m.kind = static_cast<MessageKind>(code);
  m.locate = r.u16();
  switch (m.kind) {
    case MessageKind::Directory:
      for (char& c : m.symbol) c = static_cast<char>(r.u8());
      break;
    case MessageKind::Timestamp:
      m.timestamp_ns = r.u64();
      break;
    case MessageKind::Add:
      m.timestamp_ns = r.u64();
      m.order_id = r.u64();
      m.side = decode_side(r.u8());
      m.shares = r.u32();
      m.price = r.u32();
      break;
    case MessageKind::Execute:
      m.timestamp_ns = r.u64();
      m.order_id = r.u64();
      m.shares = r.u32();
      m.match_id = r.u64();
      break;
    case MessageKind::Cancel:
      m.timestamp_ns = r.u64();
      m.order_id = r.u64();
      m.shares = r.u32();
      break;
    case MessageKind::Delete:
      m.timestamp_ns = r.u64();
      m.order_id = r.u64();
      break;
    case MessageKind::SpecialDeal:
      m.timestamp_ns = r.u64();
      m.shares = r.u32();
      m.price = r.u32();
      break;
    case MessageKind::HiddenExec:
      m.timestamp_ns = r.u64();
      m.side = decode_side(r.u8());
      m.shares = r.u32();
      m.price = r.u32();
      m.match_id = r.u64();
      break;
  }
  validate(m);
  return {m, 2 + length};
}

TapeMessage decode_message(std::span<const std::uint8_t> frame) {
  auto decoded = decode_frame(frame);
  if (decoded.consumed != frame.size())
    fail(Errc::FrameLength, "trailing bytes after frame");
  return decoded.message;
}

std::vector<std::uint8_t> encode_tape(std::span<const TapeMessage> messages) {
  std::vector<std::uint8_t> out;
  std::size_t total = kTapeHeaderSize;
  for (const auto& m : messages) total += frame_size(m);
  out.reserve(total);
  out.insert(out.end(), kTapeMagic.begin(), kTapeMagic.end());
  Writer(out).u16(kTapeVersion);
  for (const auto& m : messages) encode_message(m, out);
  return out;
}

std::vector<TapeMessage> decode_tape(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kTapeHeaderSize || !std::equal(kTapeMagic.begin(), kTapeMagic.end(), bytes.begin()))
    fail(Errc::BadHeader, "missing MLB1 magic");
  const std::uint16_t version = static_cast<std::uint16_t>((bytes[4] << 8) | bytes[5]);
  if (version != kTapeVersion) fail(Errc::BadHeader, "unsupported version " + std::to_string(version));

  std::vector<TapeMessage> out;
  std::uint64_t last_ts = 0;
  std::size_t pos = kTapeHeaderSize;
  while (pos < bytes.size()) {
    auto frame = decode_frame(bytes.subspan(pos));
    if (frame.message.kind != MessageKind::Directory) {
      if (frame.message.timestamp_ns < last_ts)
        fail(Errc::TimestampOrder, "timestamp decreases at byte offset " + std::to_string(pos));
      last_ts = frame.message.timestamp_ns;
    }
    out.push_back(frame.message);
    pos += frame.consumed;
  }
  return out;
}

std::vector<TapeMessage> read_tape(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_tape(bytes);
}

void write_tape(const std::filesystem::path& path, std::span<const TapeMessage> messages) {
  const auto bytes = encode_tape(messages);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::Io, "short write to " + path.string());
}

}  // namespace mlob
