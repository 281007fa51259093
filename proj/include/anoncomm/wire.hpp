#ifndef ANONCOMM_WIRE_HPP
#define ANONCOMM_WIRE_HPP

#include <cstdint>
#include <vector>

#include "anoncomm/common.hpp"

namespace anoncomm {

enum class MsgType : std::uint8_t {
  deal_share = 0x01,
  desire_flag = 0x02,
  signal = 0x03,
  decoded = 0x04,
  round_begin = 0x05,
  shutdown = 0x06,
};

/// Thrown on malformed frames; `field` names the offending field.
class FramingError : public Error {
 public:
  FramingError(std::string field, const std::string& what)
      : Error("framing error in field '" + field + "': " + what),
        field(std::move(field)) {}
  std::string field;
};

/// One protocol message. On the wire:
///   [frame_len:4 BE] [msg_type:1] [round_id:4 BE] [sender_id:2 BE]
///   [p:2 BE] [symbol_count:2 BE] [symbols: 2 BE each, residues < p]
/// frame_len counts every byte after the length field itself.
struct WireMessage {
  MsgType type = MsgType::shutdown;
  std::uint32_t round_id = 0;
  std::uint16_t sender_id = 0;
  std::uint16_t p = 2;
  std::vector<std::uint16_t> symbols;

  bool operator==(const WireMessage& o) const {
    return type == o.type && round_id == o.round_id && sender_id == o.sender_id &&
           p == o.p && symbols == o.symbols;
  }
};

namespace wire_detail {
inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}
inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
}
inline std::uint16_t get_u16(const std::uint8_t* b) {
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}
inline std::uint32_t get_u32(const std::uint8_t* b) {
  return (static_cast<std::uint32_t>(b[0]) << 24) |
         (static_cast<std::uint32_t>(b[1]) << 16) |
         (static_cast<std::uint32_t>(b[2]) << 8) | b[3];
}
}  // namespace wire_detail

inline std::vector<std::uint8_t> encode_frame(const WireMessage& msg) {
  if (msg.p < 2) throw FramingError("p", "modulus must be >= 2");
  for (auto s : msg.symbols)
    if (s >= msg.p) throw FramingError("symbols", "residue not below p");
  if (msg.symbols.size() > 0xffff)
    throw FramingError("symbol_count", "too many symbols");
  std::vector<std::uint8_t> out;
  const std::uint32_t frame_len =
      1 + 4 + 2 + 2 + 2 + 2 * static_cast<std::uint32_t>(msg.symbols.size());
  wire_detail::put_u32(out, frame_len);
  out.push_back(static_cast<std::uint8_t>(msg.type));
  wire_detail::put_u32(out, msg.round_id);
  wire_detail::put_u16(out, msg.sender_id);
  wire_detail::put_u16(out, msg.p);
  wire_detail::put_u16(out, static_cast<std::uint16_t>(msg.symbols.size()));
  for (auto s : msg.symbols) wire_detail::put_u16(out, s);
  return out;
}

/// Decode one complete frame (length prefix included).
inline WireMessage decode_frame(const std::vector<std::uint8_t>& buf) {
  if (buf.size() < 4) throw FramingError("frame_len", "truncated length prefix");
  const std::uint32_t frame_len = wire_detail::get_u32(buf.data());
  if (buf.size() != 4u + frame_len)
    throw FramingError("frame_len", "length prefix does not match frame size");
  if (frame_len < 1 + 4 + 2 + 2 + 2)
    throw FramingError("frame_len", "frame too short for header");
  const std::uint8_t* b = buf.data() + 4;
  WireMessage msg;
  const std::uint8_t raw_type = b[0];
  if (raw_type < 0x01 || raw_type > 0x06)
    throw FramingError("msg_type", "unknown message type " + std::to_string(raw_type));
  msg.type = static_cast<MsgType>(raw_type);
  msg.round_id = wire_detail::get_u32(b + 1);
  msg.sender_id = wire_detail::get_u16(b + 5);
  msg.p = wire_detail::get_u16(b + 7);
  if (msg.p < 2) throw FramingError("p", "modulus must be >= 2");
  const std::uint16_t count = wire_detail::get_u16(b + 9);
  if (frame_len != 1u + 4 + 2 + 2 + 2 + 2u * count)
    throw FramingError("symbol_count", "payload length mismatch");
  msg.symbols.resize(count);
  for (std::uint16_t i = 0; i < count; ++i) {
    msg.symbols[i] = wire_detail::get_u16(b + 11 + 2 * i);
    if (msg.symbols[i] >= msg.p)
      throw FramingError("symbols", "residue not below p");
  }
  return msg;
}

}  // namespace anoncomm

#endif  // ANONCOMM_WIRE_HPP
