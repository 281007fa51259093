#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "anoncomm/wire.hpp"

using namespace anoncomm;

TEST_CASE("frame layout is bit-exact big-endian") {
  WireMessage msg;
  msg.type = MsgType::signal;
  msg.round_id = 0x01020304;
  msg.sender_id = 0x0506;
  msg.p = 13;
  msg.symbols = {0, 12, 7};
  const std::vector<std::uint8_t> bytes = encode_frame(msg);
  const std::vector<std::uint8_t> expected{
      0x00, 0x00, 0x00, 0x11,  // frame_len = 1+4+2+2+2+6 = 17
      0x03,                    // SIGNAL
      0x01, 0x02, 0x03, 0x04,  // round_id
      0x05, 0x06,              // sender_id
      0x00, 0x0d,              // p = 13
      0x00, 0x03,              // symbol_count
      0x00, 0x00, 0x00, 0x0c, 0x00, 0x07};
  CHECK(bytes == expected);
  CHECK(decode_frame(bytes) == msg);
}

TEST_CASE("round trip holds for randomized messages") {
  std::mt19937 rng(777);
  const std::uint16_t primes[] = {2, 3, 5, 7, 11, 13};
  for (int trial = 0; trial < 300; ++trial) {
    WireMessage msg;
    msg.type = static_cast<MsgType>(1 + rng() % 6);
    msg.round_id = rng();
    msg.sender_id = static_cast<std::uint16_t>(rng());
    msg.p = primes[rng() % 6];
    msg.symbols.resize(rng() % 9);
    for (auto& s : msg.symbols) s = static_cast<std::uint16_t>(rng() % msg.p);
    CHECK(decode_frame(encode_frame(msg)) == msg);
  }
}

TEST_CASE("empty payloads are legal") {
  WireMessage msg;
  msg.type = MsgType::round_begin;
  msg.round_id = 9;
  msg.p = 2;
  CHECK(decode_frame(encode_frame(msg)) == msg);
}

static std::string framing_field(const std::vector<std::uint8_t>& buf) {
  try {
    decode_frame(buf);
  } catch (const FramingError& e) {
    return e.field;
  }
  return "(no error)";
}

TEST_CASE("malformed frames name the offending field") {
  WireMessage msg;
  msg.type = MsgType::deal_share;
  msg.round_id = 1;
  msg.sender_id = 0;
  msg.p = 3;
  msg.symbols = {2, 0};
  const std::vector<std::uint8_t> good = encode_frame(msg);

  SECTION("truncated length prefix") {
    CHECK(framing_field({0x00, 0x01}) == "frame_len");
  }
  SECTION("length prefix disagrees with buffer size") {
    std::vector<std::uint8_t> bad = good;
    bad.pop_back();
    CHECK(framing_field(bad) == "frame_len");
  }
  SECTION("header-short frame") {
    // frame_len = 4 with exactly 4 payload bytes
    CHECK(framing_field({0x00, 0x00, 0x00, 0x04, 0x01, 0x00, 0x00, 0x00}) ==
          "frame_len");
  }
  SECTION("unknown message type") {
    std::vector<std::uint8_t> bad = good;
    bad[4] = 0x07;
    CHECK(framing_field(bad) == "msg_type");
    bad[4] = 0x00;
    CHECK(framing_field(bad) == "msg_type");
  }
  SECTION("invalid modulus") {
    std::vector<std::uint8_t> bad = good;
    bad[12] = 0x01;  // p = 1
    CHECK(framing_field(bad) == "p");
  }
  SECTION("symbol count disagrees with payload length") {
    std::vector<std::uint8_t> bad = good;
    bad[14] = 0x05;
    CHECK(framing_field(bad) == "symbol_count");
  }
  SECTION("residue not below p") {
    std::vector<std::uint8_t> bad = good;
    bad[16] = 0x03;
    CHECK(framing_field(bad) == "symbols");
  }
}

TEST_CASE("encoder rejects invalid messages before they reach the wire") {
  WireMessage msg;
  msg.p = 1;
  CHECK_THROWS_AS(encode_frame(msg), FramingError);
  msg.p = 2;
  msg.symbols = {2};
  try {
    encode_frame(msg);
    FAIL("expected FramingError");
  } catch (const FramingError& e) {
    CHECK(e.field == "symbols");
  }
}
