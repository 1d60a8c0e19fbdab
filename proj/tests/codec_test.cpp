#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ccnsim/codec.hpp"

using namespace ccnsim;

namespace {

Interest sample_interest() {
  Interest i;
  i.name = ContentName::parse("ccnx:/site/content0").with_segment(4);
  return i;
}

/// Random valid messages over the full model space the codec supports.
struct MessageGen {
  std::mt19937_64 gen;

  explicit MessageGen(std::uint64_t seed) : gen(seed) {}

  std::string component() {
    std::size_t len = 1 + gen() % 12;
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back(static_cast<char>(gen() % 256));
    }
    return s;
  }

  ContentName name() {
    std::vector<std::string> comps;
    std::size_t n = 1 + gen() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      comps.push_back(component());
    }
    std::uint64_t seg = gen() % 2 ? gen() : gen() % 100;
    return ContentName(comps, seg);
  }

  Interest interest() {
    Interest i;
    i.name = name();
    i.hop_limit = static_cast<std::uint8_t>(gen() % 256);
    i.lifetime = std::chrono::milliseconds(1 + gen() % 0xFFFF);
    i.retransmission = gen() % 2 == 0;
    return i;
  }

  ContentObject object() {
    ContentObject o;
    o.name = name();
    o.payload_size = static_cast<std::uint32_t>(1 + gen() % 2000);
    o.expiry_ms = gen();
    o.total_segments = static_cast<std::uint32_t>(1 + gen() % 64);
    return o;
  }

  CcnMessage message() {
    switch (gen() % 3) {
      case 0: return interest();
      case 1: return object();
      default:
        return InterestReturn{interest(), gen() % 2 ? ReturnCode::NoRoute
                                                    : ReturnCode::HopLimitExceeded};
    }
  }
};

}  // namespace

TEST_CASE("interest size: 50 bytes for ccnx:/site/content0 seg 4") {
  CHECK(encoded_size(sample_interest()) == 50);
}

TEST_CASE("content object size: 1060 bytes with a 1000-byte payload") {
  ContentObject obj;
  obj.name = ContentName::parse("ccnx:/site/content0").with_segment(4);
  obj.payload_size = 1000;
  CHECK(encoded_size(obj) == 1060);
}

TEST_CASE("interest return size equals the embedded interest's") {
  InterestReturn ret{sample_interest(), ReturnCode::NoRoute};
  CHECK(encoded_size(ret) == 50);
  auto bytes = encode(CcnMessage{ret});
  CHECK(bytes.size() == 50);
}

TEST_CASE("round trip across the generated message space") {
  MessageGen gen(2024);
  for (int i = 0; i < 5000; ++i) {
    CcnMessage msg = gen.message();
    auto bytes = encode(msg);
    CHECK(bytes.size() == encoded_size(msg));
    CcnMessage back = decode(bytes);
    CHECK(back == msg);
  }
}

TEST_CASE("truncating the final byte of a content object fails at the payload TLV") {
  ContentObject obj;
  obj.name = ContentName::parse("ccnx:/site/content0").with_segment(4);
  obj.payload_size = 1000;
  auto bytes = encode(CcnMessage{obj});
  bytes.pop_back();
  try {
    decode(bytes);
    FAIL("expected codec error");
  } catch (const CodecError& e) {
    CHECK(e.tlv_type == 6);  // payload
  }
}

TEST_CASE("decode errors name an offset") {
  auto bytes = encode(CcnMessage{sample_interest()});
  bytes.resize(10);
  try {
    decode(bytes);
    FAIL("expected codec error");
  } catch (const CodecError& e) {
    CHECK(e.offset <= 10);
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("unknown message types and TLVs are rejected") {
  auto bytes = encode(CcnMessage{sample_interest()});
  bytes[1] = 9;  // message type
  CHECK_THROWS_AS(decode(bytes), CodecError);

  bytes = encode(CcnMessage{sample_interest()});
  bytes[9] = 42;  // first TLV type, low byte
  CHECK_THROWS_AS(decode(bytes), CodecError);
}

TEST_CASE("fuzzed byte strings never crash the decoder") {
  std::mt19937_64 gen(99);
  int decoded = 0;
  for (int i = 0; i < 20'000; ++i) {
    std::vector<std::uint8_t> bytes(gen() % 120);
    for (auto& b : bytes) {
      b = static_cast<std::uint8_t>(gen());
    }
    try {
      decode(bytes);
      ++decoded;
    } catch (const CodecError&) {
      // expected for nearly every input
    }
  }
  CHECK(decoded >= 0);

  // Bit-flipped and truncated valid encodings.
  MessageGen mg(7);
  int survived = 0;
  for (int i = 0; i < 20'000; ++i) {
    auto bytes = encode(mg.message());
    if (gen() % 2 == 0 && !bytes.empty()) {
      bytes.resize(gen() % bytes.size());
    } else {
      bytes[gen() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (gen() % 8));
    }
    try {
      decode(bytes);
      ++survived;
    } catch (const CodecError&) {
    }
  }
  CHECK(survived >= 0);
}

TEST_CASE("encode rejects invalid models") {
  Interest i = sample_interest();
  i.lifetime = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(encode(CcnMessage{i}), std::invalid_argument);

  ContentObject obj;
  obj.name = ContentName::parse("ccnx:/a");  // no segment
  obj.payload_size = 10;
  CHECK_THROWS_AS(encode(CcnMessage{obj}), std::invalid_argument);

  obj.name = obj.name.with_segment(0);
  obj.payload_size = 0;
  CHECK_THROWS_AS(encode(CcnMessage{obj}), std::invalid_argument);
}

TEST_CASE("packet dump records are self-describing") {
  auto path = std::filesystem::temp_directory_path() / "ccnsim_dump_test.bin";
  {
    PacketDumpWriter dump(path);
    dump.record(SimTime::from_seconds(1.5), 3, 2, true, CcnMessage{sample_interest()});
  }
  std::ifstream in(path, std::ios::binary);
  std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
  REQUIRE(raw.size() == 16 + 4 + 50);
  auto u64 = [&](std::size_t at) {
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v = v << 8 | raw[at + k];
    return v;
  };
  CHECK(u64(0) == 1'500'000'000ull);                 // time, ns
  CHECK(raw[11] == 3);                               // node id (u32 BE)
  CHECK(raw[13] == 2);                               // face id (u16 BE)
  CHECK(raw[14] == 1);                               // outbound
  CHECK(raw[19] == 50);                              // length (u32 BE)
  std::span<const std::uint8_t> body(raw.data() + 20, 50);
  CHECK(decode(body) == CcnMessage{sample_interest()});
  std::filesystem::remove(path);
}
