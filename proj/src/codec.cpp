#include "ccnsim/codec.hpp"

#include <limits>

namespace ccnsim {

namespace {

constexpr std::uint8_t kVersion = 1;

enum MsgType : std::uint8_t { kInterest = 1, kContentObject = 2, kInterestReturn = 3 };

enum TlvType : std::uint16_t {
  kTlvName = 1,
  kTlvComponent = 2,
  kTlvSegment = 3,
  kTlvLifetime = 4,
  kTlvExpiry = 5,
  kTlvPayload = 6,
};

std::size_t name_tlv_size(const ContentName& name) {
  std::size_t inner = 0;
  for (const auto& c : name.components()) {
    inner += kTlvOverhead + c.size();
  }
  inner += kTlvOverhead + 8;  // segment number
  return kTlvOverhead + inner;
}

void check_name(const ContentName& name) {
  if (name.component_count() == 0) {
    throw std::invalid_argument("message name has zero components");
  }
  if (!name.segment()) {
    throw std::invalid_argument("message name has no segment number");
  }
  std::size_t inner = kTlvOverhead + 8;
  for (const auto& c : name.components()) {
    if (c.size() > 0xFFFF) {
      throw std::invalid_argument("name component longer than 65535 bytes");
    }
    inner += kTlvOverhead + c.size();
  }
  if (inner > 0xFFFF) {
    throw std::invalid_argument("encoded name longer than 65535 bytes");
  }
}

void check_interest(const Interest& msg) {
  check_name(msg.name);
  if (msg.lifetime.count() < 1 || msg.lifetime.count() > 0xFFFF) {
    throw std::invalid_argument("interest lifetime must be 1..65535 ms");
  }
}

class Writer {
public:
  explicit Writer(std::size_t reserve) { buf_.reserve(reserve); }

  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) {
    buf_.push_back(static_cast<std::uint8_t>(v >> 8));
    buf_.push_back(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  void u64(std::uint64_t v) {
    u32(static_cast<std::uint32_t>(v >> 32));
    u32(static_cast<std::uint32_t>(v));
  }
  void tlv_header(std::uint16_t type, std::uint16_t length) {
    u16(type);
    u16(length);
  }
  void bytes(std::string_view s) { buf_.insert(buf_.end(), s.begin(), s.end()); }
  void zeros(std::size_t n) { buf_.insert(buf_.end(), n, 0); }

  std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
  std::vector<std::uint8_t> buf_;
};

void write_name(Writer& w, const ContentName& name) {
  std::size_t inner = name_tlv_size(name) - kTlvOverhead;
  w.tlv_header(kTlvName, static_cast<std::uint16_t>(inner));
  for (const auto& c : name.components()) {
    w.tlv_header(kTlvComponent, static_cast<std::uint16_t>(c.size()));
    w.bytes(c);
  }
  w.tlv_header(kTlvSegment, 8);
  w.u64(*name.segment());
}

void write_interest_body(Writer& w, const Interest& msg) {
  write_name(w, msg.name);
  w.tlv_header(kTlvLifetime, 2);
  w.u16(static_cast<std::uint16_t>(msg.lifetime.count()));
}

class Reader {
public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint8_t u8(std::uint16_t ctx) {
    need(1, ctx);
    return bytes_[pos_++];
  }
  std::uint16_t u16(std::uint16_t ctx) {
    need(2, ctx);
    std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] << 8 | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(std::uint16_t ctx) {
    std::uint32_t hi = u16(ctx);
    return hi << 16 | u16(ctx);
  }
  std::uint64_t u64(std::uint16_t ctx) {
    std::uint64_t hi = u32(ctx);
    return hi << 32 | u32(ctx);
  }
  std::string_view bytes(std::size_t n, std::uint16_t ctx) {
    need(n, ctx);
    auto view = std::string_view(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return view;
  }
  void skip(std::size_t n, std::uint16_t ctx) {
    need(n, ctx);
    pos_ += n;
  }

  /// Reads a TLV header whose type must equal `expect`.
  std::uint16_t tlv(std::uint16_t expect) {
    std::size_t at = pos_;
    std::uint16_t type = u16(expect);
    if (type != expect) {
      throw CodecError(at, type, "unexpected TLV type, wanted " + std::to_string(expect));
    }
    return u16(type);
  }

private:
  void need(std::size_t n, std::uint16_t ctx) {
    if (remaining() < n) {
      throw CodecError(pos_, ctx, "truncated message");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

ContentName read_name(Reader& r) {
  std::uint16_t name_len = r.tlv(kTlvName);
  std::size_t name_end = r.offset() + name_len;
  if (name_len < kTlvOverhead + 8) {
    throw CodecError(r.offset(), kTlvName, "name TLV too short for a segment number");
  }
  std::vector<std::string> components;
  while (r.offset() < name_end - (kTlvOverhead + 8)) {
    std::uint16_t len = r.tlv(kTlvComponent);
    if (len == 0) {
      throw CodecError(r.offset(), kTlvComponent, "empty name component");
    }
    if (r.offset() + len > name_end - (kTlvOverhead + 8)) {
      throw CodecError(r.offset(), kTlvComponent, "component overruns name TLV");
    }
    components.emplace_back(r.bytes(len, kTlvComponent));
  }
  if (components.empty()) {
    throw CodecError(r.offset(), kTlvName, "name has zero components");
  }
  std::uint16_t seg_len = r.tlv(kTlvSegment);
  if (seg_len != 8) {
    throw CodecError(r.offset(), kTlvSegment, "segment TLV must be 8 bytes");
  }
  std::uint64_t segment = r.u64(kTlvSegment);
  return ContentName(std::move(components), segment);
}

Interest read_interest_body(Reader& r, std::uint8_t hop_limit, bool retransmission) {
  Interest msg;
  msg.name = read_name(r);
  msg.hop_limit = hop_limit;
  msg.retransmission = retransmission;
  std::uint16_t len = r.tlv(kTlvLifetime);
  if (len != 2) {
    throw CodecError(r.offset(), kTlvLifetime, "lifetime TLV must be 2 bytes");
  }
  std::uint16_t ms = r.u16(kTlvLifetime);
  if (ms == 0) {
    throw CodecError(r.offset(), kTlvLifetime, "lifetime must be > 0");
  }
  msg.lifetime = std::chrono::milliseconds(ms);
  return msg;
}

}  // namespace

std::size_t encoded_size(const Interest& msg) {
  return kFixedHeaderSize + name_tlv_size(msg.name) + kTlvOverhead + 2;
}

std::size_t encoded_size(const ContentObject& msg) {
  return kFixedHeaderSize + name_tlv_size(msg.name) + (kTlvOverhead + 8) +
         (kTlvOverhead + msg.payload_size);
}

std::size_t encoded_size(const InterestReturn& msg) {
  // The return code rides in the fixed header; size equals the embedded Interest's.
  return encoded_size(msg.original);
}

std::size_t encoded_size(const CcnMessage& msg) {
  return std::visit([](const auto& m) { return encoded_size(m); }, msg);
}

std::vector<std::uint8_t> encode(const CcnMessage& msg) {
  Writer w(encoded_size(msg));
  if (const auto* interest = std::get_if<Interest>(&msg)) {
    check_interest(*interest);
    w.u8(kVersion);
    w.u8(kInterest);
    w.u8(interest->hop_limit);
    w.u8(interest->retransmission ? 1 : 0);
    w.u32(0);
    write_interest_body(w, *interest);
  } else if (const auto* obj = std::get_if<ContentObject>(&msg)) {
    check_name(obj->name);
    if (obj->payload_size < 1 || obj->payload_size > 0xFFFF) {
      throw std::invalid_argument("payload_size must be 1..65535 bytes");
    }
    w.u8(kVersion);
    w.u8(kContentObject);
    w.u8(0);
    w.u8(0);
    w.u32(obj->total_segments);
    write_name(w, obj->name);
    w.tlv_header(kTlvExpiry, 8);
    w.u64(obj->expiry_ms);
    w.tlv_header(kTlvPayload, static_cast<std::uint16_t>(obj->payload_size));
    w.zeros(obj->payload_size);
  } else {
    const auto& ret = std::get<InterestReturn>(msg);
    if (ret.code != ReturnCode::NoRoute && ret.code != ReturnCode::HopLimitExceeded) {
      throw std::invalid_argument("unsupported interest return code");
    }
    check_interest(ret.original);
    w.u8(kVersion);
    w.u8(kInterestReturn);
    w.u8(ret.original.hop_limit);
    w.u8(ret.original.retransmission ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(ret.code));
    write_interest_body(w, ret.original);
  }
  return w.take();
}

CcnMessage decode(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  std::uint8_t version = r.u8(0);
  if (version != kVersion) {
    throw CodecError(0, 0, "unsupported version " + std::to_string(version));
  }
  std::uint8_t msg_type = r.u8(0);
  std::uint8_t hop_limit = r.u8(0);
  std::uint8_t flags = r.u8(0);
  if (flags > 1) {
    throw CodecError(3, 0, "unknown flags");
  }
  std::uint32_t aux = r.u32(0);

  CcnMessage out;
  switch (msg_type) {
    case kInterest: {
      if (aux != 0) {
        throw CodecError(4, 0, "nonzero aux field in interest header");
      }
      out = read_interest_body(r, hop_limit, flags & 1);
      break;
    }
    case kContentObject: {
      ContentObject obj;
      obj.total_segments = aux;
      obj.name = read_name(r);
      std::uint16_t exp_len = r.tlv(kTlvExpiry);
      if (exp_len != 8) {
        throw CodecError(r.offset(), kTlvExpiry, "expiry TLV must be 8 bytes");
      }
      obj.expiry_ms = r.u64(kTlvExpiry);
      std::uint16_t payload_len = r.tlv(kTlvPayload);
      if (payload_len == 0) {
        throw CodecError(r.offset(), kTlvPayload, "payload must be non-empty");
      }
      r.skip(payload_len, kTlvPayload);
      obj.payload_size = payload_len;
      out = obj;
      break;
    }
    case kInterestReturn: {
      InterestReturn ret;
      if (aux != static_cast<std::uint32_t>(ReturnCode::NoRoute) &&
          aux != static_cast<std::uint32_t>(ReturnCode::HopLimitExceeded)) {
        throw CodecError(4, 0, "unsupported interest return code " + std::to_string(aux));
      }
      ret.code = static_cast<ReturnCode>(aux);
      ret.original = read_interest_body(r, hop_limit, flags & 1);
      out = ret;
      break;
    }
    default:
      throw CodecError(1, 0, "unknown message type " + std::to_string(msg_type));
  }
  if (r.remaining() != 0) {
    throw CodecError(r.offset(), 0, "trailing bytes after message");
  }
  return out;
}

const ContentName& message_name(const CcnMessage& msg) {
  if (const auto* ret = std::get_if<InterestReturn>(&msg)) {
    return ret->original.name;
  }
  if (const auto* obj = std::get_if<ContentObject>(&msg)) {
    return obj->name;
  }
  return std::get<Interest>(msg).name;
}

const char* return_code_name(ReturnCode code) {
  return code == ReturnCode::NoRoute ? "NoRoute" : "HopLimitExceeded";
}

PacketDumpWriter::PacketDumpWriter(const std::filesystem::path& path)
    : out_(path, std::ios::binary) {
  if (!out_) {
    throw std::runtime_error("cannot open packet dump file: " + path.string());
  }
}

void PacketDumpWriter::record(SimTime t, std::uint32_t node, std::uint16_t face,
                              bool outbound, const CcnMessage& msg) {
  auto put_u64 = [&](std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      out_.put(static_cast<char>((v >> shift) & 0xFF));
    }
  };
  auto put_u32 = [&](std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out_.put(static_cast<char>((v >> shift) & 0xFF));
    }
  };
  put_u64(static_cast<std::uint64_t>(t.ns()));
  put_u32(node);
  out_.put(static_cast<char>((face >> 8) & 0xFF));
  out_.put(static_cast<char>(face & 0xFF));
  out_.put(outbound ? 1 : 0);
  out_.put(0);
  auto bytes = encode(msg);
  put_u32(static_cast<std::uint32_t>(bytes.size()));
  out_.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
}

}  // namespace ccnsim
