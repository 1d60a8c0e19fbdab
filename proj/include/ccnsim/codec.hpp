#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccnsim/messages.hpp"
#include "ccnsim/time.hpp"

namespace ccnsim {

/// Byte layout. One fixed 8-byte header, then 2+2 TLV framing:
///   header: version u8 | msg_type u8 | hop_limit u8 | flags u8 | aux u32
///     msg_type: 1=Interest 2=ContentObject 3=InterestReturn
///     flags bit0: retransmission (Interest / embedded Interest)
///     aux: total_segments for ContentObject, return code for InterestReturn
///   TLV types: 1 Name (container) | 2 NameComponent | 3 SegmentNumber(u64)
///              4 Lifetime(u16 ms) | 5 ExpiryTime(u64 ms) | 6 Payload
/// The Name TLV holds the component TLVs followed by the segment TLV.
/// An InterestReturn carries exactly the TLVs of its embedded Interest, so its
/// encoded size equals the Interest's. All integers are big-endian. Payload
/// bytes are zero (content is synthetic; only sizes matter).

struct CodecError : std::runtime_error {
  CodecError(std::size_t offset, std::uint16_t tlv_type, const std::string& what)
      : std::runtime_error(what + " (offset " + std::to_string(offset) + ", tlv type " +
                           std::to_string(tlv_type) + ")"),
        offset(offset),
        tlv_type(tlv_type) {}
  std::size_t offset;
  std::uint16_t tlv_type;
};

constexpr std::size_t kFixedHeaderSize = 8;
constexpr std::size_t kTlvOverhead = 4;

std::size_t encoded_size(const Interest& msg);
std::size_t encoded_size(const ContentObject& msg);
std::size_t encoded_size(const InterestReturn& msg);
std::size_t encoded_size(const CcnMessage& msg);

/// Serializes a valid message; length equals encoded_size(msg). Throws
/// std::invalid_argument when a message invariant is violated.
std::vector<std::uint8_t> encode(const CcnMessage& msg);

/// Parses a byte string. Throws CodecError (never crashes) on truncated input,
/// unknown or out-of-order TLVs, or invariant violations.
CcnMessage decode(std::span<const std::uint8_t> bytes);

/// Debug packet-dump file: per record a 16-byte header
/// (u64 time ns | u32 node id | u16 face id | u8 direction | u8 zero),
/// then u32 length and the encoded message. Big-endian, like the wire.
class PacketDumpWriter {
public:
  explicit PacketDumpWriter(const std::filesystem::path& path);

  void record(SimTime t, std::uint32_t node, std::uint16_t face, bool outbound,
              const CcnMessage& msg);

private:
  std::ofstream out_;
};

}  // namespace ccnsim
