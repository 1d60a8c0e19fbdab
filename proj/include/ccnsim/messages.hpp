#pragma once

#include <chrono>
#include <cstdint>
#include <variant>

#include "ccnsim/name.hpp"

namespace ccnsim {

/// Request for one segment of a named content.
struct Interest {
  ContentName name;  // with segment
  std::uint8_t hop_limit = 64;
  std::chrono::milliseconds lifetime{2000};  // > 0, wire-encoded as u16 ms
  bool retransmission = false;               // set when re-issued by the app

  friend bool operator==(const Interest&, const Interest&) = default;
};

/// Response carrying one segment. Payload bytes are synthetic; only the size
/// matters to the simulation. Expiry is opaque and carried only.
struct ContentObject {
  ContentName name;  // with segment
  std::uint32_t payload_size = 0;  // > 0
  std::uint64_t expiry_ms = 0;
  std::uint32_t total_segments = 1;  // metadata echoed by the server

  friend bool operator==(const ContentObject&, const ContentObject&) = default;
};

enum class ReturnCode : std::uint8_t {
  NoRoute = 1,
  HopLimitExceeded = 2,
};

/// NACK informing the requester that an Interest could not be served.
struct InterestReturn {
  Interest original;
  ReturnCode code = ReturnCode::NoRoute;

  friend bool operator==(const InterestReturn&, const InterestReturn&) = default;
};

using CcnMessage = std::variant<Interest, ContentObject, InterestReturn>;

/// Name (with segment) of any message kind.
const ContentName& message_name(const CcnMessage& msg);

const char* return_code_name(ReturnCode code);

}  // namespace ccnsim
