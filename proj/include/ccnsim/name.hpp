#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccnsim {

struct NameParseError : std::runtime_error {
  NameParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// Hierarchical content name: ordered non-empty byte-string components plus an
/// optional segment number. Canonical text form is "ccnx:/" + components
/// joined by "/".
///
/// Names parsed from text always have at least one component. The
/// default-constructed empty name is the match-all prefix used for default
/// routes in FIBs; it is not a valid content name and never appears on the
/// wire.
class ContentName {
public:
  ContentName() = default;
  explicit ContentName(std::vector<std::string> components,
                       std::optional<std::uint64_t> segment = std::nullopt);

  /// Parses the canonical form "ccnx:/a/b". Rejects a missing prefix, zero
  /// components and empty components, reporting the byte offset.
  static ContentName parse(std::string_view text);

  const std::vector<std::string>& components() const { return components_; }
  std::size_t component_count() const { return components_.size(); }
  std::optional<std::uint64_t> segment() const { return segment_; }

  ContentName with_segment(std::uint64_t seg) const;
  ContentName without_segment() const;
  ContentName with_appended(std::string component) const;
  /// First n components, no segment.
  ContentName prefix_of_length(std::size_t n) const;

  /// True iff this name's components are a leading sublist of `name`'s
  /// (a name is a prefix of itself). Segments are ignored.
  bool is_prefix_of(const ContentName& name) const;

  std::string to_text() const;

  friend auto operator<=>(const ContentName&, const ContentName&) = default;

private:
  std::vector<std::string> components_;
  std::optional<std::uint64_t> segment_;
};

}  // namespace ccnsim
