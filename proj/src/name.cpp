#include "ccnsim/name.hpp"

#include <utility>

namespace ccnsim {

namespace {
constexpr std::string_view kScheme = "ccnx:/";
}

ContentName::ContentName(std::vector<std::string> components,
                         std::optional<std::uint64_t> segment)
    : components_(std::move(components)), segment_(segment) {
  for (const auto& c : components_) {
    if (c.empty()) {
      throw std::invalid_argument("empty name component");
    }
  }
}

ContentName ContentName::parse(std::string_view text) {
  if (text.substr(0, kScheme.size()) != kScheme) {
    throw NameParseError(0, "name must begin with \"ccnx:/\"");
  }
  std::string_view rest = text.substr(kScheme.size());
  if (rest.empty()) {
    throw NameParseError(text.size(), "name has zero components");
  }
  std::vector<std::string> components;
  std::size_t pos = kScheme.size();
  while (true) {
    std::size_t slash = rest.find('/');
    std::string_view comp = slash == std::string_view::npos ? rest : rest.substr(0, slash);
    if (comp.empty()) {
      throw NameParseError(pos, "empty name component");
    }
    components.emplace_back(comp);
    if (slash == std::string_view::npos) {
      break;
    }
    pos += slash + 1;
    rest = rest.substr(slash + 1);
    if (rest.empty()) {
      throw NameParseError(pos, "empty name component");
    }
  }
  return ContentName(std::move(components));
}

ContentName ContentName::with_segment(std::uint64_t seg) const {
  ContentName n = *this;
  n.segment_ = seg;
  return n;
}

ContentName ContentName::without_segment() const {
  ContentName n = *this;
  n.segment_.reset();
  return n;
}

ContentName ContentName::with_appended(std::string component) const {
  ContentName n = *this;
  if (component.empty()) {
    throw std::invalid_argument("empty name component");
  }
  n.components_.push_back(std::move(component));
  return n;
}

ContentName ContentName::prefix_of_length(std::size_t n) const {
  ContentName p;
  p.components_.assign(components_.begin(), components_.begin() + n);
  return p;
}

bool ContentName::is_prefix_of(const ContentName& name) const {
  if (components_.size() > name.components_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i] != name.components_[i]) {
      return false;
    }
  }
  return true;
}

std::string ContentName::to_text() const {
  std::string out{kScheme};
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) out += '/';
    out += components_[i];
  }
  return out;
}

}  // namespace ccnsim
