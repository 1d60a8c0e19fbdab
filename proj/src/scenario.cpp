#include "ccnsim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ccnsim/name.hpp"

namespace ccnsim {

const char* node_model_name(NodeModel model) {
  switch (model) {
    case NodeModel::WirelessNode: return "wireless_node";
    case NodeModel::WirelessAccessRouter: return "wireless_access_router";
    case NodeModel::WirelessDtnNode: return "wireless_dtn_node";
    case NodeModel::WiredNode: return "wired_node";
    case NodeModel::AccessRouter: return "access_router";
    case NodeModel::ContentServer: return "content_server";
    case NodeModel::CoreRouter: return "core_router";
  }
  return "?";
}

std::optional<NodeModel> node_model_from_name(std::string_view name) {
  for (NodeModel m : {NodeModel::WirelessNode, NodeModel::WirelessAccessRouter,
                      NodeModel::WirelessDtnNode, NodeModel::WiredNode,
                      NodeModel::AccessRouter, NodeModel::ContentServer,
                      NodeModel::CoreRouter}) {
    if (name == node_model_name(m)) {
      return m;
    }
  }
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run();

private:
  enum class SectionKind { None, Simulation, Arena, Node, Link };

  void error(int line, std::string message) {
    errors_.push_back(ScenarioError{line, std::move(message)});
  }

  void handle_header(int line, std::string_view header);
  void handle_pair(int line, std::string_view key, std::string_view value);
  void cross_validate();

  bool seen(int line, const std::string& key) {
    std::string scoped = section_tag_ + "." + key;
    if (!seen_keys_.insert(scoped).second) {
      error(line, "duplicate key '" + key + "'");
      return true;
    }
    return false;
  }

  std::optional<double> number(int line, std::string_view key, std::string_view value) {
    double out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      error(line, "key '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::uint64_t> unsigned_number(int line, std::string_view key,
                                               std::string_view value) {
    std::uint64_t out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
      error(line, "key '" + std::string(key) + "': not a nonnegative integer: '" +
                      std::string(value) + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<bool> boolean(int line, std::string_view key, std::string_view value) {
    if (value == "true") return true;
    if (value == "false") return false;
    error(line, "key '" + std::string(key) + "': expected true or false");
    return std::nullopt;
  }

  std::optional<double> positive(int line, std::string_view key, std::string_view value) {
    auto n = number(line, key, value);
    if (n && !(*n > 0)) {
      error(line, "key '" + std::string(key) + "': must be > 0");
      return std::nullopt;
    }
    return n;
  }

  std::optional<double> nonnegative(int line, std::string_view key, std::string_view value) {
    auto n = number(line, key, value);
    if (n && !(*n >= 0)) {
      error(line, "key '" + std::string(key) + "': must be >= 0");
      return std::nullopt;
    }
    return n;
  }

  std::string_view text_;
  ScenarioConfig config_;
  std::vector<ScenarioError> errors_;

  SectionKind section_ = SectionKind::None;
  std::string section_tag_;
  int section_line_ = 0;
  std::set<std::string> seen_keys_;
  bool saw_simulation_ = false;
  bool saw_duration_ = false;
};

void Parser::handle_header(int line, std::string_view header) {
  std::string_view inner = trim(header.substr(1, header.size() - 2));
  if (inner == "simulation") {
    section_ = SectionKind::Simulation;
    section_tag_ = "simulation";
    saw_simulation_ = true;
  } else if (inner == "arena") {
    section_ = SectionKind::Arena;
    section_tag_ = "arena";
  } else if (inner.substr(0, 5) == "node " || inner == "node") {
    std::string id{trim(inner.substr(4))};
    if (id.empty()) {
      error(line, "node section needs an id: [node <id>]");
      section_ = SectionKind::None;
      return;
    }
    for (const auto& n : config_.nodes) {
      if (n.id == id) {
        error(line, "duplicate node id '" + id + "'");
      }
    }
    NodeSection node;
    node.id = id;
    node.line = line;
    config_.nodes.push_back(std::move(node));
    section_ = SectionKind::Node;
    section_tag_ = "node." + id;
  } else if (inner.substr(0, 5) == "link " || inner == "link") {
    std::string id{trim(inner.substr(4))};
    if (id.empty()) {
      error(line, "link section needs an id: [link <id>]");
      section_ = SectionKind::None;
      return;
    }
    for (const auto& l : config_.links) {
      if (l.id == id) {
        error(line, "duplicate link id '" + id + "'");
      }
    }
    LinkSection link;
    link.id = id;
    link.line = line;
    config_.links.push_back(std::move(link));
    section_ = SectionKind::Link;
    section_tag_ = "link." + id;
  } else {
    error(line, "unknown section '" + std::string(inner) + "'");
    section_ = SectionKind::None;
  }
  section_line_ = line;
}

void Parser::handle_pair(int line, std::string_view key_sv, std::string_view value) {
  std::string key{key_sv};
  if (section_ != SectionKind::None && seen(line, key)) {
    return;
  }
  switch (section_) {
    case SectionKind::None:
      error(line, "key outside of any section");
      return;

    case SectionKind::Simulation: {
      auto& sim = config_.simulation;
      if (key == "duration_s") {
        if (auto n = nonnegative(line, key, value)) {
          sim.duration_s = *n;
          saw_duration_ = true;
        }
      } else if (key == "seed") {
        if (auto n = unsigned_number(line, key, value)) sim.seed = *n;
      } else if (key == "metric_sample_interval_s") {
        if (auto n = positive(line, key, value)) sim.metric_sample_interval_s = *n;
      } else if (key == "allow_partition") {
        if (auto b = boolean(line, key, value)) sim.allow_partition = *b;
      } else {
        error(line, "unknown key '" + key + "' in [simulation]");
      }
      return;
    }

    case SectionKind::Arena: {
      auto& arena = config_.arena;
      if (key == "width_m") {
        if (auto n = positive(line, key, value)) arena.width_m = *n;
      } else if (key == "height_m") {
        if (auto n = positive(line, key, value)) arena.height_m = *n;
      } else if (key == "position_update_interval_s") {
        if (auto n = positive(line, key, value)) arena.position_update_interval_s = *n;
      } else {
        error(line, "unknown key '" + key + "' in [arena]");
      }
      return;
    }

    case SectionKind::Node: {
      auto& node = config_.nodes.back();
      if (key == "model") {
        if (auto m = node_model_from_name(value)) {
          node.model = *m;
        } else {
          error(line, "unknown node model '" + std::string(value) + "'");
        }
      } else if (key == "cs_capacity") {
        if (auto n = unsigned_number(line, key, value)) node.cs_capacity = *n;
      } else if (key == "mobility") {
        if (value == "static") {
          node.mobility = MobilityKind::Static;
        } else if (value == "random_waypoint") {
          node.mobility = MobilityKind::RandomWaypoint;
        } else {
          error(line, "mobility must be 'static' or 'random_waypoint'");
        }
      } else if (key == "x_m") {
        if (auto n = nonnegative(line, key, value)) node.x_m = *n;
      } else if (key == "y_m") {
        if (auto n = nonnegative(line, key, value)) node.y_m = *n;
      } else if (key == "v_min_mps") {
        if (auto n = positive(line, key, value)) node.waypoint.v_min = *n;
      } else if (key == "v_max_mps") {
        if (auto n = positive(line, key, value)) node.waypoint.v_max = *n;
      } else if (key == "pause_min_s") {
        if (auto n = nonnegative(line, key, value)) node.waypoint.pause_min = *n;
      } else if (key == "pause_max_s") {
        if (auto n = nonnegative(line, key, value)) node.waypoint.pause_max = *n;
      } else if (key == "wireless_data_rate_bps") {
        if (auto n = positive(line, key, value)) node.wireless_data_rate_bps = *n;
      } else if (key == "wireless_range_m") {
        if (auto n = positive(line, key, value)) node.wireless_range_m = *n;
      } else if (key == "direct_data_rate_bps") {
        if (auto n = positive(line, key, value)) node.direct_data_rate_bps = *n;
      } else if (key == "direct_range_m") {
        if (auto n = positive(line, key, value)) node.direct_range_m = *n;
      } else if (key == "inter_download_interval_s") {
        if (auto n = positive(line, key, value)) node.inter_download_interval_s = *n;
      } else if (key == "inter_download_distribution") {
        if (value == "exponential") {
          node.fixed_interval = false;
        } else if (value == "fixed") {
          node.fixed_interval = true;
        } else {
          error(line, "inter_download_distribution must be 'exponential' or 'fixed'");
        }
      } else if (key == "rto_s") {
        if (auto n = positive(line, key, value)) node.rto_s = *n;
      } else if (key == "max_retries") {
        if (auto n = unsigned_number(line, key, value)) {
          node.max_retries = static_cast<std::uint32_t>(*n);
        }
      } else if (key == "target_prefixes") {
        std::string_view rest = value;
        while (!rest.empty()) {
          auto comma = rest.find(',');
          std::string_view item = trim(comma == std::string_view::npos ? rest : rest.substr(0, comma));
          if (item.empty()) {
            error(line, "target_prefixes: empty entry");
          } else {
            try {
              ContentName::parse(item);
              node.target_prefixes.emplace_back(item);
            } catch (const NameParseError& e) {
              error(line, "target_prefixes: " + std::string(e.what()));
            }
          }
          if (comma == std::string_view::npos) break;
          rest = rest.substr(comma + 1);
        }
      } else if (key == "prefix") {
        try {
          ContentName::parse(value);
          node.prefix = std::string(value);
        } catch (const NameParseError& e) {
          error(line, "prefix: " + std::string(e.what()));
        }
      } else if (key == "catalog_size") {
        auto n = unsigned_number(line, key, value);
        if (n && *n < 1) {
          error(line, "catalog_size must be >= 1");
        } else if (n) {
          node.catalog_size = *n;
        }
      } else if (key == "total_segments") {
        auto n = unsigned_number(line, key, value);
        if (n && *n < 1) {
          error(line, "total_segments must be >= 1");
        } else if (n) {
          node.total_segments = static_cast<std::uint32_t>(*n);
        }
      } else if (key == "segment_size_bytes") {
        auto n = unsigned_number(line, key, value);
        if (n && (*n < 1 || *n > 0xFFFF)) {
          error(line, "segment_size_bytes must be 1..65535");
        } else if (n) {
          node.segment_size_bytes = static_cast<std::uint32_t>(*n);
        }
      } else if (key == "content_expiry_s") {
        if (auto n = positive(line, key, value)) node.content_expiry_s = *n;
      } else {
        error(line, "unknown key '" + key + "' in [node " + node.id + "]");
      }
      return;
    }

    case SectionKind::Link: {
      auto& link = config_.links.back();
      if (key == "from") {
        link.from = std::string(value);
      } else if (key == "to") {
        link.to = std::string(value);
      } else if (key == "data_rate_bps") {
        if (auto n = positive(line, key, value)) link.data_rate_bps = *n;
      } else if (key == "delay_s") {
        if (auto n = nonnegative(line, key, value)) link.delay_s = *n;
      } else {
        error(line, "unknown key '" + key + "' in [link " + link.id + "]");
      }
      return;
    }
  }
}

/// Per-model key compatibility and required keys, checked after parsing.
void Parser::cross_validate() {
  if (!saw_simulation_ || !saw_duration_) {
    error(section_line_, "missing [simulation] duration_s");
  }

  std::set<std::string> node_ids;
  std::set<std::string> server_prefixes;
  for (auto& node : config_.nodes) {
    node_ids.insert(node.id);
    bool wireless_capable = node.model == NodeModel::WirelessNode ||
                            node.model == NodeModel::WirelessAccessRouter ||
                            node.model == NodeModel::WirelessDtnNode;
    bool mobile = node.model == NodeModel::WirelessNode ||
                  node.model == NodeModel::WirelessDtnNode;
    bool downloads = mobile || node.model == NodeModel::WiredNode;
    bool server = node.model == NodeModel::ContentServer;

    if (!wireless_capable &&
        (node.wireless_data_rate_bps || node.wireless_range_m || node.x_m || node.y_m ||
         node.mobility)) {
      error(node.line, "node '" + node.id + "' (" + node_model_name(node.model) +
                           "): wireless/position keys apply only to wireless-capable models");
    }
    if (node.model != NodeModel::WirelessDtnNode &&
        (node.direct_data_rate_bps || node.direct_range_m)) {
      error(node.line, "node '" + node.id + "': direct_* keys apply only to wireless_dtn_node");
    }
    if (!downloads &&
        (node.inter_download_interval_s || node.rto_s || node.max_retries ||
         node.fixed_interval || !node.target_prefixes.empty())) {
      error(node.line, "node '" + node.id + "': download app keys apply only to client models");
    }
    if (!server && (node.prefix || node.catalog_size || node.total_segments ||
                    node.segment_size_bytes || node.content_expiry_s)) {
      error(node.line, "node '" + node.id + "': catalog keys apply only to content_server");
    }
    if (server) {
      if (!node.prefix) {
        error(node.line, "content_server '" + node.id + "' needs a prefix");
      } else if (!server_prefixes.insert(*node.prefix).second) {
        error(node.line, "duplicate server prefix '" + *node.prefix + "'");
      }
    }
    if (node.model == NodeModel::WirelessAccessRouter && node.mobility &&
        *node.mobility != MobilityKind::Static) {
      error(node.line, "wireless_access_router '" + node.id + "' must be static");
    }
    if (node.model == NodeModel::WirelessAccessRouter && (!node.x_m || !node.y_m)) {
      error(node.line, "wireless_access_router '" + node.id + "' needs x_m and y_m");
    }
    if (node.mobility && *node.mobility == MobilityKind::Static && wireless_capable &&
        (!node.x_m || !node.y_m)) {
      error(node.line, "static node '" + node.id + "' needs x_m and y_m");
    }
    if (node.waypoint.v_max < node.waypoint.v_min) {
      error(node.line, "node '" + node.id + "': v_max_mps < v_min_mps");
    }
    if (node.waypoint.pause_max < node.waypoint.pause_min) {
      error(node.line, "node '" + node.id + "': pause_max_s < pause_min_s");
    }
    if (node.x_m && *node.x_m > config_.arena.width_m) {
      error(node.line, "node '" + node.id + "': x_m outside the arena");
    }
    if (node.y_m && *node.y_m > config_.arena.height_m) {
      error(node.line, "node '" + node.id + "': y_m outside the arena");
    }
  }

  for (const auto& link : config_.links) {
    if (link.from.empty() || link.to.empty()) {
      error(link.line, "link '" + link.id + "' needs both from and to");
      continue;
    }
    if (!node_ids.count(link.from)) {
      error(link.line, "link '" + link.id + "': unknown node id '" + link.from + "'");
    }
    if (!node_ids.count(link.to)) {
      error(link.line, "link '" + link.id + "': unknown node id '" + link.to + "'");
    }
    if (link.from == link.to) {
      error(link.line, "link '" + link.id + "': self loops are not allowed");
    }
    if (!(link.data_rate_bps > 0)) {
      error(link.line, "link '" + link.id + "' needs data_rate_bps > 0");
    }
  }

  // Target prefixes must name a declared server prefix.
  for (const auto& node : config_.nodes) {
    for (const auto& target : node.target_prefixes) {
      if (!server_prefixes.count(target)) {
        error(node.line, "node '" + node.id + "': target prefix '" + target +
                             "' matches no server");
      }
    }
  }
}

ParseResult Parser::run() {
  int line_no = 0;
  std::string_view rest = text_;
  while (!rest.empty() || line_no == 0) {
    auto nl = rest.find('\n');
    std::string_view raw = nl == std::string_view::npos ? rest : rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;

    auto hash = raw.find('#');
    std::string_view content = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (content.empty()) {
      if (nl == std::string_view::npos) break;
      continue;
    }
    if (content.front() == '[') {
      if (content.back() != ']') {
        error(line_no, "unterminated section header");
      } else {
        handle_header(line_no, content);
      }
    } else {
      auto eq = content.find('=');
      if (eq == std::string_view::npos) {
        error(line_no, "expected 'key = value'");
      } else {
        std::string_view key = trim(content.substr(0, eq));
        std::string_view value = trim(content.substr(eq + 1));
        if (key.empty() || value.empty()) {
          error(line_no, "expected 'key = value'");
        } else {
          handle_pair(line_no, key, value);
        }
      }
    }
    if (nl == std::string_view::npos) break;
  }

  cross_validate();

  ParseResult result;
  result.errors = std::move(errors_);
  if (result.errors.empty()) {
    result.config = std::move(config_);
  }
  return result;
}

}  // namespace

ParseResult parse_scenario_text(std::string_view text) {
  return Parser(text).run();
}

ParseResult parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.errors.push_back(ScenarioError{0, "cannot open scenario file: " + path.string()});
    return r;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string format_errors(const std::vector<ScenarioError>& errors) {
  std::string out;
  for (const auto& e : errors) {
    out += "line " + std::to_string(e.line) + ": " + e.message + "\n";
  }
  return out;
}

}  // namespace ccnsim
