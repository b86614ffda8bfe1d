#include "mrta/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "mrta/error.hpp"

namespace mrta {

namespace {

constexpr std::int64_t kMaxCoordinate = 1'000'000'000;
constexpr std::int64_t kMaxLoad = 1'000'000'000'000;
constexpr std::int64_t kMaxCount = 10'000'000;

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::string_view text;
  std::size_t number;  // 1-based
  std::vector<Token> tokens;

  ParseError error(std::size_t token, const std::string& message) const {
    const std::size_t col = token < tokens.size() ? tokens[token].column : text.size() + 1;
    return ParseError(number, col, message);
  }
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view raw = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{raw, number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      const std::size_t start = i;
      while (i < raw.size() && !is_space(raw[i])) ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::int64_t read_int(const Line& line, std::size_t token, std::int64_t lo, std::int64_t hi,
                      const char* what) {
  if (token >= line.tokens.size()) throw line.error(token, std::string("missing ") + what);
  const auto v = to_int(line.tokens[token].text);
  if (!v) throw line.error(token, std::string("expected integer ") + what);
  if (*v < lo || *v > hi) {
    throw line.error(token, std::string(what) + " " + std::to_string(*v) + " out of range");
  }
  return *v;
}

// Integral coordinates, also accepted when written as e.g. "12.0".
std::int64_t read_coordinate(const Line& line, std::size_t token) {
  if (token >= line.tokens.size()) throw line.error(token, "missing coordinate");
  const std::string_view text = line.tokens[token].text;
  std::optional<std::int64_t> v = to_int(text);
  if (!v) {
    const auto d = to_double(text);
    if (!d || std::floor(*d) != *d || std::fabs(*d) > static_cast<double>(kMaxCoordinate)) {
      throw line.error(token, "coordinate must be an integer within +-1e9");
    }
    v = static_cast<std::int64_t>(*d);
  }
  if (*v < -kMaxCoordinate || *v > kMaxCoordinate) {
    throw line.error(token, "coordinate must be an integer within +-1e9");
  }
  return *v;
}

void expect_end(const Line& line, std::size_t token) {
  if (token < line.tokens.size()) throw line.error(token, "unexpected trailing token");
}

enum class Section { None, Coords, Demands, Depots, Stations, Robots };

struct Header {
  std::string value;
  std::size_t line;
};

struct NodeRow {
  std::int64_t id;
  Point pos;
  std::size_t line;
};

struct DemandRow {
  std::int64_t id;
  Load demand;
  std::size_t line;
};

struct RefRow {
  std::int64_t id;
  std::size_t line;
};

struct RobotRow {
  std::int64_t id;
  Point pos;
  Load capacity;
  double speed;
  std::string name;
  std::size_t line;
};

struct RawFile {
  std::map<std::string, Header, std::less<>> headers;
  std::vector<NodeRow> coords;
  std::vector<DemandRow> demands;
  std::vector<RefRow> depots;
  std::vector<RefRow> stations;
  std::vector<RobotRow> robots;
  bool saw_depots = false;
  bool saw_stations = false;
  bool saw_robots = false;

  const Header* header(std::string_view key) const {
    auto it = headers.find(key);
    return it == headers.end() ? nullptr : &it->second;
  }
};

std::optional<Section> section_named(std::string_view word) {
  if (word == "NODE_COORD_SECTION") return Section::Coords;
  if (word == "DEMAND_SECTION") return Section::Demands;
  if (word == "DEPOT_SECTION") return Section::Depots;
  if (word == "STATION_SECTION") return Section::Stations;
  if (word == "ROBOT_SECTION") return Section::Robots;
  return std::nullopt;
}

std::string read_model_name(const Line& line, std::size_t token) {
  if (token >= line.tokens.size()) return {};
  const std::size_t start = line.tokens[token].column - 1;
  std::string_view rest = trim(line.text.substr(start));
  if (rest.front() != '"') return std::string(rest);
  const std::size_t close = rest.find('"', 1);
  if (close == std::string_view::npos) throw line.error(token, "unterminated model name");
  if (!trim(rest.substr(close + 1)).empty()) {
    throw ParseError(line.number, start + close + 2, "unexpected text after model name");
  }
  return std::string(rest.substr(1, close - 1));
}

RawFile scan(std::string_view text) {
  RawFile raw;
  Section section = Section::None;
  bool ended = false;
  std::map<Section, bool> seen;

  for (const Line& line : split_lines(text)) {
    if (line.tokens.empty()) continue;
    if (ended) throw line.error(0, "content after EOF");
    const std::string_view first = line.tokens[0].text;

    const bool is_row = to_int(first).has_value();
    if (!is_row || section == Section::None) {
      if (first == "EOF") {
        expect_end(line, 1);
        ended = true;
        continue;
      }
      if (auto s = section_named(first)) {
        expect_end(line, 1);
        if (seen[*s]) throw line.error(0, "duplicate section " + std::string(first));
        seen[*s] = true;
        section = *s;
        if (*s == Section::Depots) raw.saw_depots = true;
        if (*s == Section::Stations) raw.saw_stations = true;
        if (*s == Section::Robots) raw.saw_robots = true;
        continue;
      }
      const std::size_t colon = line.text.find(':');
      if (colon == std::string_view::npos) {
        if (first.ends_with("_SECTION")) throw line.error(0, "unsupported section " + std::string(first));
        throw line.error(0, "expected KEY : VALUE, section name or EOF");
      }
      const std::string key(trim(line.text.substr(0, colon)));
      if (key.empty() || key.find_first_of(" \t") != std::string::npos) {
        throw line.error(0, "malformed header key");
      }
      if (raw.headers.contains(key)) throw line.error(0, "duplicate header " + key);
      raw.headers.emplace(key, Header{std::string(trim(line.text.substr(colon + 1))), line.number});
      section = Section::None;
      continue;
    }

    switch (section) {
      case Section::Coords: {
        const auto id = read_int(line, 0, 1, kMaxCount, "node id");
        const Point p{read_coordinate(line, 1), read_coordinate(line, 2)};
        expect_end(line, 3);
        raw.coords.push_back({id, p, line.number});
        break;
      }
      case Section::Demands: {
        const auto id = read_int(line, 0, 1, kMaxCount, "node id");
        const auto d = read_int(line, 1, 0, kMaxLoad, "demand");
        expect_end(line, 2);
        raw.demands.push_back({id, d, line.number});
        break;
      }
      case Section::Depots:
      case Section::Stations: {
        auto& list = section == Section::Depots ? raw.depots : raw.stations;
        for (std::size_t i = 0; i < line.tokens.size(); ++i) {
          const auto id = read_int(line, i, -1, kMaxCount, "node id");
          if (id == -1) {
            expect_end(line, i + 1);
            section = Section::None;
            break;
          }
          if (id < 1) throw line.error(i, "node id must be positive");
          list.push_back({id, line.number});
        }
        break;
      }
      case Section::Robots: {
        RobotRow row;
        row.id = read_int(line, 0, 1, kMaxCount, "robot id");
        row.pos = {read_coordinate(line, 1), read_coordinate(line, 2)};
        row.capacity = read_int(line, 3, 1, kMaxLoad, "capacity");
        if (line.tokens.size() < 5) throw line.error(4, "missing speed");
        const auto speed = to_double(line.tokens[4].text);
        if (!speed || *speed <= 0.0) throw line.error(4, "speed must be a positive finite number");
        row.speed = *speed;
        row.name = read_model_name(line, 5);
        row.line = line.number;
        raw.robots.push_back(std::move(row));
        break;
      }
      case Section::None:
        break;
    }
  }
  if (!ended) throw ParseError(0, 0, "missing EOF");
  return raw;
}

std::int64_t header_count(const RawFile& raw, std::string_view key) {
  const Header* h = raw.header(key);
  if (!h) throw ParseError(0, 0, "missing header " + std::string(key));
  const auto v = to_int(h->value);
  if (!v || *v < 0 || *v > kMaxCount) {
    throw ParseError(h->line, 1, std::string(key) + " must be a count between 0 and 1e7");
  }
  return *v;
}

// Checks that rows cover ids 1..count exactly once; returns them in id order.
template <class Row>
std::vector<const Row*> dense_by_id(const std::vector<Row>& rows, std::int64_t count,
                                    const std::string& what, const std::string& count_label) {
  if (static_cast<std::int64_t>(rows.size()) != count) {
    throw ParseError(0, 0, count_label + " count mismatch: header declares " + std::to_string(count) +
                               ", section lists " + std::to_string(rows.size()));
  }
  std::vector<const Row*> slots(rows.size(), nullptr);
  for (const Row& row : rows) {
    if (row.id > count) {
      throw ParseError(row.line, 1, what + " id " + std::to_string(row.id) + " out of range 1.." +
                                        std::to_string(count));
    }
    auto& slot = slots[static_cast<std::size_t>(row.id - 1)];
    if (slot) throw ParseError(row.line, 1, "duplicate " + what + " id " + std::to_string(row.id));
    slot = &row;
  }
  return slots;
}

std::optional<Family> family_from_type(std::string_view type) {
  if (type == "CVRP") return Family::XMT;
  if (type == "HFVRP") return Family::RMT;
  if (type == "MDVRP-DV") return Family::WMT;
  if (type == "HFMDVRP-DV") return Family::SMT;
  return parse_family(type);
}

std::string_view type_of(Family f) {
  switch (f) {
    case Family::XMT: return "CVRP";
    case Family::RMT: return "HFVRP";
    case Family::WMT: return "MDVRP-DV";
    case Family::SMT: return "HFMDVRP-DV";
  }
  return "HFMDVRP-DV";
}

void finish(const Instance& inst) {
  const ValidationReport report = validate_instance(inst);
  if (report.ok()) return;
  std::string message = "invalid instance: " + report.violations.front();
  if (report.violations.size() > 1) {
    message += " (+" + std::to_string(report.violations.size() - 1) + " more)";
  }
  throw ParseError(0, 0, message);
}

Instance build_extended(const RawFile& raw) {
  const std::int64_t m = header_count(raw, "PICKING");
  const std::int64_t p = header_count(raw, "STATIONS");
  const std::int64_t n = header_count(raw, "ROBOTS");

  Instance inst;
  if (const Header* h = raw.header("NAME")) inst.name = h->value;
  const Header* type = raw.header("TYPE");
  if (!type) throw ParseError(0, 0, "missing header TYPE");
  const auto family = family_from_type(type->value);
  if (!family) throw ParseError(type->line, 1, "unknown TYPE " + type->value);
  inst.family = *family;
  if (const Header* h = raw.header("EDGE_WEIGHT_TYPE"); h && h->value != "MAN_2D") {
    throw ParseError(h->line, 1, "unsupported EDGE_WEIGHT_TYPE " + h->value);
  }

  const auto nodes = dense_by_id(raw.coords, m + p, "node", "node");
  const auto demands = dense_by_id(raw.demands, m, "demand", "demand");
  if (!raw.saw_stations) throw ParseError(0, 0, "missing STATION_SECTION");
  if (static_cast<std::int64_t>(raw.stations.size()) != p) {
    throw ParseError(0, 0, "station count mismatch: header declares " + std::to_string(p) +
                               ", section lists " + std::to_string(raw.stations.size()));
  }
  std::vector<char> station_seen(static_cast<std::size_t>(p), 0);
  for (const RefRow& s : raw.stations) {
    if (s.id <= m || s.id > m + p) {
      throw ParseError(s.line, 1, "station node id " + std::to_string(s.id) + " out of range " +
                                      std::to_string(m + 1) + ".." + std::to_string(m + p));
    }
    char& seen = station_seen[static_cast<std::size_t>(s.id - m - 1)];
    if (seen) throw ParseError(s.line, 1, "duplicate station node id " + std::to_string(s.id));
    seen = 1;
  }
  if (!raw.saw_robots) throw ParseError(0, 0, "missing ROBOT_SECTION");
  const auto robots = dense_by_id(raw.robots, n, "robot", "robot");

  for (std::int64_t i = 0; i < m; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    inst.tasks.push_back(PickingTask{TaskId::from_index(idx), nodes[idx]->pos, demands[idx]->demand});
  }
  for (std::int64_t i = 0; i < p; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    inst.stations.push_back(DeliveryStation{StationId::from_index(idx), nodes[static_cast<std::size_t>(m) + idx]->pos});
  }
  for (const RobotRow* r : robots) {
    inst.robots.push_back(Robot{RobotId(static_cast<std::uint32_t>(r->id)), r->pos, r->capacity,
                                r->speed, r->name});
  }
  finish(inst);
  return inst;
}

std::optional<std::int64_t> number_after(std::string_view text, std::string_view marker) {
  const std::size_t at = text.find(marker);
  if (at == std::string_view::npos) return std::nullopt;
  std::size_t i = at + marker.size();
  while (i < text.size() && is_space(text[i])) ++i;
  std::size_t j = i;
  while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
  if (j == i || j - i > 7) return std::nullopt;
  return to_int(text.substr(i, j - i));
}

Instance build_classic(const RawFile& raw) {
  const std::int64_t dim = header_count(raw, "DIMENSION");
  const Header* cap = raw.header("CAPACITY");
  const auto capacity = to_int(cap->value);
  if (!capacity || *capacity < 1 || *capacity > kMaxLoad) {
    throw ParseError(cap->line, 1, "CAPACITY must be a positive integer");
  }

  std::int64_t vehicles = 1;
  const Header* name = raw.header("NAME");
  const Header* comment = raw.header("COMMENT");
  if (raw.header("VEHICLES")) {
    vehicles = header_count(raw, "VEHICLES");
  } else if (auto k = name ? number_after(name->value, "-k") : std::nullopt) {
    vehicles = *k;
  } else if (auto t = comment ? number_after(comment->value, "trucks:") : std::nullopt) {
    vehicles = *t;
  }
  if (vehicles < 1) throw ParseError(0, 0, "vehicle count must be positive");

  const auto nodes = dense_by_id(raw.coords, dim, "node", "node");
  const auto demands = dense_by_id(raw.demands, dim, "demand", "demand");
  std::int64_t depot = 1;
  if (raw.saw_depots) {
    if (raw.depots.size() != 1) throw ParseError(0, 0, "exactly one depot is supported");
    depot = raw.depots.front().id;
    if (depot > dim) throw ParseError(raw.depots.front().line, 1, "depot id out of range");
  }

  Instance inst;
  inst.family = Family::XMT;
  if (name) inst.name = name->value;
  const Point depot_pos = nodes[static_cast<std::size_t>(depot - 1)]->pos;
  for (std::int64_t id = 1; id <= dim; ++id) {
    if (id == depot) continue;
    const auto idx = static_cast<std::size_t>(id - 1);
    inst.tasks.push_back(PickingTask{TaskId::from_index(inst.tasks.size()), nodes[idx]->pos,
                                     demands[idx]->demand});
  }
  inst.stations.push_back(DeliveryStation{StationId(1), depot_pos});
  for (std::int64_t i = 0; i < vehicles; ++i) {
    inst.robots.push_back(
        Robot{RobotId::from_index(static_cast<std::size_t>(i)), depot_pos, *capacity, 1.0, {}});
  }
  finish(inst);
  return inst;
}

void check_text_field(std::string_view value, bool allow_quote, const char* what) {
  for (char c : value) {
    if (static_cast<unsigned char>(c) < 0x20 || (!allow_quote && c == '"')) {
      throw Error(std::string(what) + " contains a character the instance format cannot carry");
    }
  }
  if (trim(value) != value) throw Error(std::string(what) + " has surrounding whitespace");
}

std::string step_text(RouteStep step) {
  return (step.is_pick() ? "P" : "D") + std::to_string(step.ref);
}

RouteStep parse_step(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'P' && text[0] != 'D')) {
    throw ParseError(0, 0, "malformed route step \"" + text + "\"");
  }
  const auto v = to_int(std::string_view(text).substr(1));
  if (!v || *v < 1 || *v > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(0, 0, "malformed route step \"" + text + "\"");
  }
  const auto id = static_cast<std::uint32_t>(*v);
  return text[0] == 'P' ? RouteStep::pick(TaskId(id)) : RouteStep::deliver(StationId(id));
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string out(buf, ptr);
  if (out.find_first_of(".eEn") == std::string::npos) out += ".0";
  return out;
}

Instance parse_instance(std::string_view text) {
  const RawFile raw = scan(text);
  if (raw.header("PICKING") || raw.saw_robots || raw.saw_stations) return build_extended(raw);
  if (raw.header("CAPACITY")) return build_classic(raw);
  throw ParseError(0, 0, "neither an extended instance (PICKING header) nor a CVRP file (CAPACITY)");
}

std::string write_instance(const Instance& inst) {
  check_text_field(inst.name, true, "instance name");
  std::ostringstream out;
  const std::size_t m = inst.tasks.size();
  out << "NAME : " << inst.name << '\n'
      << "TYPE : " << type_of(inst.family) << '\n'
      << "PICKING : " << m << '\n'
      << "STATIONS : " << inst.stations.size() << '\n'
      << "ROBOTS : " << inst.robots.size() << '\n'
      << "EDGE_WEIGHT_TYPE : MAN_2D\n"
      << "NODE_COORD_SECTION\n";
  for (const auto& t : inst.tasks) out << t.id.value() << ' ' << t.pos.x << ' ' << t.pos.y << '\n';
  for (const auto& s : inst.stations) {
    out << m + s.id.value() << ' ' << s.pos.x << ' ' << s.pos.y << '\n';
  }
  out << "DEMAND_SECTION\n";
  for (const auto& t : inst.tasks) out << t.id.value() << ' ' << t.demand << '\n';
  out << "STATION_SECTION\n";
  for (const auto& s : inst.stations) out << m + s.id.value() << '\n';
  out << "-1\n"
      << "ROBOT_SECTION\n";
  for (const auto& r : inst.robots) {
    check_text_field(r.model_name, false, "model name");
    out << r.id.value() << ' ' << r.start.x << ' ' << r.start.y << ' ' << r.max_capacity << ' '
        << format_double(r.speed);
    if (!r.model_name.empty()) out << " \"" << r.model_name << '"';
    out << '\n';
  }
  out << "EOF\n";
  return out.str();
}

std::string write_solution(const Solution& sol) {
  nlohmann::ordered_json j;
  j["format"] = "mrta-solution";
  j["version"] = 1;
  j["algorithm"] = sol.algorithm;
  j["seed"] = sol.seed;
  j["total_cost"] = sol.total_cost;
  j["depot_visits"] = sol.depot_visits;
  j["used_robots"] = sol.used_robots;
  j["wall_time"] = sol.wall_time;
  j["routes"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sol.routes.size(); ++i) {
    nlohmann::ordered_json route;
    route["robot"] = i + 1;
    route["steps"] = nlohmann::ordered_json::array();
    for (RouteStep step : sol.routes[i]) route["steps"].push_back(step_text(step));
    j["routes"].push_back(std::move(route));
  }
  return j.dump(2) + "\n";
}

Solution parse_solution(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text.begin(), text.end());
    if (j.at("format") != "mrta-solution") throw ParseError(0, 0, "not an mrta-solution record");
    if (j.at("version") != 1) throw ParseError(0, 0, "unsupported solution version");
    Solution sol;
    sol.algorithm = j.at("algorithm").get<std::string>();
    sol.seed = j.at("seed").get<std::uint64_t>();
    sol.total_cost = j.at("total_cost").get<double>();
    sol.depot_visits = j.at("depot_visits").get<std::int64_t>();
    sol.used_robots = j.at("used_robots").get<std::int64_t>();
    sol.wall_time = j.at("wall_time").get<double>();
    const auto& routes = j.at("routes");
    for (std::size_t i = 0; i < routes.size(); ++i) {
      const auto& route = routes.at(i);
      if (route.at("robot").get<std::size_t>() != i + 1) {
        throw ParseError(0, 0, "routes must be listed in robot order");
      }
      Route steps;
      for (const auto& s : route.at("steps")) steps.push_back(parse_step(s.get<std::string>()));
      sol.routes.push_back(std::move(steps));
    }
    return sol;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, 0, std::string("malformed solution: ") + e.what());
  }
}

std::vector<RobotCatalogEntry> parse_catalog(std::string_view text) {
  std::vector<RobotCatalogEntry> out;
  bool header = false;
  for (const Line& line : split_lines(text)) {
    const std::string_view body = trim(line.text);
    if (body.empty() || body.front() == '#') continue;
    if (!header) {
      if (body != "model_name,capacity,speed") {
        throw ParseError(line.number, 1, "expected header model_name,capacity,speed");
      }
      header = true;
      continue;
    }
    const std::size_t c1 = body.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : body.find(',', c1 + 1);
    if (c2 == std::string_view::npos || body.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError(line.number, 1, "expected three comma-separated fields");
    }
    RobotCatalogEntry e;
    e.model_name = std::string(trim(body.substr(0, c1)));
    const auto cap = to_int(trim(body.substr(c1 + 1, c2 - c1 - 1)));
    if (!cap || *cap < 1 || *cap > kMaxLoad) throw ParseError(line.number, c1 + 2, "capacity must be a positive integer");
    const auto speed = to_double(trim(body.substr(c2 + 1)));
    if (!speed || *speed <= 0.0) throw ParseError(line.number, c2 + 2, "speed must be positive");
    e.capacity = *cap;
    e.speed = *speed;
    out.push_back(std::move(e));
  }
  if (out.empty()) throw ParseError(0, 0, "catalog has no entries");
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace mrta
