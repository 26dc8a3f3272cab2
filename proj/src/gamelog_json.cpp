#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <limits>

#include <json.hpp>

#include "playrank/game_io.hpp"

namespace playrank {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class Reader {
 public:
  [[noreturn]] static void fail(const std::string& path, const std::string& reason) { throw SchemaError(path, reason); }

  static void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(path + "." + key, "unknown field");
      }
    }
  }

  static const json& field(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing required field");
    return *it;
  }

  static std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  static std::string string_field(const json& j, const std::string& path, const std::string& key) {
    return string_at(field(j, path, key), path + "." + key);
  }

  static std::optional<std::string> optional_string(const json& j, const std::string& path, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    return string_at(*it, path + "." + key);
  }

  static int int_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    const auto value = j.get<std::int64_t>();
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
      fail(path, "integer out of range");
    }
    return static_cast<int>(value);
  }

  static const json& array_field(const json& j, const std::string& path, const std::string& key) {
    const json& a = field(j, path, key);
    if (!a.is_array()) fail(path + "." + key, "expected an array");
    return a;
  }
};

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

Roster parse_team(const json& j, const std::string& path) {
  Reader::expect_object(j, path, {"name", "players"});
  Roster roster;
  roster.team_name = Reader::string_field(j, path, "name");
  const json& players = Reader::array_field(j, path, "players");
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string ppath = index_path(path + ".players", i);
    const json& pj = players[i];
    Reader::expect_object(pj, ppath, {"id", "name", "starter"});
    Player p;
    p.id = Reader::string_field(pj, ppath, "id");
    p.display_name = Reader::optional_string(pj, ppath, "name").value_or(p.id);
    if (auto it = pj.find("starter"); it != pj.end()) {
      if (!it->is_boolean()) Reader::fail(ppath + ".starter", "expected true or false");
      p.starter = it->get<bool>();
    }
    roster.players.push_back(std::move(p));
  }
  return roster;
}

Event parse_event(const json& j, const std::string& path) {
  if (!j.is_object()) Reader::fail(path, "expected an object");
  const std::string type = Reader::string_field(j, path, "type");
  const auto kind = kind_from_type_name(type);
  if (!kind) Reader::fail(path + ".type", "unknown event type '" + type + "'");
  const EventSchema& schema = schema_of(*kind);

  for (const auto& [key, value] : j.items()) {
    const bool known = key == "type" || (schema.arity > 0 && key == schema.roles[0]) ||
                       (schema.arity > 1 && key == schema.roles[1]) ||
                       (!schema.quantity_name.empty() && key == schema.quantity_name);
    if (!known) Reader::fail(path + "." + key, "unknown field for event type '" + type + "'");
  }

  Event e;
  e.kind = *kind;
  for (std::size_t slot = 0; slot < schema.arity; ++slot) {
    e.actors[slot] = Reader::string_field(j, path, std::string(schema.roles[slot]));
  }
  if (!schema.quantity_name.empty()) {
    const std::string qname(schema.quantity_name);
    if (auto it = j.find(qname); it != j.end()) {
      e.quantity = Reader::int_at(*it, path + "." + qname);
    } else if (*kind == EventKind::Score) {
      e.quantity = 1;
    } else {
      Reader::fail(path + "." + qname, "missing required field");
    }
  }
  return e;
}

ordered_json event_to_json(const Event& e) {
  const EventSchema& schema = schema_of(e.kind);
  ordered_json j;
  j["type"] = schema.type_name;
  for (std::size_t slot = 0; slot < schema.arity; ++slot) j[std::string(schema.roles[slot])] = e.actors[slot];
  if (!schema.quantity_name.empty()) j[std::string(schema.quantity_name)] = e.quantity;
  return j;
}

}  // namespace

GameLog parse_gamelog(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("byte " + std::to_string(e.byte), "invalid JSON");
  }

  const std::string root = "$";
  Reader::expect_object(doc, root, {"schema_version", "sport", "teams", "metadata", "events"});

  const std::string version = Reader::string_field(doc, root, "schema_version");
  if (version != kGameLogSchemaVersion) {
    Reader::fail("$.schema_version", "unsupported schema version '" + version + "'");
  }

  GameLog log;
  const std::string sport = Reader::string_field(doc, root, "sport");
  const auto parsed_sport = sport_from_string(sport);
  if (!parsed_sport) Reader::fail("$.sport", "unknown sport '" + sport + "'");
  log.sport = *parsed_sport;

  const json& teams = Reader::array_field(doc, root, "teams");
  if (teams.size() != 2) Reader::fail("$.teams", "expected exactly two teams");
  for (std::size_t t = 0; t < 2; ++t) log.teams[t] = parse_team(teams[t], index_path("$.teams", t));

  if (auto it = doc.find("metadata"); it != doc.end()) {
    Reader::expect_object(*it, "$.metadata", {"date", "final_score"});
    log.metadata.date = Reader::optional_string(*it, "$.metadata", "date");
    log.metadata.final_score = Reader::optional_string(*it, "$.metadata", "final_score");
    if (log.metadata.final_score && !parse_final_score(*log.metadata.final_score)) {
      Reader::fail("$.metadata.final_score", "expected <team1>-<team2>, e.g. 92-89");
    }
  }

  const json& events = Reader::array_field(doc, root, "events");
  log.events.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) log.events.push_back(parse_event(events[i], index_path("$.events", i)));
  return log;
}

std::string render_gamelog(const GameLog& log) {
  ordered_json doc;
  doc["schema_version"] = kGameLogSchemaVersion;
  doc["sport"] = to_string(log.sport);
  doc["teams"] = ordered_json::array();
  for (const Roster& roster : log.teams) {
    ordered_json team;
    team["name"] = roster.team_name;
    team["players"] = ordered_json::array();
    for (const Player& p : roster.players) {
      team["players"].push_back({{"id", p.id}, {"name", p.display_name}, {"starter", p.starter}});
    }
    doc["teams"].push_back(std::move(team));
  }
  if (log.metadata.date || log.metadata.final_score) {
    ordered_json meta = ordered_json::object();
    if (log.metadata.date) meta["date"] = *log.metadata.date;
    if (log.metadata.final_score) meta["final_score"] = *log.metadata.final_score;
    doc["metadata"] = std::move(meta);
  }
  doc["events"] = ordered_json::array();
  for (const Event& e : log.events) doc["events"].push_back(event_to_json(e));
  return doc.dump(2) + "\n";
}

InputFormat detect_format(std::string_view text) {
  const auto first = std::find_if(text.begin(), text.end(), [](char c) {
    return !std::isspace(static_cast<unsigned char>(c));
  });
  // Skip a UTF-8 byte order mark.
  if (text.substr(static_cast<std::size_t>(first - text.begin())).starts_with("\xEF\xBB\xBF")) {
    return detect_format(text.substr(static_cast<std::size_t>(first - text.begin()) + 3));
  }
  return first != text.end() && *first == '{' ? InputFormat::Json : InputFormat::Playscript;
}

GameLog parse_game(std::string_view text, InputFormat format) {
  if (format == InputFormat::Auto) format = detect_format(text);
  return format == InputFormat::Json ? parse_gamelog(text) : parse_playscript(text);
}

}  // namespace playrank
