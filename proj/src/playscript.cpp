#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <vector>

#include "playrank/game_io.hpp"

namespace playrank {

namespace {

using Kind = PlayscriptError::Kind;

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::UnknownToken: return "unknown token";
    case Kind::UndeclaredPlayer: return "undeclared player";
    case Kind::MalformedHeader: return "malformed header";
  }
  return "error";
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Word {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) words.push_back({line.substr(start, i - start), start + 1});
  }
  return words;
}

bool is_reserved(std::string_view id) {
  return id == "G" || id == "0" || id.starts_with("G:") || id.find("->") != std::string_view::npos ||
         id.starts_with("#");
}

class PlayscriptParser {
 public:
  GameLog parse(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    log_.sport = Sport::Basketball;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no;
      parse_line(line, line_no);
      if (end == text.size()) break;
      pos = end + 1;
    }
    if (teams_declared_ != 2) {
      fail(Kind::MalformedHeader, line_no, 1,
           "expected exactly two '#team' headers, found " + std::to_string(teams_declared_));
    }
    return std::move(log_);
  }

 private:
  [[noreturn]] static void fail(Kind kind, std::size_t line, std::size_t column, const std::string& reason) {
    throw PlayscriptError(kind, line, column, reason);
  }

  void parse_line(std::string_view line, std::size_t line_no) {
    const auto first = std::find_if_not(line.begin(), line.end(), is_space);
    if (first == line.end()) return;
    if (*first == '#') {
      if (line.substr(static_cast<std::size_t>(first - line.begin())).starts_with("#!")) return;
      parse_header(line, line_no);
      return;
    }
    if (teams_declared_ != 2) {
      fail(Kind::MalformedHeader, line_no, static_cast<std::size_t>(first - line.begin()) + 1,
           "play sequence before both '#team' headers");
    }
    parse_sequence(line, line_no);
  }

  void parse_header(std::string_view line, std::size_t line_no) {
    const std::vector<Word> words = split_words(line);
    const Word& directive = words.front();
    if (directive.text == "#team") {
      if (teams_declared_ == 2) fail(Kind::MalformedHeader, line_no, directive.column, "more than two '#team' headers");
      if (words.size() < 3) {
        fail(Kind::MalformedHeader, line_no, directive.column, "'#team' needs a name and at least one player id");
      }
      Roster& roster = log_.teams[teams_declared_];
      roster.team_name = std::string(words[1].text);
      for (std::size_t w = 2; w < words.size(); ++w) {
        const Word& id = words[w];
        if (is_reserved(id.text)) {
          fail(Kind::MalformedHeader, line_no, id.column, "'" + std::string(id.text) + "' is reserved, not a player id");
        }
        if (!team_of_.emplace(std::string(id.text), teams_declared_).second) {
          fail(Kind::MalformedHeader, line_no, id.column, "player '" + std::string(id.text) + "' declared twice");
        }
        roster.players.push_back({std::string(id.text), std::string(id.text), false});
      }
      ++teams_declared_;
    } else if (directive.text == "#starters") {
      for (std::size_t w = 1; w < words.size(); ++w) {
        Player* p = find_player(words[w].text);
        if (p == nullptr) {
          fail(Kind::UndeclaredPlayer, line_no, words[w].column,
               "starter '" + std::string(words[w].text) + "' is not on a '#team' line");
        }
        p->starter = true;
      }
    } else if (directive.text == "#score") {
      if (words.size() != 2 || !parse_final_score(words[1].text)) {
        fail(Kind::MalformedHeader, line_no, directive.column, "'#score' expects <team1>-<team2>, e.g. 3-2");
      }
      log_.metadata.final_score = std::string(words[1].text);
    } else if (directive.text == "#date") {
      if (words.size() < 2) fail(Kind::MalformedHeader, line_no, directive.column, "'#date' needs a value");
      const std::size_t start = words[1].column - 1;
      std::string_view rest = line.substr(start);
      while (!rest.empty() && is_space(rest.back())) rest.remove_suffix(1);
      log_.metadata.date = std::string(rest);
    } else {
      fail(Kind::MalformedHeader, line_no, directive.column, "unknown header '" + std::string(directive.text) + "'");
    }
  }

  Player* find_player(std::string_view id) {
    auto it = team_of_.find(std::string(id));
    if (it == team_of_.end()) return nullptr;
    for (Player& p : log_.teams[it->second].players) {
      if (p.id == id) return &p;
    }
    return nullptr;
  }

  void parse_sequence(std::string_view line, std::size_t line_no) {
    std::optional<PlayerId> holder;  // player in possession, if the ball is live
    std::size_t start = 0;
    while (true) {
      const std::size_t arrow = line.find("->", start);
      const std::size_t stop = arrow == std::string_view::npos ? line.size() : arrow;
      handle_token(line.substr(start, stop - start), start, line_no, holder);
      if (arrow == std::string_view::npos) break;
      start = arrow + 2;
    }
  }

  void handle_token(std::string_view segment, std::size_t offset, std::size_t line_no,
                    std::optional<PlayerId>& holder) {
    std::size_t lead = 0;
    while (lead < segment.size() && is_space(segment[lead])) ++lead;
    std::string_view token = segment.substr(lead);
    while (!token.empty() && is_space(token.back())) token.remove_suffix(1);
    const std::size_t column = offset + lead + 1;

    if (token.empty()) fail(Kind::UnknownToken, line_no, column, "empty token between arrows");
    if (std::any_of(token.begin(), token.end(), is_space)) {
      fail(Kind::UnknownToken, line_no, column, "'" + std::string(token) + "' is not a single token (missing '->'?)");
    }

    if (token == "0") {
      if (holder) log_.events.push_back(Event::unforced_turnover(*holder));
      holder.reset();
      return;
    }
    if (token == "G" || token.starts_with("G:")) {
      int points = 1;
      if (token.size() > 1) {
        const std::string_view digits = token.substr(2);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), points);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || points < 1 || points > 4) {
          fail(Kind::UnknownToken, line_no, column, "'" + std::string(token) + "': score must be G:1 to G:4");
        }
      }
      if (!holder) fail(Kind::UnknownToken, line_no, column, "score with no player in possession");
      log_.events.push_back(Event::score(*holder, points));
      holder.reset();
      return;
    }

    const std::string id(token);
    auto it = team_of_.find(id);
    if (it == team_of_.end()) fail(Kind::UndeclaredPlayer, line_no, column, "'" + id + "' is not on a '#team' line");
    if (holder) {
      if (team_of_.at(*holder) == it->second) {
        log_.events.push_back(Event::pass(*holder, id));
      } else {
        log_.events.push_back(Event::dispossess(id, *holder));
      }
    }
    holder = id;
  }

  GameLog log_;
  std::size_t teams_declared_ = 0;
  std::map<std::string, std::size_t> team_of_;
};

}  // namespace

PlayscriptError::PlayscriptError(Kind kind, std::size_t line, std::size_t column, const std::string& reason)
    : ParseError("line " + std::to_string(line) + ", column " + std::to_string(column),
                 std::string(kind_name(kind)) + ": " + reason),
      kind_(kind),
      line_(line),
      column_(column) {}

GameLog parse_playscript(std::string_view text) { return PlayscriptParser{}.parse(text); }

}  // namespace playrank
