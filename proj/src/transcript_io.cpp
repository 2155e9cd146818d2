#include "tg/transcript_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tg {

using nlohmann::json;

namespace {

Player player_from_string(const std::string& s) {
  if (s == "M") return Player::Maker;
  if (s == "B") return Player::Breaker;
  throw std::invalid_argument("transcript: bad player tag: " + s);
}

Outcome outcome_from_string(const std::string& s) {
  if (s == "MakerWin") return Outcome::MakerWin;
  if (s == "BreakerWin") return Outcome::BreakerWin;
  if (s == "Incomplete") return Outcome::Incomplete;
  throw std::invalid_argument("transcript: bad outcome: " + s);
}

}  // namespace

void write_transcript(std::ostream& os, const Transcript& t) {
  json header = {{"type", "header"},      {"board", to_string(t.board_kind)},
                 {"n", t.n},              {"k", t.k},
                 {"a", t.bias_a},         {"b", t.bias_b},
                 {"seed", t.seed}};
  os << header.dump() << '\n';
  for (const auto& rec : t.records) {
    json r = {{"type", "move"},
              {"round", rec.round},
              {"player", to_string(rec.player)},
              {"elements", rec.elements}};
    if (!rec.arcs.empty()) {
      json arcs = json::array();
      for (const Arc& a : rec.arcs) arcs.push_back({a.from, a.to});
      r["orientation"] = arcs;
    }
    os << r.dump() << '\n';
  }
  json trailer = {{"type", "outcome"}, {"outcome", to_string(t.outcome)}};
  os << trailer.dump() << '\n';
}

std::string transcript_to_string(const Transcript& t) {
  std::ostringstream os;
  write_transcript(os, t);
  return os.str();
}

Transcript read_transcript(std::istream& is) {
  Transcript t;
  bool saw_header = false, saw_outcome = false;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    std::string type = j.at("type").get<std::string>();
    if (type == "header") {
      if (saw_header) throw std::invalid_argument("transcript: duplicate header");
      saw_header = true;
      t.board_kind = board_kind_from_string(j.at("board").get<std::string>());
      t.n = j.at("n").get<int>();
      t.k = j.at("k").get<int>();
      t.bias_a = j.at("a").get<int>();
      t.bias_b = j.at("b").get<int>();
      t.seed = j.at("seed").get<std::uint64_t>();
    } else if (type == "move") {
      if (!saw_header) throw std::invalid_argument("transcript: move before header");
      MoveRecord rec;
      rec.round = j.at("round").get<int>();
      rec.player = player_from_string(j.at("player").get<std::string>());
      rec.elements = j.at("elements").get<std::vector<ElementId>>();
      if (j.contains("orientation"))
        for (const auto& a : j.at("orientation"))
          rec.arcs.push_back({a.at(0).get<std::uint32_t>(), a.at(1).get<std::uint32_t>()});
      t.records.push_back(std::move(rec));
    } else if (type == "outcome") {
      saw_outcome = true;
      t.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    } else {
      throw std::invalid_argument("transcript: unknown record type: " + type);
    }
  }
  if (!saw_header) throw std::invalid_argument("transcript: missing header");
  if (!saw_outcome) t.outcome = Outcome::Incomplete;
  return t;
}

Transcript transcript_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_transcript(is);
}

}  // namespace tg
