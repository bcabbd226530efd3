#include "aisclass/track_io.hpp"

#include <string>

#include <json.hpp>

#include "aisclass/errors.hpp"

namespace aisclass {
namespace {

using nlohmann::json;

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json type_json(const std::optional<ShipType>& t) {
  return t ? json(std::string(to_string(*t))) : json(nullptr);
}

std::optional<ShipType> type_from(const json& j, const char* key) {
  const auto s = get_opt<std::string>(j, key);
  if (!s) return std::nullopt;
  return parse_ship_type(*s);
}

BinaryClass class_from(const std::string& s) {
  if (s == "fishing") return BinaryClass::fishing;
  if (s == "non_fishing") return BinaryClass::non_fishing;
  if (s == "unlabeled") return BinaryClass::unlabeled;
  throw DataError("unknown class '" + s + "'");
}

json extras_json(const StaticExtras& e) {
  return {{"nav_status", opt(e.nav_status)}, {"length", opt(e.length)}, {"width", opt(e.width)}};
}

StaticExtras extras_from(const json& j) {
  return {get_opt<int>(j, "nav_status"), get_opt<double>(j, "length"), get_opt<double>(j, "width")};
}

json kpoint_json(const KinematicPoint& p) {
  return {{"t", p.t},         {"x", p.x},           {"y", p.y},
          {"vx", p.vx},       {"vy", p.vy},         {"speed", p.speed},
          {"course", p.course}, {"mu", {p.mode_prob[0], p.mode_prob[1]}}};
}

KinematicPoint kpoint_from(const json& j) {
  KinematicPoint p;
  p.t = j.at("t").get<std::int64_t>();
  p.x = j.at("x").get<double>();
  p.y = j.at("y").get<double>();
  p.vx = j.at("vx").get<double>();
  p.vy = j.at("vy").get<double>();
  p.speed = j.at("speed").get<double>();
  p.course = j.at("course").get<double>();
  const auto mu = j.at("mu").get<std::vector<double>>();
  if (mu.size() != 2) throw DataError("mode probabilities must have two entries");
  p.mode_prob = {mu[0], mu[1]};
  return p;
}

template <typename F>
void for_each_line(std::istream& in, F&& f) {
  if (!in.good()) throw DataError("store is not readable");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      f(json::parse(line));
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(n) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(n) + ": " + e.what());
    }
  }
}

}  // namespace

void write_tracks_jsonl(std::ostream& out, const std::vector<Track>& tracks) {
  for (const auto& t : tracks) {
    json pts = json::array();
    for (const auto& r : t.points) {
      pts.push_back({{"t", r.timestamp},
                     {"lat", r.lat},
                     {"lon", r.lon},
                     {"sog", opt(r.sog)},
                     {"cog", opt(r.cog)},
                     {"nav_status", opt(r.nav_status)},
                     {"ship_type", type_json(r.ship_type)},
                     {"length", opt(r.length)},
                     {"width", opt(r.width)},
                     {"mobile_class", to_string(r.mobile_class)}});
    }
    json j = {{"mmsi", t.mmsi},
              {"ship_type", type_json(t.ship_type)},
              {"class", to_string(t.cls)},
              {"extras", extras_json(t.extras)},
              {"points", std::move(pts)}};
    out << j.dump() << '\n';
  }
}

std::vector<Track> read_tracks_jsonl(std::istream& in) {
  std::vector<Track> tracks;
  for_each_line(in, [&](const json& j) {
    Track t;
    t.mmsi = j.at("mmsi").get<std::uint32_t>();
    t.ship_type = type_from(j, "ship_type");
    t.cls = class_from(j.at("class").get<std::string>());
    t.extras = extras_from(j.at("extras"));
    for (const auto& p : j.at("points")) {
      AisRecord r;
      r.timestamp = p.at("t").get<std::int64_t>();
      r.mmsi = t.mmsi;
      r.lat = p.at("lat").get<double>();
      r.lon = p.at("lon").get<double>();
      r.sog = get_opt<double>(p, "sog");
      r.cog = get_opt<double>(p, "cog");
      r.nav_status = get_opt<int>(p, "nav_status");
      r.ship_type = type_from(p, "ship_type");
      r.length = get_opt<double>(p, "length");
      r.width = get_opt<double>(p, "width");
      r.mobile_class = parse_mobile_class(p.at("mobile_class").get<std::string>());
      t.points.push_back(r);
    }
    tracks.push_back(std::move(t));
  });
  return tracks;
}

void write_kinematic_jsonl(std::ostream& out, const std::vector<KinematicTrack>& tracks) {
  for (const auto& t : tracks) {
    json pts = json::array();
    for (const auto& p : t.points) pts.push_back(kpoint_json(p));
    json j = {{"mmsi", t.mmsi},
              {"ship_type", type_json(t.ship_type)},
              {"class", to_string(t.cls)},
              {"extras", extras_json(t.extras)},
              {"origin", {{"lat", t.origin_lat}, {"lon", t.origin_lon}}},
              {"source", t.source == KinematicSource::imm ? "imm" : "raw"},
              {"underflow_steps", t.underflow_steps},
              {"points", std::move(pts)}};
    out << j.dump() << '\n';
  }
}

std::vector<KinematicTrack> read_kinematic_jsonl(std::istream& in) {
  std::vector<KinematicTrack> tracks;
  for_each_line(in, [&](const json& j) {
    KinematicTrack t;
    t.mmsi = j.at("mmsi").get<std::uint32_t>();
    t.ship_type = type_from(j, "ship_type");
    t.cls = class_from(j.at("class").get<std::string>());
    t.extras = extras_from(j.at("extras"));
    t.origin_lat = j.at("origin").at("lat").get<double>();
    t.origin_lon = j.at("origin").at("lon").get<double>();
    t.source = j.at("source").get<std::string>() == "raw" ? KinematicSource::raw : KinematicSource::imm;
    t.underflow_steps = j.value("underflow_steps", std::size_t{0});
    for (const auto& p : j.at("points")) t.points.push_back(kpoint_from(p));
    tracks.push_back(std::move(t));
  });
  return tracks;
}

void write_segments_jsonl(std::ostream& out, const std::vector<Segment>& segments) {
  for (const auto& s : segments) {
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(kpoint_json(p));
    json j = {{"mmsi", s.mmsi},
              {"index", s.index},
              {"ship_type", to_string(s.ship_type)},
              {"label", to_string(s.label)},
              {"extras", extras_json(s.extras)},
              {"points", std::move(pts)}};
    out << j.dump() << '\n';
  }
}

std::vector<Segment> read_segments_jsonl(std::istream& in) {
  std::vector<Segment> segments;
  for_each_line(in, [&](const json& j) {
    Segment s;
    s.mmsi = j.at("mmsi").get<std::uint32_t>();
    s.index = j.at("index").get<std::size_t>();
    s.ship_type = parse_ship_type(j.at("ship_type").get<std::string>());
    const auto label = parse_label(j.at("label").get<std::string>());
    if (!label) throw DataError("unknown segment label");
    s.label = *label;
    s.extras = extras_from(j.at("extras"));
    for (const auto& p : j.at("points")) s.points.push_back(kpoint_from(p));
    segments.push_back(std::move(s));
  });
  return segments;
}

}  // namespace aisclass
