#include "taxiq/trips.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "taxiq/errors.hpp"

namespace taxiq {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double* out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last;
}

constexpr const char* kHeader =
    "service,origin_zone,dest_zone,pickup_time,travel_time,distance,fare,search_time,vehicle_event";

}  // namespace

TripParseResult parse_trips(const std::filesystem::path& path,
                            const std::map<std::string, std::string>* zone_map) {
  std::ifstream in(path);
  if (!in) throw ParseError("trips: cannot open " + path.string());

  TripParseResult result;
  std::string line;
  long lineno = 0;

  if (!std::getline(in, line)) throw ParseError("trips: empty file " + path.string());
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_line(line);
  if (header.size() < 7 || header[0] != "service" || header[1] != "origin_zone" ||
      header[2] != "dest_zone" || header[3] != "pickup_time" || header[4] != "travel_time" ||
      header[5] != "distance" || header[6] != "fare") {
    throw ParseError("trips: unexpected header '" + line + "'", 1);
  }
  const bool has_search = header.size() >= 8 && header[7] == "search_time";
  const bool has_event = header.size() >= 9 && header[8] == "vehicle_event";
  if (header.size() > 9 || (header.size() >= 8 && !has_search) ||
      (header.size() == 9 && !has_event)) {
    throw ParseError("trips: unexpected header '" + line + "'", 1);
  }

  auto map_zone = [&](const std::string& raw, std::string* out) {
    if (zone_map == nullptr) {
      *out = raw;
      return true;
    }
    auto it = zone_map->find(raw);
    if (it == zone_map->end()) return false;
    *out = it->second;
    return true;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != header.size()) {
      result.issues.push_back({lineno, "wrong field count"});
      continue;
    }
    TripRecord r;
    if (f[0] == "ats") {
      r.service = Service::ats;
    } else if (f[0] == "tts") {
      r.service = Service::tts;
    } else {
      result.issues.push_back({lineno, "unknown service '" + f[0] + "'"});
      continue;
    }
    if (!map_zone(f[1], &r.origin_zone)) {
      result.issues.push_back({lineno, "unmapped origin location '" + f[1] + "'"});
      continue;
    }
    if (r.origin_zone.empty()) {
      result.issues.push_back({lineno, "empty origin_zone"});
      continue;
    }
    r.vehicle_event = has_event ? f[8] : "";
    const bool is_event = !r.vehicle_event.empty();
    if (is_event && r.vehicle_event != "new_online") {
      result.issues.push_back({lineno, "unknown vehicle_event '" + r.vehicle_event + "'"});
      continue;
    }

    double pickup_s = 0.0;
    if (!parse_double(f[3], &pickup_s)) {
      result.issues.push_back({lineno, "bad pickup_time '" + f[3] + "'"});
      continue;
    }
    r.pickup_time = pickup_s / 60.0;

    if (is_event) {
      // Markers need no destination or durations.
      result.records.push_back(std::move(r));
      continue;
    }

    if (!map_zone(f[2], &r.dest_zone)) {
      result.issues.push_back({lineno, "unmapped destination location '" + f[2] + "'"});
      continue;
    }
    if (r.dest_zone.empty()) {
      result.issues.push_back({lineno, "empty dest_zone"});
      continue;
    }
    double travel_s = 0.0, distance = 0.0, fare = 0.0;
    if (!parse_double(f[4], &travel_s) || travel_s <= 0.0) {
      result.issues.push_back({lineno, "bad travel_time '" + f[4] + "'"});
      continue;
    }
    if (!parse_double(f[5], &distance) || distance < 0.0) {
      result.issues.push_back({lineno, "bad distance '" + f[5] + "'"});
      continue;
    }
    if (!parse_double(f[6], &fare) || fare < 0.0) {
      result.issues.push_back({lineno, "bad fare '" + f[6] + "'"});
      continue;
    }
    r.travel_time = travel_s / 60.0;
    r.distance = distance;
    r.fare = fare;
    if (has_search && !f[7].empty()) {
      double search_s = 0.0;
      if (!parse_double(f[7], &search_s) || search_s < 0.0) {
        result.issues.push_back({lineno, "bad search_time '" + f[7] + "'"});
        continue;
      }
      r.search_time = search_s / 60.0;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

void write_trips(const std::vector<TripRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("trips: cannot write " + path.string());
  out << kHeader << "\n";
  char buf[512];
  for (const auto& r : records) {
    const bool is_event = !r.vehicle_event.empty();
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%.12g,", service_name(r.service), r.origin_zone.c_str(),
                  r.dest_zone.c_str(), r.pickup_time * 60.0);
    out << buf;
    if (is_event) {
      out << ",,,," << r.vehicle_event << "\n";
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,", r.travel_time * 60.0, r.distance, r.fare);
    out << buf;
    if (r.search_time >= 0.0) {
      std::snprintf(buf, sizeof buf, "%.12g", r.search_time * 60.0);
      out << buf;
    }
    out << ",\n";
  }
}

std::map<std::string, std::string> load_zone_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("zone map: cannot open " + path.string());
  std::map<std::string, std::string> map;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "raw_location_id,zone") continue;
    const auto f = split_line(line);
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ParseError("zone map: bad row '" + line + "'", lineno);
    }
    map[f[0]] = f[1];
  }
  return map;
}

}  // namespace taxiq
