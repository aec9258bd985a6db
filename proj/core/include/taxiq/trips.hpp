#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "taxiq/network.hpp"

namespace taxiq {

// One observed trip, or a vehicle lifecycle marker when `vehicle_event` is
// set. Times are minutes (CSV files carry seconds; conversion happens at the
// file boundary).
struct TripRecord {
  Service service = Service::ats;
  std::string origin_zone;
  std::string dest_zone;       // empty for vehicle events
  double pickup_time = 0.0;    // minutes since epoch
  double travel_time = 0.0;    // minutes; > 0 for trips
  double distance = 0.0;
  double fare = 0.0;
  double search_time = -1.0;   // minutes; < 0 means column absent
  std::string vehicle_event;   // "" or "new_online"
};

struct RowIssue {
  long line = 0;  // 1-based file line
  std::string message;
};

struct TripParseResult {
  std::vector<TripRecord> records;
  std::vector<RowIssue> issues;  // malformed rows, skipped but reported
};

// Reads the trip CSV (header: service,origin_zone,dest_zone,pickup_time,
// travel_time,distance,fare,search_time,vehicle_event; the last two columns
// are optional). Malformed rows go to `issues` rather than aborting. A zone
// map, when given, rewrites raw location ids to zone ids; unmapped ids
// become row issues.
TripParseResult parse_trips(const std::filesystem::path& path,
                            const std::map<std::string, std::string>* zone_map = nullptr);

// Writes records in file units (seconds) with the full header.
void write_trips(const std::vector<TripRecord>& records, const std::filesystem::path& path);

// Reads a raw_location_id,zone map.
std::map<std::string, std::string> load_zone_map(const std::filesystem::path& path);

}  // namespace taxiq
