#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace taxiq {

// Opaque zone identifier. Ordering and equality are by the raw string.
struct ZoneId {
  std::string value;

  friend bool operator==(const ZoneId&, const ZoneId&) = default;
  friend auto operator<=>(const ZoneId&, const ZoneId&) = default;
};

enum class Service { ats, tts };

inline const char* service_name(Service s) { return s == Service::ats ? "ats" : "tts"; }

// Vehicle flow classes used for routing. Occupied vehicles carry a passenger,
// empty ones reposition; each class has its own routing row per zone.
enum class VehicleClass : int {
  occupied_ats = 0,
  empty_ats = 1,
  occupied_tts = 2,
  empty_tts = 3,
};
inline constexpr int kVehicleClassCount = 4;

// Dense row-major matrix of probabilities.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// One row-stochastic matrix per vehicle class. Each is n x (n + 1): column j
// < n routes to zone j, the final column routes out of the network.
struct RoutingMatrices {
  Matrix by_class[kVehicleClassCount];

  Matrix& of(VehicleClass k) { return by_class[static_cast<int>(k)]; }
  const Matrix& of(VehicleClass k) const { return by_class[static_cast<int>(k)]; }

  friend bool operator==(const RoutingMatrices&, const RoutingMatrices&) = default;
};

// Per-zone rates (per minute) and probabilities.
struct ZoneParams {
  double lambda_p = 0.0;      // passenger arrivals
  double p_ats = 0.0;         // share of passengers requesting ats service
  double lambda_v_ats = 0.0;  // fresh vehicle arrivals by service
  double lambda_v_tts = 0.0;
  double mu_ats = 1.0;  // matching service rates
  double mu_tts = 1.0;
  double mu_road = 1.0;  // per-server road service rate
  int c_road = 1;        // road servers (concurrent capacity)
  double p_pick_ats = 0.0;  // pickup probabilities applied to through flow
  double p_pick_tts = 0.0;
  double portions[kVehicleClassCount] = {0.25, 0.25, 0.25, 0.25};  // departure flow mix

  double portion(VehicleClass k) const { return portions[static_cast<int>(k)]; }

  friend bool operator==(const ZoneParams&, const ZoneParams&) = default;
};

struct NetworkConfig {
  int schema_version = 1;
  std::vector<ZoneId> zones;
  std::vector<int> adjacency;  // row-major n x n, entries 0/1
  bool allow_self_loops = false;
  std::vector<ZoneParams> params;  // parallel to zones
  RoutingMatrices routing;

  std::size_t size() const { return zones.size(); }
  int adj(std::size_t i, std::size_t j) const { return adjacency[i * zones.size() + j]; }

  // Index of the zone with the given id, or -1.
  int zone_index(std::string_view id) const {
    for (std::size_t i = 0; i < zones.size(); ++i) {
      if (zones[i].value == id) return static_cast<int>(i);
    }
    return -1;
  }

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

// Exit-column index of a routing row for an n-zone network.
inline std::size_t exit_column(const NetworkConfig& config) { return config.size(); }

// Exit probability mass of zone i weighted by the configured class portions.
double weighted_exit_mass(const NetworkConfig& config, std::size_t i);

}  // namespace taxiq
