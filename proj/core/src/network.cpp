#include "taxiq/network.hpp"

namespace taxiq {

double weighted_exit_mass(const NetworkConfig& config, std::size_t i) {
  const std::size_t ex = exit_column(config);
  double mass = 0.0;
  for (int k = 0; k < kVehicleClassCount; ++k) {
    mass += config.params[i].portions[k] * config.routing.by_class[k].at(i, ex);
  }
  return mass;
}

}  // namespace taxiq
