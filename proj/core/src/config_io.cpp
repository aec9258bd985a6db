#include "taxiq/config_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "taxiq/errors.hpp"

namespace taxiq {

namespace {

using nlohmann::json;

const char* kClassKeys[kVehicleClassCount] = {"occupied_ats", "empty_ats", "occupied_tts", "empty_tts"};

const json& require(const json& obj, const char* key, const char* context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string("config: missing key '") + key + "' in " + context);
  }
  return *it;
}

double require_number(const json& obj, const char* key, const char* context) {
  const json& v = require(obj, key, context);
  if (!v.is_number()) {
    throw ParseError(std::string("config: '") + key + "' in " + context + " must be a number");
  }
  return v.get<double>();
}

Matrix parse_matrix(const json& arr, std::size_t rows, std::size_t cols, const char* name) {
  if (!arr.is_array() || arr.size() != rows * cols) {
    std::ostringstream os;
    os << "config: routing." << name << " must be a flat row-major array of " << rows * cols << " numbers";
    throw ParseError(os.str());
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ParseError(std::string("config: routing.") + name + " has a non-numeric entry");
    }
    m.data[i] = arr[i].get<double>();
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json arr = json::array();
  for (double v : m.data) arr.push_back(v);
  return arr;
}

}  // namespace

NetworkConfig config_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config: top level must be an object");

  NetworkConfig config;
  const json& ver = require(root, "schema_version", "top level");
  if (!ver.is_number_integer()) throw ParseError("config: schema_version must be an integer");
  config.schema_version = ver.get<int>();
  if (config.schema_version != 1) {
    throw ParseError("config: unsupported schema_version " + std::to_string(config.schema_version));
  }

  const json& zones = require(root, "zones", "top level");
  if (!zones.is_array() || zones.empty()) throw ParseError("config: zones must be a non-empty array");
  for (const auto& z : zones) {
    if (!z.is_string()) throw ParseError("config: zone ids must be strings");
    config.zones.push_back(ZoneId{z.get<std::string>()});
  }
  const std::size_t n = config.zones.size();

  const json& adj = require(root, "adjacency", "top level");
  if (!adj.is_array() || adj.size() != n * n) {
    throw ParseError("config: adjacency must be a flat row-major array of " + std::to_string(n * n) + " entries");
  }
  for (const auto& a : adj) {
    if (!a.is_number_integer()) throw ParseError("config: adjacency entries must be integers");
    config.adjacency.push_back(a.get<int>());
  }

  if (auto it = root.find("allow_self_loops"); it != root.end()) {
    if (!it->is_boolean()) throw ParseError("config: allow_self_loops must be a boolean");
    config.allow_self_loops = it->get<bool>();
  }

  const json& params = require(root, "params", "top level");
  if (!params.is_array() || params.size() != n) {
    throw ParseError("config: params must be an array with one entry per zone");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const json& p = params[i];
    const std::string ctx = "params[" + config.zones[i].value + "]";
    if (!p.is_object()) throw ParseError("config: " + ctx + " must be an object");
    ZoneParams z;
    z.lambda_p = require_number(p, "lambda_p", ctx.c_str());
    z.p_ats = require_number(p, "p_ats", ctx.c_str());
    z.lambda_v_ats = require_number(p, "lambda_v_ats", ctx.c_str());
    z.lambda_v_tts = require_number(p, "lambda_v_tts", ctx.c_str());
    z.mu_ats = require_number(p, "mu_ats", ctx.c_str());
    z.mu_tts = require_number(p, "mu_tts", ctx.c_str());
    z.mu_road = require_number(p, "mu_road", ctx.c_str());
    const json& c = require(p, "c_road", ctx.c_str());
    if (!c.is_number_integer()) throw ParseError("config: " + ctx + ".c_road must be an integer");
    z.c_road = c.get<int>();
    z.p_pick_ats = require_number(p, "p_pick_ats", ctx.c_str());
    z.p_pick_tts = require_number(p, "p_pick_tts", ctx.c_str());
    const json& portions = require(p, "portions", ctx.c_str());
    if (!portions.is_object()) throw ParseError("config: " + ctx + ".portions must be an object");
    for (int k = 0; k < kVehicleClassCount; ++k) {
      z.portions[k] = require_number(portions, kClassKeys[k], (ctx + ".portions").c_str());
    }
    config.params.push_back(z);
  }

  const json& routing = require(root, "routing", "top level");
  if (!routing.is_object()) throw ParseError("config: routing must be an object");
  for (int k = 0; k < kVehicleClassCount; ++k) {
    const json& m = require(routing, kClassKeys[k], "routing");
    config.routing.by_class[k] = parse_matrix(m, n, n + 1, kClassKeys[k]);
  }

  return config;
}

std::string config_to_json(const NetworkConfig& config) {
  json root;
  root["schema_version"] = config.schema_version;
  json zones = json::array();
  for (const auto& z : config.zones) zones.push_back(z.value);
  root["zones"] = zones;
  json adj = json::array();
  for (int a : config.adjacency) adj.push_back(a);
  root["adjacency"] = adj;
  if (config.allow_self_loops) root["allow_self_loops"] = true;
  json params = json::array();
  for (const auto& p : config.params) {
    json z;
    z["lambda_p"] = p.lambda_p;
    z["p_ats"] = p.p_ats;
    z["lambda_v_ats"] = p.lambda_v_ats;
    z["lambda_v_tts"] = p.lambda_v_tts;
    z["mu_ats"] = p.mu_ats;
    z["mu_tts"] = p.mu_tts;
    z["mu_road"] = p.mu_road;
    z["c_road"] = p.c_road;
    z["p_pick_ats"] = p.p_pick_ats;
    z["p_pick_tts"] = p.p_pick_tts;
    json portions;
    for (int k = 0; k < kVehicleClassCount; ++k) portions[kClassKeys[k]] = p.portions[k];
    z["portions"] = portions;
    params.push_back(z);
  }
  root["params"] = params;
  json routing;
  for (int k = 0; k < kVehicleClassCount; ++k) {
    routing[kClassKeys[k]] = matrix_to_json(config.routing.by_class[k]);
  }
  root["routing"] = routing;
  return root.dump(2) + "\n";
}

NetworkConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void save_config(const NetworkConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("config: cannot write " + path.string());
  out << config_to_json(config);
}

std::string config_digest(const NetworkConfig& config) {
  // FNV-1a over the canonical dump; keys are emitted sorted, so the digest
  // is independent of construction order and platform.
  const std::string text = config_to_json(config);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace taxiq
