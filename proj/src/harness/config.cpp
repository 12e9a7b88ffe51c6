#include "hobody/harness.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace hobody {

namespace {

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw UsageError(origin + ": seed must be a non-negative integer, got '" + text + "'");
  return v;
}

}  // namespace

void SuiteConfig::validate() const {
  if (n < 1 || n > 4) throw UsageError("n must lie in 1..4");
  if (m < 1 || m > 3) throw UsageError("m must lie in 1..3");
  if (n * m > 12) throw UsageError("n * m must not exceed 12");
  if (samples && *samples < 1000) throw UsageError("samples must be at least 1000");
  if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
  for (const auto& [suite, tol] : tolerance)
    if (!(tol > 0.0)) throw UsageError("tolerance for " + suite + " must be positive");
}

std::pair<std::string, double> parse_tolerance(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects SUITE=VALUE, got '" + spec + "'");
  const std::string value = spec.substr(eq + 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw UsageError("--tol value is not a number: '" + value + "'");
  return {spec.substr(0, eq), v};
}

void apply_env(SuiteConfig& config, const char* env_seed) {
  if (env_seed != nullptr && *env_seed != '\0') config.seed = parse_seed(env_seed, "HOBODY_SEED");
}

void apply_config_file(SuiteConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("config file " + path + " must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "n") config.n = value.get<int>();
      else if (key == "m") config.m = value.get<int>();
      else if (key == "samples") config.samples = value.get<std::size_t>();
      else if (key == "seed") config.seed = value.get<std::uint64_t>();
      else if (key == "catalog") config.catalog = value.get<std::string>();
      else if (key == "out") config.out = value.get<std::string>();
      else if (key == "format") config.format = value.get<std::string>();
      else if (key == "tol") {
        for (const auto& [suite, tol] : value.items()) config.tolerance[suite] = tol.get<double>();
      } else {
        throw InputError("config file " + path + ": unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw InputError("config file " + path + ": " + e.what());
  }
}

}  // namespace hobody
