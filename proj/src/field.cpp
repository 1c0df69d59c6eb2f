#include "pluri/field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "pluri/rng.hpp"

namespace pluri {

namespace {

std::uint64_t point_hash(const LatticePoint& p) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Coord c : p.coords) {
    h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(c));
    h *= 0x100000001b3ull;
    h = splitmix64(h);
  }
  return h;
}

}  // namespace

double FieldAssignment::extend_one(const LatticePoint& p) const {
  std::uint64_t h = splitmix64(*seed_ ^ point_hash(p));
  for (int attempt = 0; attempt < 4096; ++attempt) {
    double candidate = static_cast<double>(splitmix64(h + static_cast<std::uint64_t>(attempt)) >> 11) *
                           0x1.0p-52 - 1.0;  // [-1,1)
    bool ok = true;
    for (const auto& [q, v] : values_)
      if (std::fabs(candidate - v) < kExtensionSeparation) { ok = false; break; }
    if (ok) return candidate;
  }
  throw ConfigError("field extension could not keep the separation margin");
}

double FieldAssignment::at(const LatticePoint& p) const {
  auto it = values_.find(p);
  if (it != values_.end()) return it->second;
  if (!seed_) throw ConfigError("field has no value at " + to_string(p) + " and no extension seed");
  double v = extend_one(p);
  values_.emplace(p, v);
  return v;
}

void FieldAssignment::extend_all(std::span<const LatticePoint> points) {
  std::vector<LatticePoint> missing;
  for (const auto& p : points)
    if (!has(p)) missing.push_back(p);
  std::sort(missing.begin(), missing.end());
  missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
  for (const auto& p : missing) (void)at(p);
}

FieldAssignment load_field_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw ConfigError("field file must be a JSON object");
  FieldAssignment field;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "seed") {
      field.set_extension_seed(it.value().get<std::uint64_t>());
      continue;
    }
    LatticePoint p;
    std::istringstream is(it.key());
    std::string part;
    while (std::getline(is, part, ','))
      p.coords.push_back(static_cast<Coord>(std::stol(part)));
    if (p.coords.empty()) throw ConfigError("bad field key: " + it.key());
    field.set(p, it.value().get<double>());
  }
  return field;
}

FieldAssignment load_field_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_field_json(buf.str());
}

std::string field_to_json(const FieldAssignment& field) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  if (field.extension_seed()) j["seed"] = *field.extension_seed();
  for (const auto& [p, v] : field.values()) {
    std::ostringstream key;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      if (i) key << ',';
      key << p.coords[i];
    }
    j[key.str()] = v;
  }
  return j.dump(2);
}

}  // namespace pluri
