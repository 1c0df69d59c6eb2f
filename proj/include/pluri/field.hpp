#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "pluri/cells.hpp"

namespace pluri {

// Finite map from lattice points to real values, optionally extendable to
// unseen points from a seed. Extension values are derived from (seed, point),
// cached on first read, and kept at least `separation` away from every value
// already present. Concurrent reads of materialized values are safe;
// extension is single-writer.
class FieldAssignment {
 public:
  FieldAssignment() = default;
  explicit FieldAssignment(std::uint64_t extension_seed) : seed_(extension_seed) {}

  void set(const LatticePoint& p, double value) { values_[p] = value; }
  bool has(const LatticePoint& p) const { return values_.count(p) != 0; }
  std::size_t size() const { return values_.size(); }

  std::optional<std::uint64_t> extension_seed() const { return seed_; }
  void set_extension_seed(std::uint64_t s) { seed_ = s; }

  // Value at p; lazily extends when absent and a seed is set, otherwise
  // throws ConfigError.
  double at(const LatticePoint& p) const;

  // Materializes any missing points in sorted order, for a canonical
  // extension independent of later read order.
  void extend_all(std::span<const LatticePoint> points);

  const std::map<LatticePoint, double>& values() const { return values_; }

  static constexpr double kExtensionSeparation = 0.02;

 private:
  double extend_one(const LatticePoint& p) const;

  mutable std::map<LatticePoint, double> values_;
  std::optional<std::uint64_t> seed_;
};

// Field file format: JSON object mapping "n0,n1,..." keys to numbers, plus
// an optional "seed" entry enabling lazy extension.
FieldAssignment load_field_json(const std::string& text);
FieldAssignment load_field_file(const std::string& path);
std::string field_to_json(const FieldAssignment&);

}  // namespace pluri
