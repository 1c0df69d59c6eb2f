#include "pluri/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pluri {

std::vector<double> sample_separated(Rng& rng, std::size_t count, double lo, double hi,
                                     double min_sep, const std::vector<double>& existing) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      double candidate = rng.uniform(lo, hi);
      bool ok = true;
      for (double v : out)
        if (std::fabs(candidate - v) < min_sep) { ok = false; break; }
      if (ok)
        for (double v : existing)
          if (std::fabs(candidate - v) < min_sep) { ok = false; break; }
      if (ok) {
        out.push_back(candidate);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::runtime_error("sample_separated: could not place value with requested separation");
  }
  return out;
}

}  // namespace pluri
