#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circlechain/coeffs.hpp"
#include "circlechain/reconstruct.hpp"

namespace circlechain::cli {

struct Provenance {
  std::string source;
  int n_used = 0;
  double alpha0 = 0.0;
  std::vector<DeltaComponent> deltas;
  std::string variant;     ///< "full" or "reduced"
  std::vector<int> chain;  ///< angular steps applied after reconstruction
};

/// Versioned JSON coefficient file:
/// {"version": 1, "K": K, "coefficients": [[re, im], ...], "provenance": {...}}
struct CoefficientFile {
  static constexpr int kVersion = 1;
  TaylorCoefficients coeffs;
  std::optional<Provenance> provenance;
};

std::string to_json(const CoefficientFile& f);
/// Throws ValidationError on malformed input.
CoefficientFile parse_coefficient_file(const std::string& text);

CoefficientFile read_coefficient_file(const std::string& path);
void write_coefficient_file(const std::string& path, const CoefficientFile& f);

}  // namespace circlechain::cli
