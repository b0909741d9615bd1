#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "circlechain/classify.hpp"
#include "circlechain/coeffs.hpp"
#include "circlechain/sections.hpp"

namespace circlechain::cli {

struct ExpectedPoint {
  double location;
  SingularityKind kind;
  int degree;
};

enum class OracleSource { closed_form, brute_force };

const char* to_string(OracleSource s);

/// Known Taylor coefficients c_k (k >= 0) of the catalog function.
struct CoefficientOracle {
  OracleSource source;
  std::string derivation;
  std::function<cplx(std::size_t)> coefficient;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::function<SectionedFunction()> make;
  std::vector<ExpectedPoint> expected;
  int expected_max_hardness = 0;
  std::string expected_label;  ///< e.g. "hard 1", "soft 1", "none", "max 2"
  std::optional<CoefficientOracle> oracle;
  /// Reconstruction preset: minimum integrations and polynomials added to the
  /// level-n primitive (used by the square-wave derivative entry).
  int n_override = 0;
  std::vector<std::vector<double>> injected_polynomials;
};

const std::vector<CatalogEntry>& catalog();

/// nullptr when the name is unknown.
const CatalogEntry* find_entry(const std::string& name);

/// Exact Taylor coefficients of a piecewise polynomial (sections in the
/// unwrapped coordinate), by repeated integration by parts.
std::vector<cplx> piecewise_polynomial_taylor(const PiecewisePolynomial& pp, std::size_t K);

}  // namespace circlechain::cli
