#pragma once

#include <string>
#include <vector>

#include "circlechain/sections.hpp"

namespace circlechain {

enum class SingularityKind {
  regular,          ///< no defect found up to the probed derivative order
  soft,             ///< finite lateral limits; degree = first defective derivative (0 = jump)
  borderline_hard,  ///< divergent but locally integrable; degree 0
  hard,             ///< degree = integrations needed to reach a borderline point
  unclassifiable,   ///< oscillatory or otherwise unstable approach
  exceeds_nmax      ///< still hard after nmax integrations
};

const char* to_string(SingularityKind k);

/// One-sided approach f(theta_i +- h_j), h_j = delta 2^{-j}.
struct LateralEstimate {
  bool finite = false;
  bool oscillatory = false;
  double value = 0.0;           ///< extrapolated limit when finite
  double error = 0.0;
  double growth_exponent = 0.0; ///< p_hat in |f| ~ C |x|^p_hat, from the difference ratio
  bool log_type = false;
  std::vector<double> samples;
};

struct SingularityRecord {
  double location = 0.0;
  SingularityKind kind = SingularityKind::regular;
  int degree = 0;
  LateralEstimate left;
  LateralEstimate right;
  double growth_exponent = 0.0;  ///< most singular side; 0 when both limits are finite
  bool log_type = false;
  int integrations = 0;          ///< sectional integrations performed while classifying
  std::string note;
};

struct ClassifyConfig {
  double delta = 0.1;      ///< first approach distance (capped at a quarter of the adjacent arcs)
  int halvings = 12;
  double derivative_window = 0.2;
  QuadratureConfig quadrature{};
};

LateralEstimate lateral_limit(const std::vector<double>& samples);

/// f at theta_i -+ h_j for the point with index `point`; left side when !right.
std::vector<double> approach_samples(const SectionedFunction& sf, std::size_t point, bool right,
                                     const ClassifyConfig& cfg = {});

/// Classifies the declared singular point at theta (ValidationError if there is
/// none). Soft points are probed up to derivative order nmax; hard points are
/// integrated sectionally up to nmax times.
SingularityRecord classify_point(const SectionedFunction& sf, double theta, int nmax,
                                 const ClassifyConfig& cfg = {});

std::vector<SingularityRecord> classify_all(const SectionedFunction& sf, int nmax,
                                            const ClassifyConfig& cfg = {});

/// Largest degree of hardness over all singular points (0 when none is hard).
/// Throws ClassificationError when a point is unclassifiable or exceeds nmax.
int max_hardness(const SectionedFunction& sf, int nmax, const ClassifyConfig& cfg = {});

}  // namespace circlechain
