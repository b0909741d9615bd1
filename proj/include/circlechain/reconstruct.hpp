#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circlechain/classify.hpp"
#include "circlechain/coeffs.hpp"
#include "circlechain/evalcore.hpp"
#include "circlechain/sections.hpp"

namespace circlechain {

/// A * delta^{(m)}(theta - theta_1) on the circle.
struct DeltaComponent {
  double location = 0.0;
  int order = 0;
  double amplitude = 0.0;
  double amplitude_error = 0.0;
};

/// m = 0: c_0 = A/(2 pi), c_k = (A/pi) e^{-ik theta_1}.
/// m >= 1: c_0 = 0, c_k = (A/pi) (ik)^m e^{-ik theta_1}.
TaylorCoefficients delta_taylor(const DeltaComponent& d, std::size_t K);

/// Order-0 deltas created by differentiating f once: one per singular point
/// with a jump above threshold * (1 + scale). Jumps come from the lateral
/// limits, or, when those diverge, from the limit of f(t+h) - f(t-h).
std::vector<DeltaComponent> detect_deltas(const SectionedFunction& f, double threshold = 1e-4,
                                          const ClassifyConfig& cfg = {});

/// Same, on level `lvl` of a sectional primitive.
std::vector<DeltaComponent> detect_deltas(const PiecewisePrimitive& pp, int lvl,
                                          double threshold = 1e-4,
                                          const ClassifyConfig& cfg = {});

struct ReconstructOptions {
  bool reduce = false;
  int nmax = 4;
  /// Minimum number of integrations (the classified hardness is used when larger).
  int n_override = 0;
  /// Per-section polynomials in (t - section midpoint) added to the level-n
  /// primitive; empty = none.
  std::vector<std::vector<double>> injected_polynomials;
  std::optional<RhoLadder> ladder;  ///< default: RhoLadder::for_order(K)
  QuadratureConfig quadrature{};
  ClassifyConfig classify{};
  double jump_threshold = 1e-4;
};

struct ReconstructionDiagnostics {
  double theta0 = 0.0;
  double f_theta0 = 0.0;
  double up_theta0 = 0.0;        ///< boundary value of the proper part at theta0
  double up_error = 0.0;
  double alpha0_full_path = 0.0; ///< alpha0 fitted on the unreduced coefficients
  double fourier_accuracy = 0.0;
  double full_path_discrepancy = 0.0;  ///< max |unreduced - (reduced + deltas)|, k >= 1
  std::vector<SingularityRecord> classification;
};

struct ReconstructionResult {
  int n_used = 0;
  TaylorCoefficients tc_full;
  double alpha0 = 0.0;
  TaylorCoefficients tc_reduced;
  double alpha0_reduced = 0.0;
  std::vector<DeltaComponent> deltas_removed;
  FourierCoefficients fc_minus_n;  ///< Fourier data of the level-n primitive
  ReconstructionDiagnostics diagnostics;
};

/// Pipeline failure; stage() is one of classify, integrate, fourier, alpha0.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

ReconstructionResult reconstruct(const SectionedFunction& sf, std::size_t K,
                                 const ReconstructOptions& opts = {});

/// Fourier data of the n-th angular derivative from that of the level-n
/// primitive, by the parity relations; alpha_0 is flagged indeterminate for n >= 1.
FourierCoefficients extended_fourier(const FourierCoefficients& fc_minus_n, int n);

struct RoundtripReport {
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::size_t divergent = 0;
  /// max |full - reduced| boundary difference, only when no delta was removed.
  std::optional<double> full_vs_reduced;
};

/// |limit_to_circle(tc, theta) - sf(theta)| over probes, with tc the full
/// coefficients (or the reduced ones when use_reduced).
RoundtripReport verify_roundtrip(const ReconstructionResult& res, const SectionedFunction& sf,
                                 const std::vector<double>& probes, const RhoLadder& ladder,
                                 bool use_reduced = false);

}  // namespace circlechain
