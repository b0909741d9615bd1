#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "circlechain/coeffs.hpp"
#include "circlechain/evalcore.hpp"

namespace circlechain {

/// Evaluator of one section. Receives the unwrapped angle t of the open arc
/// (left, right) of that section, where right may exceed pi for the section
/// that crosses the cut.
using SectionEvaluator = std::function<double(double)>;

struct Arc {
  double left;
  double right;
  double length() const { return right - left; }
  double mid() const { return 0.5 * (left + right); }
};

/// Real function on the circle defined section by section between sorted
/// singular points theta_1 < ... < theta_N in (-pi, pi]. Section i is the arc
/// (theta_i, theta_{i+1}); the last one wraps to theta_1 + 2 pi. With N = 0
/// there is a single arc (-pi, pi).
class SectionedFunction {
 public:
  SectionedFunction(std::vector<double> points, std::vector<SectionEvaluator> sections);

  /// Every section evaluates f at the normalized angle.
  static SectionedFunction from_global(std::vector<double> points,
                                       std::function<double(double)> f);

  std::size_t point_count() const { return points_.size(); }
  std::size_t section_count() const { return sections_.size(); }
  const std::vector<double>& singular_points() const { return points_; }

  Arc arc(std::size_t section) const;
  double eval_section(std::size_t section, double t) const { return sections_[section](t); }

  /// Section index and unwrapped coordinate of an angle.
  std::pair<std::size_t, double> locate(double theta) const;

  /// f(theta); NaN exactly at a singular point.
  double operator()(double theta) const;

  /// f(theta_i - h) from the section ending at theta_i, f(theta_i + h) from
  /// the section starting there.
  double left_of(std::size_t point, double h) const;
  double right_of(std::size_t point, double h) const;

  /// Index of the declared singular point at theta; ValidationError if none.
  std::size_t point_index(double theta, double tol = 1e-10) const;

  /// Largest-gap midpoint: the angle farthest from every singular point.
  double farthest_regular_point() const;

 private:
  std::vector<double> points_;
  std::vector<SectionEvaluator> sections_;
};

/// Composite Gauss-Legendre configuration shared by sectional integration and
/// Fourier extraction.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double endpoint_eps = 1e-8;  ///< panels stop this far from singular endpoints
  int max_subdivisions = 6;    ///< bulk-width halvings before giving up
  int panel_order = 20;
  double panel_width = 0.125;  ///< bulk panel width for primitives

  void validate() const;
};

/// Level-m sectional primitive f^{(-m)}: in section i the m-fold iterated
/// integral from the reference point theta_{0,i} (section midpoint), plus an
/// optional added polynomial of order m-1 in (t - theta_{0,i}).
/// Lower levels l < m are available as the (m-l)-th derivative of the same
/// object, including the derivatives of the added polynomial.
class PiecewisePrimitive {
 public:
  int level() const;
  const SectionedFunction& base() const;
  double reference_point(std::size_t section) const;
  const std::vector<double>& added_polynomial(std::size_t section) const;

  /// Copy with per-section polynomials (coefficients of (t - theta_0)^j,
  /// j < level) replacing the current ones.
  PiecewisePrimitive with_polynomials(std::vector<std::vector<double>> per_section) const;

  double operator()(double theta) const { return evaluate(theta, level()); }
  double evaluate(double theta, int lvl) const;
  double evaluate_section(std::size_t section, double t, int lvl) const;

  /// The level-lvl function as a SectionedFunction over the same points.
  SectionedFunction as_sectioned(int lvl) const;
  SectionedFunction as_sectioned() const { return as_sectioned(level()); }

  struct Impl;

 private:
  friend PiecewisePrimitive sectional_integrate(const SectionedFunction&, int,
                                                const QuadratureConfig&);
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<const std::vector<std::vector<double>>> poly_;
};

/// n-fold sectional integration (n >= 0; n = 0 returns the base itself).
/// Throws QuadratureError naming the section when a panel integral is not finite.
PiecewisePrimitive sectional_integrate(const SectionedFunction& sf, int n,
                                       const QuadratureConfig& qc = {});

struct FourierEstimate {
  FourierCoefficients coeffs;
  double accuracy = 0.0;  ///< max of mesh-refinement difference and endpoint-model error
};

/// alpha_k = (1/pi) int f cos k theta, beta_k likewise, k <= K, by composite
/// Gauss-Legendre on every section with geometric refinement toward the
/// singular endpoints and a fitted log/power model for the last eps.
/// Throws NotIntegrableError when an endpoint behaves like |x|^p, p <= -1, and
/// QuadratureError naming the section when refinement does not converge.
FourierEstimate fourier_numeric(const SectionedFunction& f, std::size_t K,
                                const QuadratureConfig& qc = {});

/// Piecewise polynomial: section i holds sum_j a_{ij} t^j in the unwrapped
/// coordinate of its arc.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> points, std::vector<std::vector<double>> coeffs);

  const std::vector<double>& singular_points() const { return points_; }
  const std::vector<double>& coefficients(std::size_t section) const { return coeffs_[section]; }
  std::size_t section_count() const { return coeffs_.size(); }
  /// Largest section degree (0 for constants and for the zero polynomial).
  int order() const;
  bool nonzero() const;

  double eval_section(std::size_t section, double t) const;
  SectionedFunction to_sectioned() const;

 private:
  std::vector<double> points_;
  std::vector<std::vector<double>> coeffs_;
};

struct JumpRecord {
  double location;
  double jump;  ///< right lateral limit minus left lateral limit
};

struct PolynomialDerivative {
  PiecewisePolynomial derivative;
  std::vector<JumpRecord> jumps;  ///< nonzero jumps only, in point order
};

PolynomialDerivative pp_differentiate(const PiecewisePolynomial& pp);

}  // namespace circlechain
