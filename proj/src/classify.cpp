#include "circlechain/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "linalg.hpp"

namespace circlechain {

namespace {

// Difference ratios inside this band around 1 are read as logarithmic growth:
// |p_hat| < 0.05.
const double kLogBand = std::exp2(-0.05);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double approach_delta(const SectionedFunction& sf, std::size_t idx, double cap) {
  const std::size_t n = sf.section_count();
  const std::size_t prev = idx == 0 ? n - 1 : idx - 1;
  return std::min({cap, 0.25 * sf.arc(idx).length(), 0.25 * sf.arc(prev).length()});
}

std::vector<double> approach(const SectionedFunction& sf, std::size_t idx, bool right,
                             double delta, int halvings) {
  std::vector<double> v;
  for (int j = 0; j <= halvings; ++j) {
    const double h = std::ldexp(delta, -j);
    v.push_back(right ? sf.right_of(idx, h) : sf.left_of(idx, h));
  }
  return v;
}

struct OneSided {
  double value = 0.0;
  double error = 0.0;
};

// d-th derivative at x = 0 of g sampled on (0, window] through a Chebyshev
// interpolant with m first-kind nodes.
OneSided chebyshev_derivative(const std::function<double(double)>& g, double window, int m,
                              int d) {
  std::vector<double> u(m), gv(m);
  double gmax = 0.0;
  for (int j = 0; j < m; ++j) {
    u[j] = std::cos(kPi * (j + 0.5) / m);
    gv[j] = g(0.5 * window * (u[j] + 1.0));
  }
  // Derivatives ignore constants; removing the mean keeps rounding noise
  // proportional to the variation of g instead of its size.
  const double mean = std::accumulate(gv.begin(), gv.end(), 0.0) / m;
  for (double& x : gv) {
    x -= mean;
    gmax = std::max(gmax, std::abs(x));
  }
  double deriv = 0.0, amplification = 0.0;
  for (int n = 0; n < m; ++n) {
    double a = 0.0;
    for (int j = 0; j < m; ++j) a += gv[j] * std::cos(n * std::acos(u[j]));
    a *= (n == 0 ? 1.0 : 2.0) / m;
    // T_n^{(d)}(-1) = (-1)^{n+d} prod_{k<d} (n^2 - k^2) / (2k + 1)
    double t = ((n + d) % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < d; ++k) t *= static_cast<double>(n * n - k * k) / (2 * k + 1);
    deriv += a * t;
    amplification += std::abs(t);
  }
  const double scale = std::pow(2.0 / window, d);
  return {deriv * scale, 1e-15 * gmax * amplification * scale};
}

OneSided side_derivative(const std::function<double(double)>& g, double window, int d) {
  const OneSided a = chebyshev_derivative(g, window, 10, d);
  const OneSided b = chebyshev_derivative(g, window, 14, d);
  return {b.value, std::abs(a.value - b.value) + b.error};
}

}  // namespace

std::vector<double> approach_samples(const SectionedFunction& sf, std::size_t point, bool right,
                                     const ClassifyConfig& cfg) {
  return approach(sf, point, right, approach_delta(sf, point, cfg.delta), cfg.halvings);
}

const char* to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::regular: return "none";
    case SingularityKind::soft: return "soft";
    case SingularityKind::borderline_hard: return "borderline";
    case SingularityKind::hard: return "hard";
    case SingularityKind::unclassifiable: return "unclassifiable";
    case SingularityKind::exceeds_nmax: return "exceeds_nmax";
  }
  return "?";
}

LateralEstimate lateral_limit(const std::vector<double>& v) {
  LateralEstimate e;
  e.samples = v;
  const std::size_t n = v.size();
  if (n < 5) throw ValidationError("lateral approach needs at least 5 samples");
  for (double x : v)
    if (!std::isfinite(x)) return e;  // divergent by evaluation
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));

  std::vector<double> d(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) d[j] = v[j + 1] - v[j];
  const double last = v.back();
  const double dl = d.back();

  if (vmax <= 1e6 && std::abs(dl) <= 1e-11 * (1.0 + std::abs(last))) {
    e.finite = true;
    e.value = last;
    e.error = std::abs(dl);
    e.growth_exponent = 0.0;
    return e;
  }

  // Mean difference ratio over the last three steps.
  const double d0 = d[n - 5], d1 = d[n - 4], d2 = d[n - 3], d3 = d[n - 2];
  if (d0 == 0.0 || d1 == 0.0 || d2 == 0.0) {
    e.oscillatory = true;
    return e;
  }
  const double r1 = d1 / d0, r2 = d2 / d1, r3 = d3 / d2;
  if (r1 <= 0.0 || r2 <= 0.0 || r3 <= 0.0) {
    e.oscillatory = true;
    return e;
  }
  const double r = std::cbrt(r1 * r2 * r3);
  e.growth_exponent = -std::log2(r);

  if (r < kLogBand && vmax <= 1e6) {
    const double tail = dl * r / (1.0 - r);
    e.finite = true;
    e.value = last + tail;
    e.error = std::abs(tail) * std::abs(r3 - r2) / std::max(1e-300, r) + 1e-13 * (1.0 + vmax);
    return e;
  }

  // Divergent. Log-type check: v against ln h on the last six samples.
  if (std::abs(e.growth_exponent) < 0.05) {
    std::vector<double> lh, tail;
    for (std::size_t j = n - 6; j < n; ++j) {
      lh.push_back(-static_cast<double>(j) * std::log(2.0));
      tail.push_back(v[j]);
    }
    auto fit = detail::least_squares(lh, tail, 2, [](std::size_t k, double t) {
      return k == 0 ? 1.0 : t;
    });
    e.log_type = fit.ok && std::abs(fit.params[1]) > 0.0 &&
                 fit.rms <= 1e-3 * std::abs(fit.params[1]) * std::log(2.0) * 6.0;
  }
  return e;
}

SingularityRecord classify_point(const SectionedFunction& sf, double theta, int nmax,
                                 const ClassifyConfig& cfg) {
  if (nmax < 1) throw ValidationError("nmax must be >= 1");
  if (cfg.halvings < 5) throw ValidationError("at least 5 halvings are required");
  const std::size_t idx = sf.point_index(theta);
  SingularityRecord rec;
  rec.location = sf.singular_points()[idx];

  const double delta = approach_delta(sf, idx, cfg.delta);
  rec.left = lateral_limit(approach(sf, idx, false, delta, cfg.halvings));
  rec.right = lateral_limit(approach(sf, idx, true, delta, cfg.halvings));

  if (rec.left.oscillatory || rec.right.oscillatory) {
    rec.kind = SingularityKind::unclassifiable;
    rec.note = "oscillatory approach sequence";
    return rec;
  }

  if (rec.left.finite && rec.right.finite) {
    const double scale = std::max(std::abs(rec.left.value), std::abs(rec.right.value));
    const double jump = rec.right.value - rec.left.value;
    const double tol = 10.0 * (rec.left.error + rec.right.error) + 1e-7 * (1.0 + scale);
    if (std::abs(jump) > tol) {
      rec.kind = SingularityKind::soft;
      rec.degree = 0;
      rec.note = "jump " + fmt(jump);
      return rec;
    }
    const std::size_t prev = idx == 0 ? sf.section_count() - 1 : idx - 1;
    const double window = std::min({cfg.derivative_window, 0.5 * sf.arc(idx).length(),
                                    0.5 * sf.arc(prev).length()});
    const double t_right = sf.arc(idx).left;
    const double t_left = sf.arc(prev).right;
    auto g_right = [&](double x) { return sf.eval_section(idx, t_right + x); };
    auto g_left = [&](double x) { return sf.eval_section(prev, t_left - x); };
    for (int d = 1; d <= nmax; ++d) {
      const OneSided r = side_derivative(g_right, window, d);
      OneSided l = side_derivative(g_left, window, d);
      if (d % 2 == 1) l.value = -l.value;
      const double mag = std::max(std::abs(r.value), std::abs(l.value));
      const bool unresolved = r.error + l.error > 1e-2 * (1.0 + mag);
      const double defect = std::abs(r.value - l.value);
      if (unresolved || defect > 10.0 * (r.error + l.error) + 1e-6 * (1.0 + mag)) {
        rec.kind = SingularityKind::soft;
        rec.degree = d;
        rec.note = unresolved ? "derivative " + std::to_string(d) + " not resolved"
                              : "derivative " + std::to_string(d) + " jumps by " +
                                    fmt(r.value - l.value);
        return rec;
      }
    }
    rec.kind = SingularityKind::regular;
    rec.degree = 0;
    rec.note = "no defect through derivative " + std::to_string(nmax);
    return rec;
  }

  // At least one side diverges; the most singular side decides.
  auto worst = [](const LateralEstimate& a, const LateralEstimate& b) -> const LateralEstimate& {
    if (a.finite) return b;
    if (b.finite) return a;
    return a.growth_exponent <= b.growth_exponent ? a : b;
  };
  const LateralEstimate& w = worst(rec.left, rec.right);
  rec.growth_exponent = w.growth_exponent;
  rec.log_type = w.log_type;
  if (w.log_type || w.growth_exponent > -0.95) {
    rec.kind = SingularityKind::borderline_hard;
    rec.degree = 0;
    rec.note = w.log_type ? "log-type divergence" : "integrable power divergence";
    if (std::abs(w.growth_exponent + 1.0) < 0.1) rec.note += "; exponent close to -1";
    return rec;
  }

  for (int n = 1; n <= nmax; ++n) {
    const auto prim = sectional_integrate(sf, n, cfg.quadrature).as_sectioned();
    rec.integrations = n;
    const auto l = lateral_limit(approach(prim, idx, false, delta, cfg.halvings));
    const auto r = lateral_limit(approach(prim, idx, true, delta, cfg.halvings));
    if (l.oscillatory || r.oscillatory) {
      rec.kind = SingularityKind::unclassifiable;
      rec.note = "oscillatory primitive after " + std::to_string(n) + " integrations";
      return rec;
    }
    const LateralEstimate& pw = worst(l, r);
    if (pw.finite || pw.log_type || pw.growth_exponent > -0.95) {
      rec.kind = SingularityKind::hard;
      rec.degree = n;
      rec.note = "exponent " + fmt(w.growth_exponent);
      return rec;
    }
  }
  rec.kind = SingularityKind::exceeds_nmax;
  rec.note = "still hard after " + std::to_string(nmax) + " integrations";
  return rec;
}

std::vector<SingularityRecord> classify_all(const SectionedFunction& sf, int nmax,
                                            const ClassifyConfig& cfg) {
  std::vector<SingularityRecord> out;
  for (double p : sf.singular_points()) out.push_back(classify_point(sf, p, nmax, cfg));
  return out;
}

int max_hardness(const SectionedFunction& sf, int nmax, const ClassifyConfig& cfg) {
  int n = 0;
  for (const auto& rec : classify_all(sf, nmax, cfg)) {
    if (rec.kind == SingularityKind::unclassifiable || rec.kind == SingularityKind::exceeds_nmax)
      throw ClassificationError("point " + fmt(rec.location) + ": " + to_string(rec.kind) +
                                " (" + rec.note + ")");
    if (rec.kind == SingularityKind::hard) n = std::max(n, rec.degree);
  }
  return n;
}

}  // namespace circlechain
