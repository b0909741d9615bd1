#include "circlechain/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "circlechain/kernels.hpp"
#include "linalg.hpp"

namespace circlechain {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Alpha0Fit {
  double alpha0 = 0.0;
  double theta0 = 0.0;
  double f_theta0 = 0.0;
  double up = 0.0;
  double up_error = 0.0;
};

// alpha_0 = 2 [f(theta0) - u_p(1, theta0)] at the point farthest from every
// singular point, falling back to 16 equispaced candidates.
Alpha0Fit fit_alpha0(const SectionedFunction& sf, const TaylorCoefficients& proper,
                     const RhoLadder& ladder) {
  std::vector<double> candidates{sf.farthest_regular_point()};
  for (int j = 1; j < 16; ++j) candidates.push_back(normalize_angle(candidates[0] + 2 * kPi * j / 16));
  for (double th : candidates) {
    bool near = false;
    for (double p : sf.singular_points())
      if (std::abs(normalize_angle(th - p)) < 0.2) near = true;
    if (near) continue;
    const double f = sf(th);
    if (!std::isfinite(f)) continue;
    const BoundaryLimit lim = limit_to_circle(proper, th, ladder);
    if (!lim.finite) continue;
    return {2.0 * (f - lim.value), th, f, lim.value, lim.error};
  }
  throw StageError("alpha0", "no regular comparison point with a finite boundary limit");
}

// Jump refinement for slowly converging symmetric differences (h log h
// terms). sym[j] is sampled at h = 2^-(j + offset) times the approach scale,
// and the scale only mixes h log h with h, so relative h is enough.
void refine_jump(const std::vector<double>& sym, std::size_t offset, double& jump, double& err) {
  auto fit_from = [&](std::size_t first) {
    std::vector<double> h, y;
    for (std::size_t j = first; j < sym.size(); ++j) {
      h.push_back(std::ldexp(1.0, -static_cast<int>(j + offset)));
      y.push_back(sym[j]);
    }
    return detail::least_squares(h, y, 5, [](std::size_t m, double x) {
      switch (m) {
        case 0: return 1.0;
        case 1: return x * std::log(x);
        case 2: return x;
        case 3: return x * x * std::log(x);
        default: return x * x;
      }
    });
  };
  const auto all = fit_from(0);
  const auto fine = fit_from(3);
  if (!all.ok || !fine.ok) return;
  const double e = std::abs(all.params[0] - fine.params[0]);
  if (e < err) {
    jump = all.params[0];
    err = e;
  }
}

std::vector<DeltaComponent> deltas_from(const SectionedFunction& f, double threshold,
                                        const ClassifyConfig& cfg) {
  std::vector<DeltaComponent> out;
  for (std::size_t i = 0; i < f.point_count(); ++i) {
    const auto lv = approach_samples(f, i, false, cfg);
    const auto rv = approach_samples(f, i, true, cfg);
    const auto l = lateral_limit(lv);
    const auto r = lateral_limit(rv);
    double jump = 0.0, err = 0.0, scale = 0.0;
    if (l.finite && r.finite) {
      jump = r.value - l.value;
      err = l.error + r.error;
      scale = std::max(std::abs(l.value), std::abs(r.value));
      std::vector<double> sym(lv.size());
      for (std::size_t j = 0; j < lv.size(); ++j) sym[j] = rv[j] - lv[j];
      refine_jump(sym, 0, jump, err);
    } else {
      // Even divergences cancel in the symmetric difference. Odd poles leave
      // h^-p terms, which are removed one power at a time (samples halve h).
      std::vector<double> sym(lv.size());
      for (std::size_t j = 0; j < lv.size(); ++j) sym[j] = rv[j] - lv[j];
      auto s = lateral_limit(sym);
      std::size_t offset = 0;
      for (int p = 1; !s.finite && p <= 3; ++p, ++offset) {
        const double w = std::ldexp(1.0, p);
        std::vector<double> next(sym.size() - 1);
        for (std::size_t j = 1; j < sym.size(); ++j) next[j - 1] = (w * sym[j - 1] - sym[j]) / (w - 1.0);
        sym = std::move(next);
        s = lateral_limit(sym);
      }
      if (!s.finite) continue;
      jump = s.value;
      err = s.error;
      refine_jump(sym, offset, jump, err);
      scale = std::abs(jump);
    }
    if (std::abs(jump) > threshold * (1.0 + scale))
      out.push_back({f.singular_points()[i], 0, jump, err});
  }
  return out;
}

}  // namespace

TaylorCoefficients delta_taylor(const DeltaComponent& d, std::size_t K) {
  if (K < 1) throw ValidationError("K must be >= 1");
  if (d.order < 0) throw ValidationError("delta order must be >= 0");
  std::vector<cplx> c(K + 1);
  c[0] = d.order == 0 ? cplx{d.amplitude / (2 * kPi), 0.0} : cplx{0.0, 0.0};
  const cplx ip = i_power(d.order);
  for (std::size_t k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const cplx phase = std::polar(d.amplitude / kPi, -kd * d.location);
    c[k] = ip * std::pow(kd, d.order) * phase;
  }
  return TaylorCoefficients(std::move(c));
}

std::vector<DeltaComponent> detect_deltas(const SectionedFunction& f, double threshold,
                                          const ClassifyConfig& cfg) {
  return deltas_from(f, threshold, cfg);
}

std::vector<DeltaComponent> detect_deltas(const PiecewisePrimitive& pp, int lvl, double threshold,
                                          const ClassifyConfig& cfg) {
  return deltas_from(pp.as_sectioned(lvl), threshold, cfg);
}

ReconstructionResult reconstruct(const SectionedFunction& sf, std::size_t K,
                                 const ReconstructOptions& opts) {
  if (K < 1) throw ValidationError("K must be >= 1");
  const RhoLadder ladder = opts.ladder.value_or(RhoLadder::for_order(K));
  ladder.validate();

  ReconstructionDiagnostics diag;
  int n = 0;
  try {
    diag.classification = classify_all(sf, opts.nmax, opts.classify);
    for (const auto& rec : diag.classification) {
      if (rec.kind == SingularityKind::unclassifiable || rec.kind == SingularityKind::exceeds_nmax)
        throw ClassificationError("point " + fmt(rec.location) + ": " + to_string(rec.kind) +
                                  " (" + rec.note + ")");
      if (rec.kind == SingularityKind::hard) n = std::max(n, rec.degree);
    }
  } catch (const ClassificationError& e) {
    throw StageError("classify", e.what());
  } catch (const QuadratureError& e) {
    throw StageError("classify", e.what());
  }
  n = std::max(n, opts.n_override);

  PiecewisePrimitive prim = [&] {
    try {
      auto p = sectional_integrate(sf, n, opts.quadrature);
      if (!opts.injected_polynomials.empty()) p = p.with_polynomials(opts.injected_polynomials);
      return p;
    } catch (const QuadratureError& e) {
      throw StageError("integrate", e.what());
    }
  }();

  FourierEstimate fe = [&] {
    try {
      return fourier_numeric(prim.as_sectioned(n), K, opts.quadrature);
    } catch (const QuadratureError& e) {
      throw StageError("fourier", e.what());
    }
  }();
  diag.fourier_accuracy = fe.accuracy;
  const TaylorCoefficients tc_minus_n = fourier_to_taylor(fe.coeffs);

  // Unreduced path: n angular derivatives at once.
  const TaylorCoefficients full_proper = angular_derivative_coeffs(tc_minus_n, n);

  // Reduced path: before each derivative, remove the deltas that the jumps of
  // the current level would create.
  std::vector<DeltaComponent> removed;
  TaylorCoefficients state = tc_minus_n;
  for (int l = n; l >= 1; --l) {
    std::vector<DeltaComponent> found;
    if (opts.reduce) {
      try {
        found = detect_deltas(prim, l, opts.jump_threshold, opts.classify);
      } catch (const QuadratureError& e) {
        throw StageError("integrate", e.what());
      }
    }
    state = angular_derivative_coeffs(state, 1);
    for (auto& d : found) {
      state -= delta_taylor(d, K).with_constant(0.0);
      d.order = l - 1;
      removed.push_back(d);
    }
  }
  if (n == 0) state = state.with_constant(0.0);
  const TaylorCoefficients reduced_proper = state;

  const Alpha0Fit fit_full = fit_alpha0(sf, full_proper, ladder);
  diag.alpha0_full_path = fit_full.alpha0;

  TaylorCoefficients tc_full = full_proper;
  TaylorCoefficients tc_reduced = full_proper;
  double alpha0 = fit_full.alpha0, alpha0_reduced = fit_full.alpha0;
  Alpha0Fit used = fit_full;
  if (n == 0) {
    // Integrable input: alpha_0 is the mean, already in the Fourier data.
    alpha0 = alpha0_reduced = fe.coeffs.alpha0();
    tc_full = tc_reduced = tc_minus_n;
  } else if (removed.empty()) {
    tc_full = tc_reduced = full_proper.with_constant(alpha0 / 2);
  } else {
    const Alpha0Fit fit_red = fit_alpha0(sf, reduced_proper, ladder);
    used = fit_red;
    alpha0_reduced = fit_red.alpha0;
    tc_reduced = reduced_proper.with_constant(alpha0_reduced / 2);
    tc_full = tc_reduced;
    for (const auto& d : removed) tc_full += delta_taylor(d, K);
    alpha0 = 2.0 * tc_full[0].real();
    double disc = 0.0;
    for (std::size_t k = 1; k <= K; ++k) disc = std::max(disc, std::abs(tc_full[k] - full_proper[k]));
    diag.full_path_discrepancy = disc;
  }
  diag.theta0 = used.theta0;
  diag.f_theta0 = used.f_theta0;
  diag.up_theta0 = used.up;
  diag.up_error = used.up_error;

  return ReconstructionResult{n,
                              std::move(tc_full),
                              alpha0,
                              std::move(tc_reduced),
                              alpha0_reduced,
                              std::move(removed),
                              std::move(fe.coeffs),
                              std::move(diag)};
}

FourierCoefficients extended_fourier(const FourierCoefficients& fc, int n) {
  if (n < 0) throw ValidationError("n must be >= 0");
  if (n == 0) return fc;
  const std::size_t K = fc.order();
  std::vector<double> alpha(K), beta(K);
  const int j = n / 2;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    double kn = 1.0;
    for (int i = 0; i < n; ++i) kn *= static_cast<double>(k);
    if (n % 2 == 0) {
      alpha[k - 1] = sign * kn * fc.alpha(k);
      beta[k - 1] = sign * kn * fc.beta(k);
    } else {
      alpha[k - 1] = sign * kn * fc.beta(k);
      beta[k - 1] = -sign * kn * fc.alpha(k);
    }
  }
  return FourierCoefficients(0.0, std::move(alpha), std::move(beta), true);
}

RoundtripReport verify_roundtrip(const ReconstructionResult& res, const SectionedFunction& sf,
                                 const std::vector<double>& probes, const RhoLadder& ladder,
                                 bool use_reduced) {
  RoundtripReport rep;
  const auto& tc = use_reduced ? res.tc_reduced : res.tc_full;
  const auto lim = kernels::boundary_grid(tc, probes, ladder);
  std::size_t counted = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!lim[i].finite) {
      ++rep.divergent;
      continue;
    }
    const double r = std::abs(lim[i].value - sf(probes[i]));
    rep.max_residual = std::max(rep.max_residual, r);
    sum += r;
    ++counted;
  }
  rep.mean_residual = counted ? sum / static_cast<double>(counted) : 0.0;
  if (res.deltas_removed.empty()) {
    const auto other =
        kernels::boundary_grid(use_reduced ? res.tc_full : res.tc_reduced, probes, ladder);
    double m = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
      if (lim[i].finite && other[i].finite) m = std::max(m, std::abs(lim[i].value - other[i].value));
    rep.full_vs_reduced = m;
  }
  return rep;
}

}  // namespace circlechain
