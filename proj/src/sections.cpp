#include "circlechain/sections.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "circlechain/gauss_legendre.hpp"
#include "circlechain/kernels.hpp"
#include "linalg.hpp"

namespace circlechain {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double horner(const std::vector<double>& a, double x) {
  double r = 0.0;
  for (std::size_t j = a.size(); j-- > 0;) r = r * x + a[j];
  return r;
}

// d-th derivative of sum_j a_j x^j.
double horner_derivative(const std::vector<double>& a, double x, int d) {
  if (d == 0) return horner(a, x);
  double r = 0.0;
  for (std::size_t j = a.size(); j-- > static_cast<std::size_t>(d);) {
    double falling = 1.0;
    for (int i = 0; i < d; ++i) falling *= static_cast<double>(j - i);
    r = r * x + a[j] * falling;
  }
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Panel boundaries on [0, half - eps], measured from the section midpoint
// outward: uniform panels of width <= bulk, then geometric grading toward
// the endpoint with ratio >= 1/2 so the last boundary sits exactly eps away.
std::vector<double> half_bounds(double half, double bulk, double eps) {
  std::vector<double> s{0.0};
  const double g0 = std::min(bulk, 0.5 * half);
  if (g0 <= eps) {
    s.push_back(half - eps);
    return s;
  }
  const double uniform_end = half - g0;
  const auto nu = static_cast<std::size_t>(std::ceil(uniform_end / bulk - 1e-12));
  for (std::size_t j = 1; j <= nu; ++j)
    s.push_back(uniform_end * static_cast<double>(j) / static_cast<double>(nu));
  const int J = static_cast<int>(std::ceil(std::log2(g0 / eps)));
  const double ratio = std::pow(eps / g0, 1.0 / J);
  double dist = g0;
  for (int j = 1; j <= J; ++j) {
    dist = (j == J) ? eps : dist * ratio;
    s.push_back(half - dist);
  }
  return s;
}

// Integral of g over [a, b] where g may grow toward `end` (end lies beyond b,
// in the direction of b). Sub-intervals halve the distance to the endpoint.
double gl_panel(const std::function<double(double)>& g, double lo, double hi,
                const GaussLegendre& rule) {
  const double hw = 0.5 * (hi - lo), c = 0.5 * (hi + lo);
  double s = 0.0;
  for (int i = 0; i < rule.q; ++i) s += rule.w[i] * g(c + hw * rule.x[i]);
  return s * hw;
}

double integrate_graded(const std::function<double(double)>& g, double a, double b, double end,
                        const GaussLegendre& rule) {
  auto panel = [&](double lo, double hi) { return gl_panel(g, lo, hi, rule); };
  const double sign = b >= a ? 1.0 : -1.0;
  double total = 0.0;
  double lo = a;
  const double dist_b = std::abs(end - b);
  while (std::abs(end - lo) > 2.0 * dist_b) {
    const double next = end - sign * 0.5 * std::abs(end - lo);
    total += panel(lo, next);
    lo = next;
  }
  return total + panel(lo, b);
}

struct EndpointModel {
  double integral = 0.0;
  double error = 0.0;
  double exponent = 0.0;
  bool log_type = true;
};

// Fits v(x) on x = eps, 2 eps, 4 eps (x = distance to the endpoint) with
// a + b ln x and with c x^p; integrates the better one over (0, eps).
EndpointModel endpoint_model(const std::function<double(double)>& v_at, double eps,
                             std::size_t section) {
  const std::vector<double> x{eps, 2 * eps, 4 * eps};
  std::vector<double> v(3);
  for (int i = 0; i < 3; ++i) v[i] = v_at(x[i]);
  for (double vi : v)
    if (!std::isfinite(vi))
      throw NotIntegrableError("section " + std::to_string(section) +
                               ": non-finite value next to a singular endpoint");

  EndpointModel out;
  std::vector<double> lx(3);
  for (int i = 0; i < 3; ++i) lx[i] = std::log(x[i]);
  auto logfit = detail::least_squares(lx, v, 2, [](std::size_t j, double t) {
    return j == 0 ? 1.0 : t;
  });
  const double a = logfit.params[0], b = logfit.params[1];
  double log_res = 0.0;
  for (int i = 0; i < 3; ++i) log_res = std::max(log_res, std::abs(v[i] - (a + b * lx[i])));

  bool same_sign = (v[0] > 0 && v[1] > 0 && v[2] > 0) || (v[0] < 0 && v[1] < 0 && v[2] < 0);
  double pow_res = std::numeric_limits<double>::infinity(), p = 0.0, c = 0.0;
  if (same_sign) {
    std::vector<double> lv(3);
    for (int i = 0; i < 3; ++i) lv[i] = std::log(std::abs(v[i]));
    auto pf = detail::least_squares(lx, lv, 2, [](std::size_t j, double t) {
      return j == 0 ? 1.0 : t;
    });
    p = pf.params[1];
    c = std::copysign(std::exp(pf.params[0]), v[0]);
    pow_res = 0.0;
    for (int i = 0; i < 3; ++i) pow_res = std::max(pow_res, std::abs(v[i] - c * std::pow(x[i], p)));
  }

  if (pow_res < log_res) {
    out.log_type = false;
    out.exponent = p;
    if (p <= -0.95)
      throw NotIntegrableError("section " + std::to_string(section) +
                               ": not integrable, endpoint exponent " + fmt_g(p));
    out.integral = c * std::pow(eps, p + 1.0) / (p + 1.0);
    out.error = pow_res * eps;
  } else {
    out.integral = a * eps + b * (eps * std::log(eps) - eps);
    out.error = log_res * eps;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SectionedFunction

SectionedFunction::SectionedFunction(std::vector<double> points,
                                     std::vector<SectionEvaluator> sections) {
  const std::size_t expected = std::max<std::size_t>(points.size(), 1);
  if (sections.size() != expected)
    throw ValidationError("expected " + std::to_string(expected) + " section evaluators, got " +
                          std::to_string(sections.size()));
  for (auto& p : points) p = normalize_angle(p);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return points[i] < points[j]; });
  for (auto i : order) points_.push_back(points[i]);
  if (points_.empty()) {
    sections_ = std::move(sections);
  } else {
    for (auto i : order) sections_.push_back(std::move(sections[i]));
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    if (!(points_[i + 1] - points_[i] > 1e-12))
      throw ValidationError("singular points must be distinct");
  if (points_.size() > 1 && !(points_.front() + kTwoPi - points_.back() > 1e-12))
    throw ValidationError("singular points must be distinct");
  for (const auto& s : sections_)
    if (!s) throw ValidationError("empty section evaluator");
}

SectionedFunction SectionedFunction::from_global(std::vector<double> points,
                                                 std::function<double(double)> f) {
  const std::size_t n = std::max<std::size_t>(points.size(), 1);
  auto shared = std::make_shared<std::function<double(double)>>(std::move(f));
  std::vector<SectionEvaluator> sections(
      n, [shared](double t) { return (*shared)(normalize_angle(t)); });
  return {std::move(points), std::move(sections)};
}

Arc SectionedFunction::arc(std::size_t section) const {
  if (points_.empty()) return {-kPi, kPi};
  const double left = points_[section];
  const double right =
      section + 1 < points_.size() ? points_[section + 1] : points_.front() + kTwoPi;
  return {left, right};
}

std::pair<std::size_t, double> SectionedFunction::locate(double theta) const {
  const double t = normalize_angle(theta);
  if (points_.empty()) return {0, t};
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  if (it == points_.begin()) return {points_.size() - 1, t + kTwoPi};
  return {static_cast<std::size_t>(it - points_.begin()) - 1, t};
}

double SectionedFunction::operator()(double theta) const {
  const auto [i, t] = locate(theta);
  const Arc a = arc(i);
  if (!points_.empty() && (t == a.left || t == a.right)) return kNaN;
  return sections_[i](t);
}

double SectionedFunction::left_of(std::size_t point, double h) const {
  const std::size_t i = point == 0 ? section_count() - 1 : point - 1;
  return sections_[i](arc(i).right - h);
}

double SectionedFunction::right_of(std::size_t point, double h) const {
  return sections_[point](arc(point).left + h);
}

std::size_t SectionedFunction::point_index(double theta, double tol) const {
  const double t = normalize_angle(theta);
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (std::abs(normalize_angle(points_[i] - t)) <= tol) return i;
  throw ValidationError("angle " + std::to_string(theta) + " is not a declared singular point");
}

double SectionedFunction::farthest_regular_point() const {
  if (points_.empty()) return 0.0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < section_count(); ++i)
    if (arc(i).length() > arc(best).length()) best = i;
  return normalize_angle(arc(best).mid());
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw ValidationError("tolerances must be > 0");
  if (!(endpoint_eps > 0.0)) throw ValidationError("endpoint exclusion must be > 0");
  if (max_subdivisions < 1) throw ValidationError("max_subdivisions must be >= 1");
  if (panel_order < 2 || panel_order > 128) throw ValidationError("panel order out of range");
  if (!(panel_width > 0.0)) throw ValidationError("panel width must be > 0");
}

// ---------------------------------------------------------------------------
// PiecewisePrimitive

namespace {

struct Half {
  int dir = 1;
  std::vector<double> s;  // boundaries, outward from the midpoint
  std::vector<double> F;  // (bounds) x (m + 1), F[p * (m+1) + l]
};

struct SectionTable {
  Arc arc;
  double mid = 0.0;
  double half = 0.0;
  Half halves[2];  // [0] toward the left endpoint, [1] toward the right
};

}  // namespace

struct PiecewisePrimitive::Impl {
  SectionedFunction base;
  int m = 0;
  QuadratureConfig qc;
  std::vector<SectionTable> sections;
};

namespace {

Half build_half(const SectionedFunction& sf, std::size_t section, double mid, double half, int dir,
                int m, const QuadratureConfig& qc) {
  const auto& rule = gauss_legendre(qc.panel_order);
  const int q = rule.q;
  Half h;
  h.dir = dir;
  h.s = half_bounds(half, qc.panel_width, std::min(qc.endpoint_eps, 0.25 * half));
  const std::size_t P = h.s.size() - 1;
  const std::size_t stride = static_cast<std::size_t>(m) + 1;
  h.F.assign((P + 1) * stride, 0.0);

  std::vector<double> nodes(P * q);
  for (std::size_t p = 0; p < P; ++p) {
    const double hw = 0.5 * (h.s[p + 1] - h.s[p]);
    for (int i = 0; i < q; ++i) nodes[p * q + i] = mid + dir * (h.s[p] + hw * (1.0 + rule.x[i]));
  }
  const auto f = kernels::sample([&](double t) { return sf.eval_section(section, t); }, nodes);

  std::vector<double> prev(q), cur(q);
  for (std::size_t p = 0; p < P; ++p) {
    const double hw = 0.5 * (h.s[p + 1] - h.s[p]);
    std::copy_n(f.begin() + static_cast<std::ptrdiff_t>(p * q), q, prev.begin());
    for (int l = 1; l <= m; ++l) {
      double total = 0.0;
      for (int i = 0; i < q; ++i) total += rule.w[i] * prev[i];
      const double base = h.F[p * stride + l];
      h.F[(p + 1) * stride + l] = base + dir * hw * total;
      if (l < m) {
        for (int i = 0; i < q; ++i) {
          double s = 0.0;
          for (int j = 0; j < q; ++j) s += rule.integ(i, j) * prev[j];
          cur[i] = base + dir * hw * s;
        }
        std::swap(prev, cur);
      }
    }
    for (std::size_t l = 1; l < stride; ++l)
      if (!std::isfinite(h.F[(p + 1) * stride + l]))
        throw QuadratureError("sectional integration failed in section " +
                              std::to_string(section) + ": non-finite panel integral");
  }
  return h;
}

}  // namespace

PiecewisePrimitive sectional_integrate(const SectionedFunction& sf, int n,
                                       const QuadratureConfig& qc) {
  if (n < 0) throw ValidationError("integration count must be >= 0");
  qc.validate();
  auto impl = std::make_shared<PiecewisePrimitive::Impl>(PiecewisePrimitive::Impl{sf, n, qc, {}});
  if (n > 0) {
    for (std::size_t i = 0; i < sf.section_count(); ++i) {
      SectionTable st;
      st.arc = sf.arc(i);
      st.mid = st.arc.mid();
      st.half = 0.5 * st.arc.length();
      st.halves[0] = build_half(sf, i, st.mid, st.half, -1, n, qc);
      st.halves[1] = build_half(sf, i, st.mid, st.half, +1, n, qc);
      impl->sections.push_back(std::move(st));
    }
  }
  PiecewisePrimitive out;
  out.impl_ = std::move(impl);
  out.poly_ = std::make_shared<const std::vector<std::vector<double>>>(
      std::max<std::size_t>(sf.section_count(), 1), std::vector<double>{});
  return out;
}

int PiecewisePrimitive::level() const { return impl_->m; }
const SectionedFunction& PiecewisePrimitive::base() const { return impl_->base; }

double PiecewisePrimitive::reference_point(std::size_t section) const {
  return impl_->base.arc(section).mid();
}

const std::vector<double>& PiecewisePrimitive::added_polynomial(std::size_t section) const {
  return (*poly_)[section];
}

PiecewisePrimitive PiecewisePrimitive::with_polynomials(
    std::vector<std::vector<double>> per_section) const {
  if (per_section.size() != impl_->base.section_count())
    throw ValidationError("one added polynomial per section is required");
  for (const auto& p : per_section)
    if (static_cast<int>(p.size()) > impl_->m)
      throw ValidationError("added polynomial order must be below the primitive level");
  PiecewisePrimitive out = *this;
  out.poly_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(per_section));
  return out;
}

double PiecewisePrimitive::evaluate(double theta, int lvl) const {
  const auto [i, t] = impl_->base.locate(theta);
  const Arc a = impl_->base.arc(i);
  if (impl_->base.point_count() > 0 && (t == a.left || t == a.right)) return kNaN;
  return evaluate_section(i, t, lvl);
}

double PiecewisePrimitive::evaluate_section(std::size_t section, double t, int lvl) const {
  const int m = impl_->m;
  if (lvl < 0 || lvl > m) throw ValidationError("level outside [0, primitive level]");
  const auto& base = impl_->base;
  const double mid = base.arc(section).mid();
  const auto& poly = (*poly_)[section];
  const double added = poly.empty() ? 0.0 : horner_derivative(poly, t - mid, m - lvl);
  if (lvl == 0) return base.eval_section(section, t) + added;

  const SectionTable& st = impl_->sections[section];
  const int dir = t >= st.mid ? 1 : -1;
  const Half& h = st.halves[dir > 0 ? 1 : 0];
  const double s = std::abs(t - st.mid);
  if (!(s < st.half)) return kNaN;

  const std::size_t P = h.s.size() - 1;
  std::size_t p = static_cast<std::size_t>(std::upper_bound(h.s.begin(), h.s.end(), s) - h.s.begin()) - 1;
  p = std::min(p, P);
  const std::size_t stride = static_cast<std::size_t>(m) + 1;

  // Taylor expansion of the level stack at the panel boundary plus the
  // integral remainder with kernel (s - sigma)^{lvl-1} / (lvl-1)!.
  const double delta = dir * (s - h.s[p]);
  double value = 0.0, dpow = 1.0;
  for (int j = 0; j < lvl; ++j) {
    value += h.F[p * stride + (lvl - j)] * dpow / factorial(j);
    dpow *= delta;
  }
  const double norm = factorial(lvl - 1);
  auto integrand = [&](double sigma) {
    return std::pow(s - sigma, lvl - 1) / norm * base.eval_section(section, st.mid + dir * sigma);
  };
  const auto& rule = gauss_legendre(impl_->qc.panel_order);
  double remainder = 0.0;
  if (s > h.s[p]) {
    if (p < P) {
      remainder = gl_panel(integrand, h.s[p], s, rule);
    } else {
      remainder = integrate_graded(integrand, h.s[p], s, st.half, rule);
    }
  }
  const double sign = (lvl % 2 == 0 || dir > 0) ? 1.0 : -1.0;
  return value + sign * remainder + added;
}

SectionedFunction PiecewisePrimitive::as_sectioned(int lvl) const {
  if (lvl < 0 || lvl > level()) throw ValidationError("level outside [0, primitive level]");
  const auto& base = impl_->base;
  std::vector<SectionEvaluator> sections;
  for (std::size_t i = 0; i < base.section_count(); ++i) {
    PiecewisePrimitive self = *this;
    sections.emplace_back([self, i, lvl](double t) { return self.evaluate_section(i, t, lvl); });
  }
  return {base.singular_points(), std::move(sections)};
}

// ---------------------------------------------------------------------------
// Fourier coefficients by quadrature

FourierEstimate fourier_numeric(const SectionedFunction& f, std::size_t K,
                                const QuadratureConfig& qc) {
  if (K < 1) throw ValidationError("Fourier order must be >= 1");
  qc.validate();
  const auto& rule = gauss_legendre(qc.panel_order);
  const int q = rule.q;
  const double h0 = std::min(0.25, 8.0 / static_cast<double>(K));

  std::vector<double> cos_total(K + 1, 0.0), sin_total(K + 1, 0.0);
  double accuracy = 0.0;

  for (std::size_t sec = 0; sec < f.section_count(); ++sec) {
    const Arc a = f.arc(sec);
    const double mid = a.mid(), half = 0.5 * a.length();
    const double eps = std::min(qc.endpoint_eps, 0.25 * half);

    auto pass = [&](double bulk) {
      std::vector<double> theta, weight;
      for (int dir : {-1, 1}) {
        const auto s = half_bounds(half, bulk, eps);
        for (std::size_t p = 0; p + 1 < s.size(); ++p) {
          const double hw = 0.5 * (s[p + 1] - s[p]);
          for (int i = 0; i < q; ++i) {
            theta.push_back(mid + dir * (s[p] + hw * (1.0 + rule.x[i])));
            weight.push_back(rule.w[i] * hw);
          }
        }
      }
      const auto values =
          kernels::sample([&](double t) { return f.eval_section(sec, t); }, theta);
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (!std::isfinite(values[j]))
          throw QuadratureError("section " + std::to_string(sec) +
                                ": integrand not finite at theta=" + std::to_string(theta[j]));
        weight[j] *= values[j];
      }
      return kernels::trig_moments(theta, weight, K);
    };

    // The excluded eps-gaps at both singular endpoints; checked first so a
    // non-integrable endpoint is reported as such.
    const auto left = endpoint_model([&](double x) { return f.eval_section(sec, a.left + x); },
                                     eps, sec);
    const auto right = endpoint_model([&](double x) { return f.eval_section(sec, a.right - x); },
                                      eps, sec);
    kernels::TrigMoments prev = pass(h0);
    bool converged = false;
    double diff = 0.0;
    for (int r = 1; r <= qc.max_subdivisions; ++r) {
      kernels::TrigMoments cur = pass(h0 * std::ldexp(1.0, -r));
      diff = 0.0;
      double scale = 0.0;
      for (std::size_t k = 0; k <= K; ++k) {
        diff = std::max({diff, std::abs(cur.cos_sum[k] - prev.cos_sum[k]),
                         std::abs(cur.sin_sum[k] - prev.sin_sum[k])});
        scale = std::max({scale, std::abs(cur.cos_sum[k]), std::abs(cur.sin_sum[k])});
      }
      prev = std::move(cur);
      if (diff <= std::max(qc.abs_tol, qc.rel_tol * scale)) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw QuadratureError("section " + std::to_string(sec) +
                            ": Fourier quadrature did not converge (difference " +
                            fmt_g(diff) + ")");

    for (std::size_t k = 0; k <= K; ++k) {
      const double kd = static_cast<double>(k);
      prev.cos_sum[k] += left.integral * std::cos(kd * a.left) + right.integral * std::cos(kd * a.right);
      prev.sin_sum[k] += left.integral * std::sin(kd * a.left) + right.integral * std::sin(kd * a.right);
      cos_total[k] += prev.cos_sum[k];
      sin_total[k] += prev.sin_sum[k];
    }
    accuracy += (diff + left.error + right.error) / kPi;
  }

  std::vector<double> alpha(K), beta(K);
  for (std::size_t k = 1; k <= K; ++k) {
    alpha[k - 1] = cos_total[k] / kPi;
    beta[k - 1] = sin_total[k] / kPi;
  }
  return {FourierCoefficients(cos_total[0] / kPi, std::move(alpha), std::move(beta)), accuracy};
}

// ---------------------------------------------------------------------------
// Piecewise polynomials

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> points,
                                         std::vector<std::vector<double>> coeffs) {
  if (points.empty()) throw ValidationError("piecewise polynomial needs N >= 1 points");
  if (coeffs.size() != points.size())
    throw ValidationError("one coefficient list per section is required");
  for (auto& p : points) p = normalize_angle(p);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return points[i] < points[j]; });
  for (auto i : order) {
    points_.push_back(points[i]);
    coeffs_.push_back(std::move(coeffs[i]));
  }
  for (auto& c : coeffs_) {
    for (double v : c)
      if (!std::isfinite(v)) throw ValidationError("non-finite polynomial coefficient");
    while (!c.empty() && c.back() == 0.0) c.pop_back();
  }
  for (std::size_t i = 0; i + 1 < points_.size(); ++i)
    if (!(points_[i + 1] - points_[i] > 1e-12))
      throw ValidationError("singular points must be distinct");
}

int PiecewisePolynomial::order() const {
  int n = 0;
  for (const auto& c : coeffs_) n = std::max(n, static_cast<int>(c.size()) - 1);
  return n;
}

bool PiecewisePolynomial::nonzero() const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return !c.empty(); });
}

double PiecewisePolynomial::eval_section(std::size_t section, double t) const {
  return horner(coeffs_[section], t);
}

SectionedFunction PiecewisePolynomial::to_sectioned() const {
  std::vector<SectionEvaluator> sections;
  for (const auto& c : coeffs_) sections.emplace_back([c](double t) { return horner(c, t); });
  return {points_, std::move(sections)};
}

PolynomialDerivative pp_differentiate(const PiecewisePolynomial& pp) {
  const std::size_t N = pp.section_count();
  const SectionedFunction shape = pp.to_sectioned();

  std::vector<JumpRecord> jumps;
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (double v : pp.coefficients(i)) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t prev = i == 0 ? N - 1 : i - 1;
    const double right = pp.eval_section(i, shape.arc(i).left);
    const double left = pp.eval_section(prev, shape.arc(prev).right);
    const double jump = right - left;
    if (std::abs(jump) > 1e-12 * (1.0 + scale)) jumps.push_back({pp.singular_points()[i], jump});
  }

  std::vector<std::vector<double>> d(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto& c = pp.coefficients(i);
    for (std::size_t j = 1; j < c.size(); ++j) d[i].push_back(static_cast<double>(j) * c[j]);
  }
  return {PiecewisePolynomial(pp.singular_points(), std::move(d)), std::move(jumps)};
}

}  // namespace circlechain
