#include "circlechain/cli/catalog.hpp"

#include <cmath>

namespace circlechain::cli {

namespace {

using K = SingularityKind;

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

PiecewisePolynomial pp_demo_polynomial() {
  // t^2 on (-2, 0.5), t - 0.25 on (0.5, 2), 1.75 + 2(t-2) - (t-2)^2/2 on (2, 2pi-2)
  return PiecewisePolynomial({-2.0, 0.5, 2.0}, {{0.0, 0.0, 1.0}, {-0.25, 1.0}, {-4.25, 4.0, -0.5}});
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> c;

  c.push_back({"const5", "constant 5 with a marker point at 0",
               [] { return SectionedFunction::from_global({0.0}, [](double) { return 5.0; }); },
               {{0.0, K::regular, 0}}, 0, "none",
               CoefficientOracle{OracleSource::closed_form, "c_0 = 5, c_k = 0",
                                 [](std::size_t k) { return k == 0 ? cplx{5.0, 0.0} : cplx{}; }}});

  c.push_back({"abs_theta", "|theta| on (-pi, pi]",
               [] {
                 return SectionedFunction::from_global({0.0, kPi},
                                                       [](double t) { return std::abs(t); });
               },
               {{0.0, K::soft, 1}, {kPi, K::soft, 1}}, 0, "soft 1",
               CoefficientOracle{OracleSource::closed_form,
                                 "alpha_0 = pi, alpha_k = 2((-1)^k - 1)/(pi k^2)",
                                 [](std::size_t k) {
                                   if (k == 0) return cplx{kPi / 2, 0.0};
                                   const double kd = static_cast<double>(k);
                                   const double sgn = k % 2 ? -1.0 : 1.0;
                                   return cplx{2.0 * (sgn - 1.0) / (kPi * kd * kd), 0.0};
                                 }}});

  c.push_back({"log_2sin", "ln|2 sin(theta/2)|",
               [] {
                 return SectionedFunction::from_global(
                     {0.0}, [](double t) { return std::log(std::abs(2.0 * std::sin(0.5 * t))); });
               },
               {{0.0, K::borderline_hard, 0}}, 0, "borderline 0",
               CoefficientOracle{OracleSource::closed_form, "alpha_k = -1/k",
                                 [](std::size_t k) {
                                   return k == 0 ? cplx{} : cplx{-1.0 / static_cast<double>(k), 0.0};
                                 }}});

  c.push_back({"cot_half", "cot(theta/2)/2",
               [] {
                 return SectionedFunction::from_global(
                     {0.0}, [](double t) { return 0.5 / std::tan(0.5 * t); });
               },
               {{0.0, K::hard, 1}}, 1, "hard 1",
               CoefficientOracle{OracleSource::closed_form, "sum sin k theta: c_k = -i",
                                 [](std::size_t k) { return k == 0 ? cplx{} : cplx{0.0, -1.0}; }}});

  c.push_back({"csc2_quarter", "csc^2(theta/2)/4",
               [] {
                 return SectionedFunction::from_global({0.0}, [](double t) {
                   const double s = std::sin(0.5 * t);
                   return 0.25 / (s * s);
                 });
               },
               {{0.0, K::hard, 2}}, 2, "hard 2",
               CoefficientOracle{OracleSource::closed_form, "-sum k cos k theta: c_k = -k",
                                 [](std::size_t k) { return cplx{-static_cast<double>(k), 0.0}; }}});

  c.push_back({"square_wave", "+1 on (0, pi), -1 on (pi, 2 pi)",
               [] {
                 return SectionedFunction({0.0, kPi},
                                          {[](double) { return 1.0; }, [](double) { return -1.0; }});
               },
               {{0.0, K::soft, 0}, {kPi, K::soft, 0}}, 0, "soft 0",
               CoefficientOracle{OracleSource::closed_form, "beta_k = 4/(pi k), k odd",
                                 [](std::size_t k) {
                                   if (k % 2 == 0) return cplx{};
                                   return cplx{0.0, -4.0 / (kPi * static_cast<double>(k))};
                                 }}});

  c.push_back({"sawtooth", "theta on (-pi, pi), jump -2 pi at pi",
               [] { return SectionedFunction({kPi}, {[](double t) { return t - 2.0 * kPi; }}); },
               {{kPi, K::soft, 0}}, 0, "soft 0",
               CoefficientOracle{OracleSource::closed_form, "beta_k = 2(-1)^{k+1}/k",
                                 [](std::size_t k) {
                                   if (k == 0) return cplx{};
                                   const double sgn = k % 2 ? 1.0 : -1.0;
                                   return cplx{0.0, -2.0 * sgn / static_cast<double>(k)};
                                 }}});

  c.push_back({"pp_demo", "order-2 piecewise polynomial with 3 sections",
               [] { return pp_demo_polynomial().to_sectioned(); },
               {{-2.0, K::soft, 0}, {0.5, K::soft, 2}, {2.0, K::soft, 1}}, 0, "soft 0",
               CoefficientOracle{OracleSource::closed_form, "integration by parts per section",
                                 [](std::size_t k) {
                                   static const auto table =
                                       piecewise_polynomial_taylor(pp_demo_polynomial(), 4096);
                                   if (k >= table.size())
                                     throw ValidationError("pp_demo oracle limited to K <= 4096");
                                   return table[k];
                                 }}});

  c.push_back({"shifted_cot", "cot((theta - 1)/2)/2",
               [] {
                 return SectionedFunction::from_global(
                     {1.0}, [](double t) { return 0.5 / std::tan(0.5 * (t - 1.0)); });
               },
               {{1.0, K::hard, 1}}, 1, "hard 1",
               CoefficientOracle{OracleSource::closed_form, "c_k = -i e^{-ik}",
                                 [](std::size_t k) {
                                   if (k == 0) return cplx{};
                                   return cplx{0.0, -1.0} * expi(-static_cast<double>(k));
                                 }}});

  c.push_back({"mix_hard", "cot(theta/2)/2 + csc^2((theta - pi/2)/2)/4",
               [] {
                 return SectionedFunction::from_global({0.0, 0.5 * kPi}, [](double t) {
                   const double s = std::sin(0.5 * (t - 0.5 * kPi));
                   return 0.5 / std::tan(0.5 * t) + 0.25 / (s * s);
                 });
               },
               {{0.0, K::hard, 1}, {0.5 * kPi, K::hard, 2}}, 2, "max 2",
               CoefficientOracle{OracleSource::closed_form, "c_k = -i - k e^{-ik pi/2}",
                                 [](std::size_t k) {
                                   if (k == 0) return cplx{};
                                   const double kd = static_cast<double>(k);
                                   return cplx{0.0, -1.0} - kd * expi(-0.5 * kPi * kd);
                                 }}});

  CatalogEntry sqd{"square_wave_derivative",
                   "sectionally zero derivative of square_wave (deltas +2 at 0, -2 at pi)",
                   [] {
                     return SectionedFunction({0.0, kPi},
                                              {[](double) { return 0.0; }, [](double) { return 0.0; }});
                   },
                   {{0.0, K::regular, 0}, {kPi, K::regular, 0}}, 0, "none",
                   CoefficientOracle{OracleSource::closed_form,
                                     "2 delta(theta) - 2 delta(theta - pi): c_k = 2(1 - (-1)^k)/pi",
                                     [](std::size_t k) {
                                       if (k == 0) return cplx{};
                                       return cplx{k % 2 ? 4.0 / kPi : 0.0, 0.0};
                                     }}};
  sqd.n_override = 1;
  sqd.injected_polynomials = {{1.0}, {-1.0}};
  c.push_back(std::move(sqd));
  return c;
}

}  // namespace

const char* to_string(OracleSource s) {
  return s == OracleSource::closed_form ? "closed-form" : "brute-force";
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<cplx> piecewise_polynomial_taylor(const PiecewisePolynomial& pp, std::size_t K) {
  const SectionedFunction shape = pp.to_sectioned();
  std::vector<cplx> c(K + 1);
  for (std::size_t i = 0; i < pp.section_count(); ++i) {
    const auto& a = pp.coefficients(i);
    const Arc arc = shape.arc(i);
    // k = 0: plain antiderivative.
    double mass = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      mass += a[j] * (std::pow(arc.right, j + 1) - std::pow(arc.left, j + 1)) / (j + 1);
    c[0] += mass / (2.0 * kPi);
    // int p e^{st} = e^{st} sum_j (-1)^j p^{(j)} / s^{j+1}, s = -ik.
    for (std::size_t k = 1; k <= K; ++k) {
      const cplx s{0.0, -static_cast<double>(k)};
      auto antiderivative = [&](double t) {
        std::vector<double> d = a;
        cplx sum{}, spow = s;
        double sign = 1.0;
        while (!d.empty()) {
          double v = 0.0;
          for (std::size_t j = d.size(); j-- > 0;) v = v * t + d[j];
          sum += sign * v / spow;
          for (std::size_t j = 1; j < d.size(); ++j) d[j - 1] = static_cast<double>(j) * d[j];
          d.pop_back();
          spow *= s;
          sign = -sign;
        }
        return std::exp(s * t) * sum;
      };
      c[k] += (antiderivative(arc.right) - antiderivative(arc.left)) / kPi;
    }
  }
  return c;
}

}  // namespace circlechain::cli
