#include <catch_amalgamated.hpp>

#include <cmath>

#include "circlechain/classify.hpp"
#include "circlechain/cli/catalog.hpp"

using namespace circlechain;

namespace {

SectionedFunction global(std::vector<double> pts, std::function<double(double)> f) {
  return SectionedFunction::from_global(std::move(pts), std::move(f));
}

double cot_half(double t) { return 0.5 / std::tan(0.5 * t); }
double csc2_quarter(double t) {
  const double s = std::sin(0.5 * t);
  return 0.25 / (s * s);
}

}  // namespace

TEST_CASE("lateral limits") {
  std::vector<double> linear, logv, pole, osc;
  for (int j = 0; j <= 12; ++j) {
    const double h = std::ldexp(0.1, -j);
    linear.push_back(3.0 + h);
    logv.push_back(std::log(h));
    pole.push_back(1.0 / h);
    osc.push_back(std::sin(1.0 / h) / h);
  }
  const auto a = lateral_limit(linear);
  CHECK(a.finite);
  CHECK(a.value == Catch::Approx(3.0).epsilon(1e-12));
  const auto b = lateral_limit(logv);
  CHECK_FALSE(b.finite);
  CHECK(b.log_type);
  const auto c = lateral_limit(pole);
  CHECK_FALSE(c.finite);
  CHECK(c.growth_exponent == Catch::Approx(-1.0));
  CHECK(lateral_limit(osc).oscillatory);
  CHECK_THROWS_AS(lateral_limit({1.0, 2.0}), ValidationError);
}

TEST_CASE("classification of the reference functions") {
  struct Case {
    const char* name;
    SectionedFunction sf;
    double at;
    SingularityKind kind;
    int degree;
  };
  const std::vector<Case> cases{
      {"log", global({0.0}, [](double t) { return std::log(std::abs(2 * std::sin(t / 2))); }), 0.0,
       SingularityKind::borderline_hard, 0},
      {"cot", global({0.0}, cot_half), 0.0, SingularityKind::hard, 1},
      {"csc2", global({0.0}, csc2_quarter), 0.0, SingularityKind::hard, 2},
      {"abs", global({0.0, kPi}, [](double t) { return std::abs(t); }), 0.0, SingularityKind::soft, 1},
      {"jump", SectionedFunction({0.0, kPi}, {[](double) { return 1.0; }, [](double) { return -1.0; }}),
       kPi, SingularityKind::soft, 0},
      {"kink2", SectionedFunction({0.0, kPi}, {[](double t) { return t * t; }, [](double) { return 0.0; }}),
       0.0, SingularityKind::soft, 2},
      {"smooth", global({1.0}, [](double t) { return std::cos(t); }), 1.0, SingularityKind::regular, 0},
      {"inv_sqrt", global({0.0}, [](double t) { return 1.0 / std::sqrt(std::abs(t)); }), 0.0,
       SingularityKind::borderline_hard, 0},
      {"pow15", global({0.0}, [](double t) { return std::pow(std::abs(t), -1.5); }), 0.0,
       SingularityKind::hard, 1},
      {"cube", global({0.0}, [](double t) { return 1.0 / (t * t * t); }), 0.0, SingularityKind::hard, 3},
      {"osc", global({0.0}, [](double t) { return std::sin(1.0 / t) / t; }), 0.0,
       SingularityKind::unclassifiable, 0},
  };
  for (const auto& c : cases) {
    INFO(c.name);
    const auto rec = classify_point(c.sf, c.at, 4);
    CHECK(rec.kind == c.kind);
    CHECK(rec.degree == c.degree);
  }
}

TEST_CASE("hardness beyond nmax is reported, not guessed") {
  const auto sf = global({0.0}, [](double t) { return 1.0 / std::pow(std::abs(t), 3.5); });
  const auto rec = classify_point(sf, 0.0, 2);
  CHECK(rec.kind == SingularityKind::exceeds_nmax);
  CHECK_THROWS_AS(max_hardness(sf, 2), ClassificationError);
  CHECK_THROWS_AS(classify_point(sf, 1.0, 2), ValidationError);
  CHECK_THROWS_AS(classify_point(sf, 0.0, 0), ValidationError);
}

TEST_CASE("max hardness over several points") {
  CHECK(max_hardness(global({0.0, kPi}, [](double t) { return std::abs(t); }), 4) == 0);
  CHECK(max_hardness(global({0.0}, cot_half), 4) == 1);
  CHECK(max_hardness(global({0.0}, [](double t) { return csc2_quarter(t) + cot_half(t); }), 4) == 2);
}

TEST_CASE("classification is invariant under rescaling") {
  for (double a : {-3.0, 1e-3, 250.0}) {
    INFO(a);
    const auto cot = classify_point(global({0.0}, [a](double t) { return a * cot_half(t); }), 0.0, 4);
    CHECK(cot.kind == SingularityKind::hard);
    CHECK(cot.degree == 1);
    const auto csc = classify_point(global({0.0}, [a](double t) { return a * csc2_quarter(t); }), 0.0, 4);
    CHECK(csc.kind == SingularityKind::hard);
    CHECK(csc.degree == 2);
    const auto abs = classify_point(global({0.0, kPi}, [a](double t) { return a * std::abs(t); }), 0.0, 4);
    CHECK(abs.kind == SingularityKind::soft);
    CHECK(abs.degree == 1);
  }
}

TEST_CASE("one integration lowers the hardness by one") {
  for (auto f : {+[](double t) { return csc2_quarter(t); }, +[](double t) { return 1.0 / (t * t * t); },
                 +[](double t) { return cot_half(t); }}) {
    const auto sf = global({0.0}, f);
    const auto before = classify_point(sf, 0.0, 4);
    REQUIRE(before.kind == SingularityKind::hard);
    const auto after = classify_point(sectional_integrate(sf, 1).as_sectioned(), 0.0, 4);
    if (before.degree == 1) {
      CHECK(after.kind == SingularityKind::borderline_hard);
    } else {
      CHECK(after.kind == SingularityKind::hard);
      CHECK(after.degree == before.degree - 1);
    }
  }
}

TEST_CASE("large approach values are never soft") {
  const auto sf = global({0.0}, [](double t) { return 1e7 + 1e-3 * std::abs(t); });
  const auto rec = classify_point(sf, 0.0, 4);
  CHECK(rec.kind != SingularityKind::soft);
}

TEST_CASE("catalog expectations") {
  for (const auto& e : cli::catalog()) {
    INFO(e.name);
    const auto sf = e.make();
    const auto recs = classify_all(sf, 4);
    REQUIRE(recs.size() == e.expected.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(recs[i].location == Catch::Approx(normalize_angle(e.expected[i].location)));
      CHECK(recs[i].kind == e.expected[i].kind);
      CHECK(recs[i].degree == e.expected[i].degree);
    }
    CHECK(max_hardness(sf, 4) == e.expected_max_hardness);
  }
}
