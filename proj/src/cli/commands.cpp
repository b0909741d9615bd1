#include "circlechain/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "circlechain/classify.hpp"
#include "circlechain/cli/catalog.hpp"
#include "circlechain/cli/coefficient_file.hpp"
#include "circlechain/evalcore.hpp"
#include "circlechain/kernels.hpp"
#include "circlechain/reconstruct.hpp"

namespace circlechain::cli {

namespace {

using nlohmann::json;

std::string num(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

const CatalogEntry* lookup(const std::string& name, std::ostream& err) {
  const CatalogEntry* e = find_entry(name);
  if (!e) err << "error: unknown function '" << name << "' (see `circlechain list`)\n";
  return e;
}

/// 64 equispaced probes, keeping those at least `gap` from every singular point.
std::vector<double> probes_away_from(const SectionedFunction& sf, double gap) {
  std::vector<double> out;
  for (int j = 0; j < 64; ++j) {
    const double th = -kPi + 2.0 * kPi * (j + 0.5) / 64.0;
    bool ok = true;
    for (double p : sf.singular_points())
      if (std::abs(normalize_angle(th - p)) < gap) ok = false;
    if (ok) out.push_back(th);
  }
  return out;
}

json record_json(const SingularityRecord& r) {
  auto side = [](const LateralEstimate& e) {
    json j = {{"finite", e.finite}, {"growth_exponent", e.growth_exponent}};
    if (e.finite) j["value"] = e.value;
    return j;
  };
  return {{"location", r.location},
          {"kind", to_string(r.kind)},
          {"degree", r.degree},
          {"growth_exponent", r.growth_exponent},
          {"log_type", r.log_type},
          {"integrations", r.integrations},
          {"left", side(r.left)},
          {"right", side(r.right)},
          {"note", r.note}};
}

int cmd_analyze(const std::string& name, int nmax, bool as_json, std::ostream& out,
                std::ostream& err) {
  const CatalogEntry* e = lookup(name, err);
  if (!e) return kUsage;
  const auto sf = e->make();
  const auto recs = classify_all(sf, nmax);
  bool failed = false;
  int hardness = 0;
  for (const auto& r : recs) {
    if (r.kind == SingularityKind::unclassifiable || r.kind == SingularityKind::exceeds_nmax)
      failed = true;
    if (r.kind == SingularityKind::hard) hardness = std::max(hardness, r.degree);
  }
  if (as_json) {
    json j = {{"function", name}, {"nmax", nmax}, {"points", json::array()}};
    for (const auto& r : recs) j["points"].push_back(record_json(r));
    if (failed)
      j["max_hardness"] = nullptr;
    else
      j["max_hardness"] = hardness;
    out << j.dump(1) << "\n";
  } else {
    out << "function: " << name << "\n";
    out << "point          kind            degree  p_hat     note\n";
    for (const auto& r : recs) {
      char line[256];
      std::snprintf(line, sizeof line, "%-14.6f %-15s %-7d %-9.3f %s\n", r.location,
                    to_string(r.kind), r.degree, r.growth_exponent, r.note.c_str());
      out << line;
    }
    if (failed)
      out << "max hardness: undetermined\n";
    else
      out << "max hardness: " << hardness << "\n";
  }
  if (failed) {
    err << "error: classification failed for '" << name << "'\n";
    return kClassification;
  }
  return kOk;
}

struct ReconstructArgs {
  std::string name;
  std::size_t order = 256;
  bool reduce = false;
  int nmax = 4;
  std::string out_path;
  std::string reduced_path;
};

int cmd_reconstruct(const ReconstructArgs& a, std::ostream& out, std::ostream& err) {
  const CatalogEntry* e = lookup(a.name, err);
  if (!e) return kUsage;
  const auto sf = e->make();
  ReconstructOptions opts;
  opts.reduce = a.reduce;
  opts.nmax = a.nmax;
  opts.n_override = e->n_override;
  opts.injected_polynomials = e->injected_polynomials;

  const ReconstructionResult res = reconstruct(sf, a.order, opts);

  const RhoLadder ladder = RhoLadder::for_order(a.order);
  const auto probes = probes_away_from(sf, 0.3);
  const auto full = verify_roundtrip(res, sf, probes, ladder, false);

  out << "function: " << a.name << "\n";
  out << "K: " << a.order << "\n";
  out << "n_used: " << res.n_used << "\n";
  out << "alpha0: " << num(res.alpha0, "%.12g") << "\n";
  out << "alpha0_reduced: " << num(res.alpha0_reduced, "%.12g") << "\n";
  out << "theta0: " << num(res.diagnostics.theta0, "%.12g") << "\n";
  out << "fourier_accuracy: " << num(res.diagnostics.fourier_accuracy, "%.3g") << "\n";
  out << "deltas_removed: " << res.deltas_removed.size() << "\n";
  for (const auto& d : res.deltas_removed)
    out << "  at " << num(d.location, "%.12g") << " order " << d.order << " amplitude "
        << num(d.amplitude, "%.12g") << " +- " << num(d.amplitude_error, "%.2g") << "\n";
  out << "roundtrip(full): probes " << probes.size() << " max " << num(full.max_residual, "%.3g")
      << " mean " << num(full.mean_residual, "%.3g") << " divergent " << full.divergent << "\n";
  if (!res.deltas_removed.empty()) {
    const auto red = verify_roundtrip(res, sf, probes, ladder, true);
    out << "roundtrip(reduced): max " << num(red.max_residual, "%.3g") << " mean "
        << num(red.mean_residual, "%.3g") << " divergent " << red.divergent << "\n";
  }

  auto provenance = [&](const char* variant, double alpha0) {
    return Provenance{a.name, res.n_used, alpha0, res.deltas_removed, variant, {}};
  };
  if (!a.out_path.empty()) {
    write_coefficient_file(a.out_path, {res.tc_full, provenance("full", res.alpha0)});
    out << "wrote " << a.out_path << "\n";
  }
  if (!a.reduced_path.empty()) {
    write_coefficient_file(a.reduced_path,
                           {res.tc_reduced, provenance("reduced", res.alpha0_reduced)});
    out << "wrote " << a.reduced_path << "\n";
  }
  return kOk;
}

int cmd_eval(const std::string& file, std::vector<double> rhos, std::size_t theta_count,
             std::vector<double> thetas, std::ostream& out) {
  const CoefficientFile f = read_coefficient_file(file);
  if (thetas.empty()) {
    if (theta_count == 0) throw ValidationError("give --theta or a positive --theta-count");
    for (std::size_t j = 0; j < theta_count; ++j)
      thetas.push_back(-kPi + 2.0 * kPi * static_cast<double>(j + 1) / static_cast<double>(theta_count));
  }
  std::vector<DiskPoint> pts;
  for (double r : rhos)
    for (double t : thetas) pts.push_back(DiskPoint::make(r, t));
  const auto values = kernels::eval_inner_grid(f.coeffs, pts);
  const auto boundary = kernels::boundary_grid(f.coeffs, thetas, RhoLadder::for_order(f.coeffs.order()));

  out << "rho,theta,re,im,boundary\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& b = boundary[i % thetas.size()];
    out << num(pts[i].rho) << ',' << num(pts[i].theta) << ',' << num(values[i].real()) << ','
        << num(values[i].imag()) << ',' << (b.finite ? num(b.value) : std::string("divergent"))
        << '\n';
  }
  return kOk;
}

int cmd_chain(const std::string& file, int steps, const std::string& out_path, std::ostream& out) {
  CoefficientFile f = read_coefficient_file(file);
  TaylorCoefficients c = f.coeffs;
  if (steps > 0) c = angular_derivative_coeffs(c, steps);
  if (steps < 0) c = angular_primitive_coeffs(c, -steps);
  Provenance p = f.provenance.value_or(Provenance{file, 0, 0.0, {}, "", {}});
  p.chain.push_back(steps);
  p.alpha0 = 2.0 * c[0].real();
  const CoefficientFile result{std::move(c), std::move(p)};
  if (out_path.empty()) {
    out << to_json(result);
  } else {
    write_coefficient_file(out_path, result);
    out << "wrote " << out_path << "\n";
  }
  return kOk;
}

int cmd_list(std::ostream& out) {
  for (const auto& e : catalog()) {
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %-14s %-12s %s\n", e.name.c_str(),
                  e.expected_label.c_str(), e.oracle ? to_string(e.oracle->source) : "-",
                  e.description.c_str());
    out << line;
  }
  return kOk;
}

int cmd_compare(const std::string& name, const std::string& file, std::ostream& out,
                std::ostream& err) {
  const CatalogEntry* e = lookup(name, err);
  if (!e) return kUsage;
  if (!e->oracle) {
    err << "error: no coefficient oracle for '" << name << "'\n";
    return kUsage;
  }
  const CoefficientFile f = read_coefficient_file(file);
  const std::size_t K = f.coeffs.order();
  double max_abs = 0.0, max_rel = 0.0;
  std::size_t at_abs = 1, at_rel = 1;
  for (std::size_t k = 1; k <= K; ++k) {
    const cplx want = e->oracle->coefficient(k);
    const double d = std::abs(f.coeffs[k] - want);
    const double rel = d / std::max(1.0, std::abs(want));
    if (d > max_abs) max_abs = d, at_abs = k;
    if (rel > max_rel) max_rel = rel, at_rel = k;
  }
  const cplx c0 = e->oracle->coefficient(0);
  out << "function: " << name << " (oracle: " << to_string(e->oracle->source) << ", "
      << e->oracle->derivation << ")\n";
  out << "K: " << K << "\n";
  out << "max |c_k - oracle|: " << num(max_abs, "%.3g") << " at k=" << at_abs << "\n";
  out << "max relative: " << num(max_rel, "%.3g") << " at k=" << at_rel << "\n";
  out << "c_0: file " << num(f.coeffs[0].real(), "%.12g") << " oracle " << num(c0.real(), "%.12g")
      << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"circlechain: real functions on the circle as inner analytic functions"};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string name;
  int nmax = 4;
  bool as_json = false;
  auto* analyze = app.add_subcommand("analyze", "classify the singular points of a catalog function");
  analyze->add_option("name", name, "catalog name")->required();
  analyze->add_option("--nmax", nmax, "largest degree probed")->check(CLI::Range(1, 8));
  analyze->add_flag("--json", as_json, "machine-readable output");
  analyze->callback([&] { action = [&] { return cmd_analyze(name, nmax, as_json, out, err); }; });

  ReconstructArgs ra;
  auto* rec = app.add_subcommand("reconstruct", "run the reconstruction pipeline");
  rec->add_option("name", ra.name, "catalog name")->required();
  rec->add_option("--order,-K", ra.order, "truncation order K")->check(CLI::Range(1, 1 << 20));
  rec->add_flag("--reduce", ra.reduce, "detect and subtract delta components");
  rec->add_option("--nmax", ra.nmax, "largest hardness searched")->check(CLI::Range(1, 8));
  rec->add_option("--out,-o", ra.out_path, "coefficient file for the full result");
  rec->add_option("--reduced-out", ra.reduced_path, "coefficient file for the reduced result");
  rec->callback([&] { action = [&] { return cmd_reconstruct(ra, out, err); }; });

  std::string file;
  std::vector<double> rhos{0.5, 0.9};
  std::size_t theta_count = 0;
  std::vector<double> thetas;
  auto* ev = app.add_subcommand("eval", "evaluate a coefficient file on a polar grid (CSV)");
  ev->add_option("file", file, "coefficient file")->required();
  ev->add_option("--rho", rhos, "radii, 0 <= rho < 1")->delimiter(',');
  auto* tc_opt = ev->add_option("--theta-count", theta_count, "equispaced angles");
  ev->add_option("--theta", thetas, "explicit angles")->delimiter(',')->excludes(tc_opt);
  ev->callback([&] { action = [&] { return cmd_eval(file, rhos, theta_count, thetas, out); }; });

  int steps = 0;
  std::string chain_out;
  auto* ch = app.add_subcommand("chain", "walk the integral-differential chain");
  ch->add_option("file", file, "coefficient file")->required();
  ch->add_option("steps", steps, "derivatives (> 0) or primitives (< 0)")->required();
  ch->add_option("--out,-o", chain_out, "output file (stdout when omitted)");
  ch->callback([&] { action = [&] { return cmd_chain(file, steps, chain_out, out); }; });

  auto* ls = app.add_subcommand("list", "list the function catalog");
  ls->callback([&] { action = [&] { return cmd_list(out); }; });

  auto* cmp = app.add_subcommand("compare", "residuals of a coefficient file against an oracle");
  cmp->add_option("name", name, "catalog name")->required();
  cmp->add_option("file", file, "coefficient file")->required();
  cmp->callback([&] { action = [&] { return cmd_compare(name, file, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const StageError& e) {
    err << "error: pipeline stage '" << e.stage() << "' failed: " << e.what() << "\n";
    return kPipeline;
  } catch (const ClassificationError& e) {
    err << "error: " << e.what() << "\n";
    return kClassification;
  } catch (const QuadratureError& e) {
    err << "error: " << e.what() << "\n";
    return kPipeline;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace circlechain::cli
