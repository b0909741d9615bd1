#include "circlechain/cli/coefficient_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace circlechain::cli {

using nlohmann::json;

std::string to_json(const CoefficientFile& f) {
  json j;
  j["version"] = CoefficientFile::kVersion;
  j["K"] = f.coeffs.order();
  json arr = json::array();
  for (const cplx& c : f.coeffs.values()) arr.push_back({c.real(), c.imag()});
  j["coefficients"] = std::move(arr);
  if (f.provenance) {
    const Provenance& p = *f.provenance;
    json deltas = json::array();
    for (const auto& d : p.deltas)
      deltas.push_back({{"location", d.location},
                        {"order", d.order},
                        {"amplitude", d.amplitude},
                        {"amplitude_error", d.amplitude_error}});
    j["provenance"] = {{"source", p.source}, {"n_used", p.n_used},   {"alpha0", p.alpha0},
                       {"deltas", deltas},   {"variant", p.variant}, {"chain", p.chain}};
  }
  // nlohmann writes doubles in shortest round-trip form.
  return j.dump(1) + "\n";
}

CoefficientFile parse_coefficient_file(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ValidationError("coefficient file must be a JSON object");
    if (j.at("version").get<int>() != CoefficientFile::kVersion)
      throw ValidationError("unsupported coefficient file version");
    const auto K = j.at("K").get<std::size_t>();
    const auto& arr = j.at("coefficients");
    if (!arr.is_array() || arr.size() != K + 1)
      throw ValidationError("coefficient list must have K + 1 entries");
    std::vector<cplx> c;
    c.reserve(K + 1);
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ValidationError("each coefficient must be a [re, im] pair");
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    CoefficientFile f{TaylorCoefficients(std::move(c)), std::nullopt};
    if (j.contains("provenance")) {
      const auto& pj = j["provenance"];
      Provenance p;
      p.source = pj.value("source", "");
      p.n_used = pj.value("n_used", 0);
      p.alpha0 = pj.value("alpha0", 0.0);
      p.variant = pj.value("variant", "");
      if (pj.contains("chain")) p.chain = pj["chain"].get<std::vector<int>>();
      if (pj.contains("deltas"))
        for (const auto& d : pj["deltas"])
          p.deltas.push_back({d.at("location").get<double>(), d.at("order").get<int>(),
                              d.at("amplitude").get<double>(), d.value("amplitude_error", 0.0)});
      f.provenance = std::move(p);
    }
    return f;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed coefficient file: ") + e.what());
  }
}

CoefficientFile read_coefficient_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_coefficient_file(ss.str());
}

void write_coefficient_file(const std::string& path, const CoefficientFile& f) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << to_json(f);
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace circlechain::cli
