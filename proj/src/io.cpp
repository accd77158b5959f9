#include "zk/io.hpp"

#include <cmath>
#include <fstream>
#include <utility>
#include <vector>

#include "zk/error.hpp"

namespace zk {
namespace {

[[noreturn]] void bad(const std::string& what) { fail(errc::precondition_violated, what); }

double number_field(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string type_name(BandType t) { return t == BandType::plus ? "plus" : "minus"; }

BandType type_from(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "plus") return BandType::plus;
  if (s == "minus") return BandType::minus;
  bad("band type must be \"plus\" or \"minus\", got \"" + s + "\"");
}

std::string convention_name(AnchorConvention c) {
  return c == AnchorConvention::canonical ? "canonical" : "flipped";
}

AnchorConvention convention_from(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "canonical") return AnchorConvention::canonical;
  if (s == "flipped") return AnchorConvention::flipped;
  bad("convention must be \"canonical\" or \"flipped\", got \"" + s + "\"");
}

}  // namespace

Json point_json(const ProjPoint& x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

ProjPoint point_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "-inf") return ProjPoint::infinity();
    bad("endpoint must be a number or \"inf\", got \"" + s + "\"");
  }
  return ProjPoint::finite(number_field(j, "endpoint"));
}

Json bands_json(const BandSystem& e) {
  Json out = Json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Band& b = e.band(i);
    out.push_back({{"type", type_name(b.type)},
                   {"start", point_json(b.arc.start())},
                   {"end", point_json(b.arc.end())}});
  }
  return out;
}

BandSystem bands_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2) bad("bands must be an array of at least two entries");
  std::vector<Band> bands;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& b = j[i];
    if (!b.is_object() || !b.contains("type") || !b.contains("start") || !b.contains("end")) {
      bad("band " + std::to_string(i) + " needs type, start and end");
    }
    bands.push_back(
        {Arc(point_from_json(b["start"]), point_from_json(b["end"])), type_from(b["type"]),
         static_cast<int>(i)});
  }
  return BandSystem(std::move(bands));
}

Json windows_json(const ValueWindows& f) {
  return Json::array(
      {point_json(f.d0m()), point_json(f.d1m()), point_json(f.d0p()), point_json(f.d1p())});
}

ValueWindows windows_from_json(const Json& j) {
  if (j.is_object() && j.contains("mu")) return windows_from_mu(number_field(j["mu"], "mu"));
  if (j.is_object() && j.contains("theta")) {
    return windows_from_theta(number_field(j["theta"], "theta"));
  }
  if (!j.is_array() || j.size() != 4) {
    bad("windows must be four endpoints, {\"mu\": m} or {\"theta\": t}");
  }
  return ValueWindows(Arc(point_from_json(j[0]), point_from_json(j[1])),
                      Arc(point_from_json(j[2]), point_from_json(j[3])));
}

Json class_json(const IndexArray& a) {
  Json entries = Json::array();
  for (const auto& [tid, ent] : a.entries) {
    Json e = {{"transition", tid}, {"bin", ent.bin}};
    if (ent.integer) e["integer"] = *ent.integer;
    entries.push_back(std::move(e));
  }
  return Json{{"convention", convention_name(a.convention)}, {"entries", std::move(entries)}};
}

IndexArray class_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries")) bad("class array needs an entries list");
  IndexArray a;
  if (j.contains("convention")) a.convention = convention_from(j["convention"]);
  for (const Json& e : j["entries"]) {
    if (!e.is_object() || !e.contains("transition") || !e.contains("bin")) {
      bad("class entry needs transition and bin");
    }
    IndexEntry ent;
    ent.bin = e["bin"].get<int>();
    if (ent.bin != 0 && ent.bin != 1) bad("class bin must be 0 or 1");
    if (e.contains("integer")) ent.integer = e["integer"].get<long>();
    a.entries[e["transition"].get<int>()] = ent;
  }
  return a;
}

Json function_json(const RealRational& r) {
  return Json{
      {"p", r.num().coef()}, {"q", r.den().coef()}, {"n", r.nominal_degree()}};
}

RealRational function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("q") || !j.contains("n")) {
    bad("function needs p, q and n");
  }
  return RealRational(Poly(j["p"].get<std::vector<double>>()),
                      Poly(j["q"].get<std::vector<double>>()), j["n"].get<int>());
}

Json problem_json(const Problem& p) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["bands"] = bands_json(p.bands);
  if (p.windows) out["windows"] = windows_json(*p.windows);
  if (p.class_array) out["class_array"] = class_json(*p.class_array);
  if (p.function) out["function"] = function_json(*p.function);
  return out;
}

Problem problem_from_json(const Json& j) {
  if (!j.is_object()) bad("problem must be a JSON object");
  if (j.contains("schema") && j["schema"].get<int>() != kSchemaVersion) {
    bad("unsupported schema version " + j["schema"].dump());
  }
  if (!j.contains("bands")) bad("problem needs a bands list");
  Problem p{bands_from_json(j["bands"]), {}, {}, {}};
  p.bands.ensure_valid();
  if (j.contains("windows")) p.windows = windows_from_json(j["windows"]);
  if (j.contains("class_array")) p.class_array = class_from_json(j["class_array"]);
  if (j.contains("function")) p.function = function_from_json(j["function"]);
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& ex) {
    bad(path + ": " + ex.what());
  }
  return problem_from_json(j);
}

void save_problem(const std::string& path, const Problem& p) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << problem_json(p).dump(2) << "\n";
}

Json certificate_json(const Certificate& c) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  out["verdict"] = verdict_name(c.verdict);
  if (!c.reason.empty()) out["reason"] = c.reason;
  out["kappa"] = c.kappa;
  out["nominal_degree"] = c.nominal_degree;
  out["actual_degree"] = c.actual_degree;
  out["defect"] = c.defect;
  out["alternation"] = c.alternation;
  out["malozemov_count"] = c.malozemov;
  out["sigma0"] = c.sigma0;
  out["sigma1"] = c.sigma1;
  out["sigma"] = c.sigma;
  out["rhs"] = c.rhs;
  out["window_attained"] = c.window_attained;
  out["class_array"] = class_json(c.target);
  out["observed_array"] = class_json(c.observed);
  Json ext = Json::array();
  for (const ExtremalPoint& p : c.extremals) {
    ext.push_back({{"x", point_json(p.x)},
                   {"band", p.band_id},
                   {"band_type", type_name(p.band_type)},
                   {"parity", p.parity},
                   {"deviation", p.deviation}});
  }
  out["extremal_points"] = std::move(ext);
  Json gaps = Json::array();
  for (const GapInfo& g : c.gaps) {
    gaps.push_back({{"from", g.from},
                    {"to", g.to},
                    {"parity", g.odd ? "odd" : "even"},
                    {"delta_sigma", g.delta_sigma},
                    {"transitions", g.transitions}});
  }
  out["gaps"] = std::move(gaps);
  out["tolerances"] = Json{{"eps_ext", c.eps_ext}};
  return out;
}

Json report_json(const SolveReport& rep, std::optional<double> oracle_kappa) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["tool_version"] = kToolVersion;
  out["converged"] = rep.converged;
  out["stop_reason"] = rep.stop_reason;
  out["kappa"] = rep.windows.kappa();
  Json iters = Json::array();
  for (const IterationRow& row : rep.iterations) {
    iters.push_back({{"kappa", row.kappa},
                     {"defect", row.defect},
                     {"alternation", row.alternation},
                     {"sigma0", row.sigma0},
                     {"sigma1", row.sigma1}});
  }
  out["iterations"] = std::move(iters);
  out["function"] = function_json(rep.function);
  out["windows"] = windows_json(rep.windows);
  out["certificate"] = certificate_json(rep.certificate);
  if (oracle_kappa) {
    out["oracle_kappa"] = *oracle_kappa;
    out["oracle_gap"] = std::abs(rep.windows.kappa() - *oracle_kappa) / *oracle_kappa;
  } else if (rep.oracle_gap) {
    out["oracle_gap"] = *rep.oracle_gap;
  }
  return out;
}

}  // namespace zk
