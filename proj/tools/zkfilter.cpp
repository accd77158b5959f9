// Command-line surface: certify optimality of a rational function over a
// band system, solve for the optimum in a class, transform problems
// projectively, inspect cross ratios and index arrays, and reproduce the
// counterexample where the classical linear alternation count disagrees with
// the cyclic one.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "zk/error.hpp"
#include "zk/io.hpp"

namespace {

using namespace zk;

constexpr int kExitCertified = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNotCertified = 3;

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::optimal_certified:
      return kExitCertified;
    case Verdict::infeasible_class:
      return kExitInfeasible;
    case Verdict::not_certified:
      return kExitNotCertified;
  }
  return kExitUsage;
}

// ZK_TOL overrides the window-boundary attainment tolerance everywhere.
CertifyOptions base_options() {
  CertifyOptions co;
  if (const char* t = std::getenv("ZK_TOL")) {
    const double v = std::atof(t);
    if (v > 0.0) co.eps_ext = v;
  }
  return co;
}

AnchorConvention convention_flag(const std::string& s) {
  if (s == "flipped") return AnchorConvention::flipped;
  return AnchorConvention::canonical;
}

void emit(const Json& j, const std::string& json_out) {
  std::cout << j.dump(2) << "\n";
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    if (!f) fail(errc::precondition_violated, "cannot write " + json_out);
    f << j.dump(2) << "\n";
  }
}

// Sampled error curve for plotting: per-band x, value, and Fubini-Study
// distance of the value to the matching window boundary.
void write_error_curve(const std::string& path, const BandSystem& e, const ValueWindows& f,
                       const RealRational& r) {
  std::ofstream out(path);
  if (!out) fail(errc::precondition_violated, "cannot write " + path);
  out << "band,x,value,boundary_distance\n";
  out << std::setprecision(17);
  for (std::size_t bi = 0; bi < e.size(); ++bi) {
    const Band& band = e.band(bi);
    const Arc& w = f.window(band.type);
    const int samples = 256;
    for (int k = 0; k < samples; ++k) {
      const ProjPoint x = band.arc.point_at_offset(band.arc.length() * k / (samples - 1));
      const ProjPoint v = r.eval(x);
      const double dist =
          std::min(fubini_study_distance(v, w.start()), fubini_study_distance(v, w.end()));
      out << band.id << ",";
      if (x.is_infinite()) {
        out << "inf";
      } else {
        out << x.value();
      }
      out << "," << v.value() << "," << dist << "\n";
    }
  }
}

void write_iterates(const std::string& path, const SolveReport& rep) {
  std::ofstream out(path);
  if (!out) fail(errc::precondition_violated, "cannot write " + path);
  out << "iteration,kappa,defect,alternation,sigma0,sigma1\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < rep.iterations.size(); ++i) {
    const IterationRow& row = rep.iterations[i];
    out << i << "," << row.kappa << "," << row.defect << "," << row.alternation << ","
        << row.sigma0 << "," << row.sigma1 << "\n";
  }
}

int cmd_certify(const std::string& path, const std::string& convention, bool class_self,
                const std::string& json_out, const std::string& csv_out) {
  Problem p = load_problem(path);
  if (!p.function) fail(errc::precondition_violated, "problem has no function to certify");
  if (!p.windows) fail(errc::precondition_violated, "problem has no value windows");
  CertifyOptions co = base_options();
  if (class_self) {
    co.target_class = index_array(*p.function, p.bands, *p.windows);
  } else if (p.class_array) {
    co.target_class = *p.class_array;
  } else {
    fail(errc::precondition_violated,
         "problem has no class_array; pass --class self to use the function's own array");
  }
  Certificate cert = certify(*p.function, p.bands, *p.windows, co);
  const AnchorConvention conv = convention_flag(convention);
  cert.target = with_convention(cert.target, p.bands, conv);
  cert.observed = with_convention(cert.observed, p.bands, conv);
  emit(certificate_json(cert), json_out);
  if (!csv_out.empty()) write_error_curve(csv_out, p.bands, *p.windows, *p.function);
  return exit_for(cert.verdict);
}

int cmd_solve(const std::string& path, int n, const std::string& seed_file, bool oracle,
              const std::string& json_out, const std::string& csv_out) {
  Problem p = load_problem(path);
  std::optional<RealRational> seed = p.function;
  if (!seed_file.empty()) {
    Problem s = load_problem(seed_file);
    if (!s.function) fail(errc::precondition_violated, "seed file has no function");
    seed = s.function;
  }
  SolveReport rep = solve(p.bands, n, p.class_array, seed);
  std::optional<double> oracle_kappa;
  if (oracle) oracle_kappa = brute_force_oracle(p.bands, n).first;
  emit(report_json(rep, oracle_kappa), json_out);
  if (!csv_out.empty()) write_iterates(csv_out, rep);
  return rep.converged ? kExitCertified : kExitNotCertified;
}

Problem transform_problem(const Problem& p, const MobiusMap& m, bool target_side) {
  const MobiusMap id = MobiusMap::identity();
  if (target_side) {
    return Problem{
        p.bands,
        p.windows ? std::optional<ValueWindows>(p.windows->transformed(m)) : std::nullopt,
        p.class_array ? std::optional<IndexArray>(transport_class(*p.class_array, p.bands, id, m))
                      : std::nullopt,
        p.function ? std::optional<RealRational>(compose_target(*p.function, m)) : std::nullopt};
  }
  return Problem{
      p.bands.transformed(m),
      p.windows,
      p.class_array ? std::optional<IndexArray>(transport_class(*p.class_array, p.bands, m, id))
                    : std::nullopt,
      p.function ? std::optional<RealRational>(compose_source(*p.function, m)) : std::nullopt};
}

// Invariance fuzz: random source/target map pairs, certificate core must
// match the untransformed one case by case.  Cases run concurrently but
// report in index order.
int run_fuzz(const Problem& p, int cases) {
  if (!p.function || !p.windows) {
    fail(errc::precondition_violated, "--fuzz needs a problem with function and windows");
  }
  CertifyOptions co = base_options();
  co.target_class =
      p.class_array ? *p.class_array : index_array(*p.function, p.bands, *p.windows);
  const CertificateCore base = certify(*p.function, p.bands, *p.windows, co).core();

  std::vector<std::string> outcome(cases);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= cases) return;
      std::mt19937_64 rng(9001 + 7919ull * idx);
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      try {
        for (int attempt = 0;; ++attempt) {
          if (attempt >= 64) {
            outcome[idx] = "no nondegenerate map pair found";
            break;
          }
          double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
          double a2 = u(rng), b2 = u(rng), c2 = u(rng), d2 = u(rng);
          const double s1 = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
          const double s2 = std::max({std::abs(a2), std::abs(b2), std::abs(c2), std::abs(d2)});
          if (s1 == 0 || s2 == 0) continue;
          if (std::abs(a * d - b * c) < 0.15 * s1 * s1) continue;
          if (std::abs(a2 * d2 - b2 * c2) < 0.15 * s2 * s2) continue;
          Problem q;
          try {
            q = transform_problem(transform_problem(p, MobiusMap(a, b, c, d), false),
                                  MobiusMap(a2, b2, c2, d2), true);
          } catch (const Error&) {
            continue;  // band endpoint collided with the map pole; redraw
          }
          CertifyOptions cq = base_options();
          cq.target_class = *q.class_array;
          const CertificateCore got = certify(*q.function, q.bands, *q.windows, cq).core();
          if (!(got == base)) outcome[idx] = "certificate core differs";
          break;
        }
      } catch (const Error& err) {
        outcome[idx] = err.what();
      }
    }
  };
  const unsigned threads = std::min(8u, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  int ok = 0;
  for (int i = 0; i < cases; ++i) {
    if (outcome[i].empty()) {
      ++ok;
    } else {
      std::cout << "case " << i << ": " << outcome[i] << "\n";
    }
  }
  std::cout << ok << "/" << cases << " identical certificate cores\n";
  return ok == cases ? kExitCertified : kExitNotCertified;
}

int cmd_transform(const std::string& path, const std::vector<double>& map_vals, bool target_side,
                  const std::string& out_path, int fuzz) {
  Problem p = load_problem(path);
  if (fuzz > 0) return run_fuzz(p, fuzz);
  const MobiusMap m(map_vals[0], map_vals[1], map_vals[2], map_vals[3]);
  Problem q = transform_problem(p, m, target_side);
  if (out_path.empty()) {
    std::cout << problem_json(q).dump(2) << "\n";
  } else {
    save_problem(out_path, q);
  }
  return kExitCertified;
}

int cmd_crossratio(const std::string& path, double mu, double theta) {
  std::optional<ValueWindows> f;
  if (mu > 0) {
    f = windows_from_mu(mu);
  } else if (theta > 0) {
    f = windows_from_theta(theta);
  } else if (!path.empty()) {
    Problem p = load_problem(path);
    if (!p.windows) fail(errc::precondition_violated, "problem has no value windows");
    f = *p.windows;
  } else {
    fail(errc::precondition_violated, "pass a problem file, --mu or --theta");
  }
  Json out;
  out["schema"] = kSchemaVersion;
  out["windows"] = windows_json(*f);
  out["kappa"] = f->kappa();
  std::cout << out.dump(2) << "\n";
  return kExitCertified;
}

int cmd_indexes(const std::string& path, const std::string& convention) {
  Problem p = load_problem(path);
  if (!p.function) fail(errc::precondition_violated, "problem has no function");
  const ValueWindows f = p.windows ? *p.windows : hull_windows(p.bands, *p.function);
  const IndexArray a = index_array(*p.function, p.bands, f, convention_flag(convention));
  Json out;
  out["schema"] = kSchemaVersion;
  out["class_array"] = class_json(a);
  out["binary_sum_mod2"] = a.binary_sum_mod2();
  out["degree_parity"] = p.function->actual_degree() % 2;
  std::cout << out.dump(2) << "\n";
  return kExitCertified;
}

// The three-stage comparison: the linear alternation count changes under
// projective maps of the same optimum while the cyclic certificate does not.
int cmd_counterexample(const std::string& data_dir) {
  Problem pe = load_problem(data_dir + "/t3.json");
  Problem ps = load_problem(data_dir + "/t3-estar.json");
  if (!pe.function || !pe.windows || !pe.class_array || !ps.function || !ps.windows ||
      !ps.class_array) {
    fail(errc::precondition_violated, "bundled problems need function, windows and class_array");
  }

  const auto run = [](const Problem& p) {
    CertifyOptions co = base_options();
    co.target_class = *p.class_array;
    return certify(*p.function, p.bands, *p.windows, co);
  };
  const Certificate ce = run(pe);
  const Certificate cs = run(ps);
  const Problem pl = transform_problem(ps, MobiusMap(0, 1, 1, 0), false);
  const Certificate cl = run(pl);

  const auto row = [](const char* name, const Certificate& c) {
    std::cout << std::left << std::setw(10) << name << std::right << std::setw(9) << c.malozemov
              << std::setw(8) << c.alternation << std::setw(8) << c.sigma0 << std::setw(8)
              << c.sigma1 << "  " << verdict_name(c.verdict) << "\n";
  };
  std::cout << std::left << std::setw(10) << "set" << std::right << std::setw(9) << "linear"
            << std::setw(8) << "cyclic" << std::setw(8) << "sigma0" << std::setw(8) << "sigma1"
            << "  verdict\n";
  row("E", ce);
  row("E*", cs);
  row("inv(E*)", cl);
  const bool identical = cs.core() == cl.core();
  std::cout << "cyclic certificates identical across the map: " << (identical ? "yes" : "no")
            << "\n";
  const bool all_opt = ce.verdict == Verdict::optimal_certified &&
                       cs.verdict == Verdict::optimal_certified &&
                       cl.verdict == Verdict::optimal_certified;
  return identical && all_opt ? kExitCertified : kExitNotCertified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projective multiband filter optimality toolkit"};
  app.require_subcommand(1);

  std::string path, seed_file, json_out, csv_out, out_path, data_dir = "data";
  std::string convention = "canonical";
  std::vector<double> map_vals;
  bool class_self = false, target_side = false, oracle = false;
  int n = 0, fuzz = 0;
  double mu = 0, theta = 0;

  CLI::App* certify = app.add_subcommand("certify", "certify a function against a class");
  certify->add_option("problem", path, "problem file")->required();
  certify->add_option("--convention", convention, "anchor convention for reported arrays")
      ->check(CLI::IsMember({"canonical", "flipped"}));
  std::string class_mode;
  certify->add_option("--class", class_mode, "\"self\" certifies the function's own array")
      ->check(CLI::IsMember({"self"}));
  certify->add_option("--json-out", json_out, "also write the certificate JSON here");
  certify->add_option("--csv-out", csv_out, "write the sampled error curve here");

  CLI::App* solve = app.add_subcommand("solve", "maximize the window cross ratio in a class");
  solve->add_option("problem", path, "problem file")->required();
  solve->add_option("--n", n, "nominal degree")->required();
  solve->add_option("--seed-file", seed_file, "problem file whose function seeds the solve");
  solve->add_flag("--oracle", oracle, "compare against the brute-force oracle (degree <= 2)");
  solve->add_option("--json-out", json_out, "also write the report JSON here");
  solve->add_option("--csv-out", csv_out, "write per-iteration rows here");

  CLI::App* transform = app.add_subcommand("transform", "apply a projective map to a problem");
  transform->add_option("problem", path, "problem file")->required();
  transform->add_option("--map", map_vals, "map entries a,b,c,d for x -> (ax+b)/(cx+d)")
      ->delimiter(',')
      ->expected(4);
  transform->add_flag("--target", target_side, "apply to the value side instead of the source");
  transform->add_option("--out", out_path, "write the transformed problem here");
  transform->add_option("--fuzz", fuzz,
                        "run N random map pairs and check certificate invariance");

  CLI::App* crossratio = app.add_subcommand("crossratio", "cross ratio of value windows");
  crossratio->add_option("problem", path, "problem file with windows");
  crossratio->add_option("--mu", mu, "symmetric windows +-[1-mu, 1+mu]");
  crossratio->add_option("--theta", theta, "windows [-theta, theta] / [1/theta, -1/theta]");

  CLI::App* indexes = app.add_subcommand("indexes", "transition index array of a function");
  indexes->add_option("problem", path, "problem file with a function")->required();
  indexes->add_option("--convention", convention, "anchor convention")
      ->check(CLI::IsMember({"canonical", "flipped"}));

  CLI::App* counter = app.add_subcommand("counterexample",
                                         "reproduce the linear-vs-cyclic comparison table");
  counter->add_option("--data-dir", data_dir, "directory with the bundled problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(certify)) {
      return cmd_certify(path, convention, class_mode == "self", json_out, csv_out);
    }
    if (app.got_subcommand(solve)) {
      return cmd_solve(path, n, seed_file, oracle, json_out, csv_out);
    }
    if (app.got_subcommand(transform)) {
      if (fuzz == 0 && map_vals.size() != 4) {
        std::cerr << "transform needs --map a,b,c,d or --fuzz N\n";
        return kExitUsage;
      }
      return cmd_transform(path, map_vals, target_side, out_path, fuzz);
    }
    if (app.got_subcommand(crossratio)) return cmd_crossratio(path, mu, theta);
    if (app.got_subcommand(indexes)) return cmd_indexes(path, convention);
    if (app.got_subcommand(counter)) return cmd_counterexample(data_dir);
  } catch (const Error& err) {
    if (err.code() == errc::infeasible_class) {
      std::cerr << "class infeasible: " << err.what() << "\n";
      return kExitInfeasible;
    }
    if (err.code() == errc::stalled) {
      std::cerr << "solver stalled: " << err.what() << "\n";
      return kExitNotCertified;
    }
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
