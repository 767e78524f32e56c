// acycle: command line front end for sampling, persistence, spanning
// acycles, identity checks and the Monte Carlo studies.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acycle/asymptotics.hpp"
#include "acycle/experiments.hpp"
#include "acycle/morse.hpp"
#include "acycle/persistence.hpp"
#include "acycle/random.hpp"
#include "acycle/spanning_acycle.hpp"

using namespace acycle;
using nlohmann::json;

namespace {

constexpr int kPreconditionExit = 2;
constexpr int kViolationExit = 3;

struct ProcessArgs {
  std::string kind = "lm";
  std::size_t n = 10;
  int d = 1;
  std::string law = "uniform";
  int max_dim = 0;
  std::size_t m = 0;

  void add_to(CLI::App* app) {
    app->add_option("--process", kind, "lm | clique | uniform")->capture_default_str();
    app->add_option("--n", n, "number of vertices")->capture_default_str();
    app->add_option("--d", d, "top dimension d (lifetimes in degree d-1)")->capture_default_str();
    app->add_option("--law", law, "uniform | exponential")->capture_default_str();
    app->add_option("--max-dim", max_dim, "clique truncation (0: d+1)");
    app->add_option("--m", m, "number of d-simplices for the uniform model");
  }

  ProcessSpec spec() const {
    ProcessSpec s;
    s.kind = parse_process_kind(kind);
    s.n = n;
    s.d = d;
    s.law = parse_birth_law(law);
    s.max_dim = max_dim;
    s.m = m;
    s.validate();
    return s;
  }
};

Filtration load(const std::string& path) {
  if (path == "-") return read_filtration(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_filtration(in);
}

// Writes to path, or stdout for "" / "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(std::stoul(item));
  return out;
}

VerifyMode verify_mode(const std::string& s) {
  if (s == "none") return VerifyMode::none;
  if (s == "all") return VerifyMode::all;
  if (s == "sample") return VerifyMode::sample;
  throw std::invalid_argument("unknown verify mode '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifetime sums, spanning acycles and random simplicial complexes"};
  app.require_subcommand(1);

  std::uint64_t seed = 0, trial = 0;
  std::string input = "-", output, backend_name = "rational", format = "json", verify = "sample";
  ProcessArgs proc;
  int degree = -1, d = 1;
  std::size_t trials = 100, n = 0, m = 0;
  double tol = 1e-6;
  std::uint64_t cap = kDefaultEnumerationCap;
  bool substituted = false;
  std::string n_list = "20,40,60", config_path;

  auto* sample = app.add_subcommand("sample", "emit a sampled filtration");
  proc.add_to(sample);
  sample->add_option("--seed", seed, "master seed");
  sample->add_option("--trial", trial, "trial index");
  sample->add_option("-o,--out", output, "output file (default stdout)");

  auto* ph = app.add_subcommand("ph", "persistence diagram of a filtration file");
  ph->add_option("input", input, "filtration file ('-' for stdin)");
  ph->add_option("--degree", degree, "homological degree (default: all)");
  ph->add_option("--backend", backend_name, "rational | modp | modp2")->capture_default_str();
  ph->add_option("--format", format, "json | csv")->capture_default_str();
  ph->add_option("-o,--out", output, "output file");

  auto* msa = app.add_subcommand("msa", "minimum spanning acycle of a filtration file");
  msa->add_option("input", input, "filtration file");
  msa->add_option("--d", d, "acycle dimension")->capture_default_str();
  msa->add_option("--backend", backend_name, "rational | modp | modp2")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "check the lifetime identity three ways");
  ver->add_option("input", input, "filtration file; omit with --sample")->capture_default_str();
  bool from_sample = false;
  ver->add_flag("--sample", from_sample, "verify a sampled filtration instead of a file");
  proc.add_to(ver);
  ver->add_option("--seed", seed, "master seed");
  ver->add_option("--trial", trial, "trial index");
  ver->add_option("--backend", backend_name, "rational | modp | modp2")->capture_default_str();

  auto* exp = app.add_subcommand("experiment", "run Monte Carlo trials from a JSON config");
  exp->add_option("config", config_path, "config file")->required();
  exp->add_option("--verify", verify, "none | sample | all (overrides the config)");

  auto* scal = app.add_subcommand("scaling", "lifetime means across n");
  proc.add_to(scal);
  scal->add_option("--ns", n_list, "comma separated vertex counts")->capture_default_str();
  scal->add_option("--trials", trials, "trials per n")->capture_default_str();
  scal->add_option("--seed", seed, "master seed");
  scal->add_option("--verify", verify, "none | sample | all")->capture_default_str();
  scal->add_option("-o,--out", output, "CSV output");

  auto* rho = app.add_subcommand("rho", "estimate rho_{n,m}");
  rho->add_option("--n", n, "vertices")->required();
  rho->add_option("--d", d, "dimension")->capture_default_str();
  rho->add_option("--m", m, "number of d-simplices")->required();
  rho->add_option("--trials", trials, "samples")->capture_default_str();
  rho->add_option("--seed", seed, "master seed");

  auto* lim = app.add_subcommand("limit", "limiting constant I_{d-1}");
  lim->add_option("--d", d, "dimension")->capture_default_str();
  lim->add_option("--tol", tol, "absolute tolerance")->capture_default_str();
  lim->add_flag("--substituted", substituted, "d = 1 through the substitution c = psi_1(t)");

  auto* kal = app.add_subcommand("kalai", "sum of squared torsion over spanning acycles");
  kal->add_option("--n", n, "vertices")->required();
  kal->add_option("--d", d, "dimension")->capture_default_str();
  kal->add_option("--cap", cap, "maximum number of candidate subsets")->capture_default_str();

  auto* mor = app.add_subcommand("morse", "critical counts of the lexicographic matching");
  mor->add_option("input", input, "filtration file; the final complex is used");
  mor->add_option("--d", d, "matching type (d-1, d)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      auto f = sample_process(proc.spec(), SeedSpec{seed, trial});
      std::ostringstream out;
      write_filtration(out, f);
      emit(output, out.str());
    } else if (*ph) {
      auto f = load(input);
      auto backend = parse_backend(backend_name);
      std::vector<PersistenceDiagram> ds;
      if (degree >= 0) {
        ds.push_back(compute_persistence(f, degree, backend).sorted());
      } else {
        for (int k = 0; k <= f.complex().dim(); ++k) ds.push_back(compute_persistence(f, k, backend).sorted());
      }
      std::ostringstream out;
      if (format == "csv") write_diagram_csv(out, ds);
      else out << diagram_to_json(ds).dump(2) << '\n';
      emit(output, out.str());
    } else if (*msa) {
      auto f = load(input);
      SpanningAcycleResult r;
      switch (parse_backend(backend_name)) {
        case Backend::rational: r = min_spanning_acycle<Rational>(f, d); break;
        case Backend::modp: r = min_spanning_acycle<ModP>(f, d, false); break;
        case Backend::modp2: r = min_spanning_acycle<ModP2>(f, d, false); break;
      }
      std::cout << to_json(r).dump(2) << '\n';
    } else if (*ver) {
      auto f = from_sample ? sample_process(proc.spec(), SeedSpec{seed, trial}) : load(input);
      auto r = verify_identity(f, proc.d, parse_backend(backend_name));
      std::cout << to_json(r).dump(2) << '\n';
      if (!r.equal) {
        std::cerr << "identity violated; filtration follows\n";
        write_filtration(std::cerr, f);
        return kViolationExit;
      }
    } else if (*exp) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open " + config_path);
      auto cfg = config_from_json(json::parse(in));
      if (!exp->get_option("--verify")->empty()) cfg.verify = verify_mode(verify);
      auto r = run_trials(cfg);
      std::cout << summary_json(cfg, r).dump(2) << '\n';
    } else if (*scal) {
      auto t = scaling_study(proc.spec(), parse_list(n_list), trials, seed, verify_mode(verify));
      std::ostringstream out;
      write_scaling_csv(out, t);
      emit(output, out.str());
    } else if (*rho) {
      auto e = estimate_rho(n, d, m, trials, seed);
      std::cout << json{{"n", n}, {"d", d}, {"m", m}, {"rho", e.value}, {"half_width", e.half_width},
                        {"hits", e.hits}, {"trials", e.trials}}
                       .dump(2)
                << '\n';
    } else if (*lim) {
      auto e = substituted ? limit_constant_substituted(tol) : limit_constant(d, tol);
      if (substituted) e.d = 1;
      std::cout << to_json(e).dump(2) << '\n';
    } else if (*kal) {
      auto r = kalai_sum(n, d, cap);
      json counts = json::object();
      for (const auto& [order, c] : r.torsion_counts) counts[order.get_str()] = c;
      std::cout << json{{"n", n}, {"d", d}, {"sum", r.sum.get_str()}, {"expected", r.expected.get_str()},
                        {"candidates", r.candidates}, {"acycles", r.acycles}, {"torsion_counts", counts},
                        {"equal", r.sum == r.expected}}
                       .dump(2)
                << '\n';
    } else if (*mor) {
      auto f = load(input);
      const auto& x = f.complex();
      auto match = lex_matching(x, d);
      std::cout << json{{"d", d},
                        {"acyclic", verify_acyclic(x, match)},
                        {"pairs", match.pairs()},
                        {"critical", {{std::to_string(d - 1), critical_count(match, d - 1)},
                                      {std::to_string(d), critical_count(match, d)}}},
                        {"betti", {{std::to_string(d - 1), betti<ModP>(x, d - 1)}, {std::to_string(d), betti<ModP>(x, d)}}}}
                       .dump(2)
                << '\n';
    }
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kPreconditionExit;
  } catch (const IdentityViolation& e) {
    std::cerr << "identity violation (seed " << e.seed().master << ", trial " << e.seed().trial << "): " << e.what()
              << '\n'
              << e.filtration();
    return kViolationExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
