#include "acycle/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "acycle/spanning_acycle.hpp"

namespace acycle {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Runs fn(i) for i in [0, jobs) on worker threads. Exceptions are kept per
// index and the one with the smallest index is rethrown after joining.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn, std::size_t* used = nullptr) {
  const std::size_t workers = worker_count(jobs);
  if (used) *used = workers;
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string serialize(const Filtration& f) {
  std::ostringstream out;
  write_filtration(out, f);
  return out.str();
}

bool selected_for_check(VerifyMode mode, std::uint64_t seed, std::uint64_t trial) {
  if (mode == VerifyMode::all) return true;
  if (mode == VerifyMode::none) return false;
  return splitmix64(seed ^ splitmix64(trial + 0x632be59bd9b4e019ull)) % 20 == 0;
}

template <class F>
IdentityReport verify_with(const Filtration& f, int d) {
  IdentityReport r;
  r.d = d;
  auto t0 = Clock::now();
  r.msa = lifetime_via_msa<F>(f, d);
  r.seconds_msa = seconds_since(t0);

  t0 = Clock::now();
  auto total = lifetime_sum(compute_persistence<F>(f, d - 1));
  r.seconds_persistence = seconds_since(t0);
  if (!total) throw PreconditionError("infinite lifetime sum in degree " + std::to_string(d - 1), d - 1, 1);
  r.persistence = *total;

  t0 = Clock::now();
  auto curve = betti_curve<F>(f, d - 1);
  if (curve.final_value() != 0)
    throw PreconditionError("Betti curve does not vanish at the end", d - 1, curve.final_value());
  r.betti_integral = integrate_betti(curve, f.saturation_time());
  r.seconds_betti = seconds_since(t0);

  r.equal = r.persistence == r.msa && r.msa == r.betti_integral;
  return r;
}

// Sum of the gamma_d smallest d-births minus the maximum complement weight.
Time ordered_statistics_bound(const Filtration& f, int d) {
  const auto& x = f.complex();
  const std::size_t g = x.f(d - 1) - boundary_rank<ModP>(x, d - 1);
  std::vector<const Time*> births;
  for (const auto& b : f.births(d)) births.push_back(&b);
  std::size_t take = std::min(g, births.size());
  std::nth_element(births.begin(), births.begin() + take, births.end(),
                   [](const Time* a, const Time* b) { return *a < *b; });
  Time s = 0;
  for (std::size_t i = 0; i < take; ++i) s += *births[i];
  return s - max_complement_weight<ModP>(f, d);
}

double sample_variance(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / double(v.size() - 1);
}

}  // namespace

std::size_t worker_count(std::size_t jobs) {
  std::size_t w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ACYCLE_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) w = std::min<std::size_t>(w, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(1, std::min(w, jobs));
}

void ExperimentConfig::validate() const {
  process.validate();
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (histogram.bins < 1 || !(histogram.range > 0))
    throw std::invalid_argument("experiment: histogram needs bins >= 1 and range > 0");
  if (degree != process.d - 1) throw std::invalid_argument("experiment: degree must equal d - 1");
}

namespace {

VerifyMode parse_verify(const std::string& s) {
  if (s == "none") return VerifyMode::none;
  if (s == "sample") return VerifyMode::sample;
  if (s == "all") return VerifyMode::all;
  throw std::invalid_argument("unknown verify mode '" + s + "'");
}

const char* to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::none: return "none";
    case VerifyMode::sample: return "sample";
    case VerifyMode::all: return "all";
  }
  return "?";
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  const auto& p = j.at("process");
  c.process.kind = parse_process_kind(p.at("kind").get<std::string>());
  c.process.n = p.at("n").get<std::size_t>();
  c.process.d = p.at("d").get<int>();
  c.process.law = parse_birth_law(p.value("law", std::string("uniform")));
  c.process.max_dim = p.value("max_dim", 0);
  c.process.m = p.value("m", std::size_t{0});
  c.degree = j.value("degree", c.process.d - 1);
  c.trials = j.at("trials").get<std::size_t>();
  c.seed = j.value("seed", std::uint64_t{0});
  c.verify = parse_verify(j.value("verify", std::string("sample")));
  if (j.contains("histogram")) {
    c.histogram.bins = j["histogram"].value("bins", c.histogram.bins);
    c.histogram.range = j["histogram"].value("range", c.histogram.range);
  }
  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    c.csv_path = o.value("csv", std::string());
    c.json_path = o.value("json", std::string());
    c.histogram_path = o.value("histogram", std::string());
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"process",
           {{"kind", to_string(c.process.kind)},
            {"n", c.process.n},
            {"d", c.process.d},
            {"law", to_string(c.process.law)},
            {"max_dim", c.process.max_dim},
            {"m", c.process.m}}},
          {"degree", c.degree},
          {"trials", c.trials},
          {"seed", c.seed},
          {"verify", to_string(c.verify)},
          {"histogram", {{"bins", c.histogram.bins}, {"range", c.histogram.range}}},
          {"outputs", {{"csv", c.csv_path}, {"json", c.json_path}, {"histogram", c.histogram_path}}}};
}

double MeanDiagramHistogram::mass() const {
  double m = infinite;
  for (double c : counts) m += c;
  return m;
}

ExperimentResult run_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  const int d = cfg.process.d;
  const std::size_t bins = cfg.histogram.bins;
  const double range = cfg.histogram.range;
  auto t0 = Clock::now();

  struct Slot {
    TrialRecord record;
    std::vector<std::size_t> cells;
    std::size_t infinite = 0;
  };
  std::vector<Slot> slots(cfg.trials);
  auto cell = [&](const Time& t) {
    double x = t.get_d() / range * double(bins);
    return std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, x)));
  };

  ExperimentResult r;
  parallel_for(
      cfg.trials,
      [&](std::size_t i) {
        SeedSpec seed{cfg.seed, i};
        auto f = sample_process(cfg.process, seed);
        auto diagram = compute_persistence<ModP>(f, d - 1);
        auto& slot = slots[i];
        slot.record.trial = i;
        for (const auto& p : diagram.pairs) {
          if (p.infinite()) {
            ++slot.infinite;
            continue;
          }
          ++slot.record.finite_pairs;
          slot.cells.push_back(cell(p.birth) * bins + cell(*p.death));
        }
        auto total = lifetime_sum(diagram);
        if (!total)
          throw PreconditionError("trial " + std::to_string(i) + ": infinite lifetime sum", d - 1,
                                  static_cast<std::int64_t>(slot.infinite));
        slot.record.lifetime = *total;
        slot.record.lower_bound = ordered_statistics_bound(f, d);
        if (slot.record.lifetime < slot.record.lower_bound)
          throw IdentityViolation("trial " + std::to_string(i) + ": lifetime below the ordered-statistics bound",
                                  seed, serialize(f));
        if (selected_for_check(cfg.verify, cfg.seed, i)) {
          // Exact rationals while cheap, otherwise a second prime.
          bool small = f.complex().f(d) <= 400;
          auto rep = small ? verify_with<Rational>(f, d) : verify_with<ModP2>(f, d);
          if (!rep.equal || rep.persistence != slot.record.lifetime)
            throw IdentityViolation("trial " + std::to_string(i) + ": lifetime identity fails: " + to_json(rep).dump(),
                                    seed, serialize(f));
          slot.record.verified = true;
        }
      },
      &r.threads);

  // Deterministic reduction in trial order.
  r.n = cfg.process.n;
  r.d = d;
  r.histogram.bins = bins;
  r.histogram.range = range;
  r.histogram.counts.assign(bins * bins, 0.0);
  std::vector<double> values;
  std::vector<std::size_t> counts(bins * bins, 0);
  std::size_t infinite = 0;
  for (auto& s : slots) {
    r.total += s.record.lifetime;
    values.push_back(s.record.lifetime.get_d());
    for (auto c : s.cells) ++counts[c];
    infinite += s.infinite;
    r.trials.push_back(std::move(s.record));
  }
  const double trials = double(cfg.trials);
  for (std::size_t c = 0; c < counts.size(); ++c) r.histogram.counts[c] = double(counts[c]) / trials;
  r.histogram.infinite = double(infinite) / trials;
  r.mean = Time(r.total / Time(static_cast<long>(cfg.trials))).get_d();
  r.variance = sample_variance(values, r.mean);
  r.stderr_ = std::sqrt(r.variance / trials);
  r.elapsed = seconds_since(t0);

  if (!cfg.csv_path.empty()) {
    std::ofstream out(cfg.csv_path);
    write_trials_csv(out, r);
  }
  if (!cfg.histogram_path.empty()) {
    std::ofstream out(cfg.histogram_path);
    write_histogram_csv(out, r.histogram);
  }
  if (!cfg.json_path.empty()) {
    std::ofstream out(cfg.json_path);
    out << summary_json(cfg, r).dump(2) << '\n';
  }
  return r;
}

void write_trials_csv(std::ostream& out, const ExperimentResult& r) {
  out << "trial,lifetime,lifetime_exact,lower_bound,lower_bound_exact,finite_pairs,verified\n";
  out.precision(17);
  for (const auto& t : r.trials)
    out << t.trial << ',' << t.lifetime.get_d() << ',' << format_time(t.lifetime) << ',' << t.lower_bound.get_d()
        << ',' << format_time(t.lower_bound) << ',' << t.finite_pairs << ',' << (t.verified ? 1 : 0) << '\n';
}

void write_histogram_csv(std::ostream& out, const MeanDiagramHistogram& h) {
  out.precision(17);
  out << "# rows: birth bins, columns: death bins, range [0," << h.range << "], infinite " << h.infinite << '\n';
  for (std::size_t i = 0; i < h.bins; ++i) {
    for (std::size_t j = 0; j < h.bins; ++j) out << (j ? "," : "") << h.counts[i * h.bins + j];
    out << '\n';
  }
}

nlohmann::json summary_json(const ExperimentConfig& cfg, const ExperimentResult& r) {
  std::size_t verified = 0;
  for (const auto& t : r.trials) verified += t.verified;
  return {{"config", to_json(cfg)},
          {"n", r.n},
          {"d", r.d},
          {"trials", r.trials.size()},
          {"mean", r.mean},
          {"mean_exact", format_time(Time(r.total / Time(static_cast<long>(r.trials.size()))))},
          {"variance", r.variance},
          {"stderr", r.stderr_},
          {"verified_trials", verified},
          {"histogram_mass", r.histogram.mass()},
          {"histogram_infinite", r.histogram.infinite},
          {"threads", r.threads},
          {"elapsed_seconds", r.elapsed}};
}

nlohmann::json to_json(const IdentityReport& r) {
  return {{"d", r.d},
          {"backend", to_string(r.backend)},
          {"persistence", format_time(r.persistence)},
          {"msa", format_time(r.msa)},
          {"betti_integral", format_time(r.betti_integral)},
          {"equal", r.equal},
          {"seconds", {{"persistence", r.seconds_persistence}, {"msa", r.seconds_msa}, {"betti", r.seconds_betti}}}};
}

IdentityReport verify_identity(const Filtration& f, int d, Backend backend) {
  if (d < 1 || d > f.complex().dim()) throw std::domain_error("verify_identity: need 1 <= d <= dim X");
  IdentityReport r;
  switch (backend) {
    case Backend::rational: r = verify_with<Rational>(f, d); break;
    case Backend::modp: r = verify_with<ModP>(f, d); break;
    case Backend::modp2: r = verify_with<ModP2>(f, d); break;
  }
  r.backend = backend;
  return r;
}

RhoEstimate estimate_rho(std::size_t n, int d, std::size_t m, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_rho: trials must be >= 1");
  std::vector<Vertex> vs(static_cast<std::size_t>(d) + 1);
  for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<Vertex>(i);
  const Simplex sigma(vs);
  std::vector<char> hit(trials, 0);
  parallel_for(trials, [&](std::size_t i) {
    auto y = uniform_complex(n, d, m, SeedSpec{seed, i});
    if (y.contains(sigma)) return;
    RankOracle<ModP> oracle(y.f(d - 1));
    for (std::size_t j = 0; j < y.f(d); ++j) oracle.try_add(convert_column<ModP>(boundary_column(y, d, j)));
    SparseColumn<Integer> col;
    for (std::size_t j = 0; j < sigma.size(); ++j)
      col.push_back({static_cast<std::uint32_t>(*y.index_of(sigma.facet(j))), (j % 2) ? -1 : 1});
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
    hit[i] = oracle.independent(convert_column<ModP>(col));
  });
  RhoEstimate e;
  e.trials = trials;
  for (char h : hit) e.hits += h;
  e.value = double(e.hits) / double(trials);
  e.half_width = 1.96 * std::sqrt(e.value * (1 - e.value) / double(trials));
  return e;
}

ScalingTable scaling_study(ProcessSpec process, const std::vector<std::size_t>& ns, std::size_t trials,
                           std::uint64_t seed, VerifyMode verify) {
  if (ns.empty()) throw std::invalid_argument("scaling_study: empty n list");
  ScalingTable t;
  t.kind = process.kind;
  t.d = process.d;
  const int d = process.d;
  double fact = 1;
  for (int i = 2; i <= d; ++i) fact *= i;
  // Exponents of the reference bounds: n^lo_exp below, n^hi_exp (log n)^hi_log above.
  double lo_exp = d - 1, hi_exp = d - 1;
  bool hi_log = false;
  if (process.kind == ProcessKind::clique) {
    lo_exp = (d + 2.0) * (d - 1.0) / (2.0 * d);
    hi_log = d <= 2;
  } else {
    t.lower_constant = (d + 1) / (2 * fact);
    t.upper_constant = 8 * (d + 1) / fact;
  }
  for (std::size_t idx = 0; idx < ns.size(); ++idx) {
    ExperimentConfig cfg;
    cfg.process = process;
    cfg.process.n = ns[idx];
    cfg.degree = d - 1;
    cfg.trials = trials;
    cfg.seed = splitmix64(seed ^ ns[idx]);
    cfg.verify = verify;
    auto r = run_trials(cfg);
    const double n = double(ns[idx]);
    ScalingRow row;
    row.n = ns[idx];
    row.trials = trials;
    row.mean = r.mean;
    row.stderr_ = r.stderr_;
    row.per_power = r.mean / std::pow(n, d - 1);
    row.per_nlogn = r.mean / (std::pow(n, d - 1) * std::log(n));
    if (process.kind == ProcessKind::clique && idx == 0) {
      t.lower_constant = 0.5 * r.mean / std::pow(n, lo_exp);
      t.upper_constant = 2.0 * r.mean / (std::pow(n, hi_exp) * (hi_log ? std::log(n) : 1.0));
    }
    row.lower = t.lower_constant * std::pow(n, lo_exp);
    row.upper = t.upper_constant * std::pow(n, hi_exp) * (hi_log ? std::log(n) : 1.0);
    t.rows.push_back(row);
  }
  return t;
}

void write_scaling_csv(std::ostream& out, const ScalingTable& t) {
  out.precision(10);
  out << "n,trials,mean,stderr,mean_per_n^(d-1),mean_per_n^(d-1)logn,lower_bound,upper_bound\n";
  for (const auto& r : t.rows)
    out << r.n << ',' << r.trials << ',' << r.mean << ',' << r.stderr_ << ',' << r.per_power << ',' << r.per_nlogn
        << ',' << r.lower << ',' << r.upper << '\n';
}

}  // namespace acycle
