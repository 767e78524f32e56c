#pragma once

// Seeded Monte Carlo over the random processes: lifetime sums, mean
// diagram histograms, identity verification, rho estimates and scaling
// tables.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "acycle/complex.hpp"
#include "acycle/persistence.hpp"
#include "acycle/random.hpp"

namespace acycle {

/// The lifetime identity failed on a concrete sample. Always a bug.
class IdentityViolation : public std::runtime_error {
 public:
  IdentityViolation(const std::string& what, SeedSpec seed, std::string filtration)
      : std::runtime_error(what), seed_(seed), filtration_(std::move(filtration)) {}
  const SeedSpec& seed() const { return seed_; }
  /// The offending filtration in the text format.
  const std::string& filtration() const { return filtration_; }

 private:
  SeedSpec seed_;
  std::string filtration_;
};

enum class VerifyMode { none, sample, all };

struct HistogramSpec {
  std::size_t bins = 20;
  double range = 1.0;
};

struct ExperimentConfig {
  ProcessSpec process;
  int degree = 0;  ///< d - 1
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  VerifyMode verify = VerifyMode::sample;
  HistogramSpec histogram;
  std::string csv_path, json_path, histogram_path;  ///< empty: not written

  /// Throws std::invalid_argument.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

/// Mean diagram over [0, T]^2 on a B x B grid, rows by birth. Coordinates
/// beyond T land in the last bin.
struct MeanDiagramHistogram {
  std::size_t bins = 0;
  double range = 0;
  std::vector<double> counts;  ///< row-major, averaged over trials
  double infinite = 0;         ///< average count of essential classes

  double mass() const;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  Time lifetime;
  Time lower_bound;  ///< gamma_d smallest d-births minus max complement weight
  std::size_t finite_pairs = 0;
  bool verified = false;
};

struct ExperimentResult {
  std::size_t n = 0;
  int d = 1;
  std::vector<TrialRecord> trials;
  Time total;  ///< exact sum over trials
  double mean = 0, variance = 0, stderr_ = 0;
  double elapsed = 0;  ///< seconds
  std::size_t threads = 1;
  MeanDiagramHistogram histogram;
};

/// Threads used: min(hardware threads, trials, ACYCLE_THREADS when set).
std::size_t worker_count(std::size_t jobs);

/// Runs every trial, optionally verifying the identity. Throws
/// IdentityViolation carrying the seed of the first failing trial.
ExperimentResult run_trials(const ExperimentConfig& cfg);

void write_trials_csv(std::ostream& out, const ExperimentResult& r);
void write_histogram_csv(std::ostream& out, const MeanDiagramHistogram& h);
nlohmann::json summary_json(const ExperimentConfig& cfg, const ExperimentResult& r);

struct IdentityReport {
  int d = 1;
  Backend backend = Backend::rational;
  Time persistence, msa, betti_integral;
  double seconds_persistence = 0, seconds_msa = 0, seconds_betti = 0;
  bool equal = false;
};

nlohmann::json to_json(const IdentityReport& r);

/// L_{d-1} by the diagram, by the spanning acycle formula and by the
/// integrated Betti curve. Throws PreconditionError when the hypotheses
/// fail.
IdentityReport verify_identity(const Filtration& f, int d, Backend backend = Backend::rational);

struct RhoEstimate {
  double value = 0;
  double half_width = 0;  ///< 95% normal approximation
  std::size_t hits = 0, trials = 0;
};

/// Fraction of Y^(d)(n, m) samples in which {0, ..., d} lies in R_d(Y).
RhoEstimate estimate_rho(std::size_t n, int d, std::size_t m, std::size_t trials, std::uint64_t seed);

struct ScalingRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean = 0, stderr_ = 0;
  double per_power = 0;   ///< mean / n^(d-1)
  double per_nlogn = 0;   ///< mean / (n^(d-1) log n)
  double lower = 0, upper = 0;  ///< reference bounds at this n
};

struct ScalingTable {
  ProcessKind kind = ProcessKind::linial_meshulam;
  int d = 1;
  double lower_constant = 0, upper_constant = 0;
  std::vector<ScalingRow> rows;
};

/// Runs `trials` per n. For the LM process the bound columns are the
/// proof constants (d+1)/(2 d!) and 8(d+1)/d! times n^(d-1); for the
/// clique process the constants are fitted at the first n (half the
/// normalised mean below, twice it above).
ScalingTable scaling_study(ProcessSpec process, const std::vector<std::size_t>& ns, std::size_t trials,
                           std::uint64_t seed, VerifyMode verify = VerifyMode::none);

void write_scaling_csv(std::ostream& out, const ScalingTable& t);

}  // namespace acycle
