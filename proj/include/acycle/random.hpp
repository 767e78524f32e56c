#pragma once

// Seeded samplers for the Linial-Meshulam process, the clique complex
// process and the uniform model Y^(d)(n, m).

#include <cstddef>
#include <cstdint>
#include <string>

#include "acycle/complex.hpp"
#include "acycle/field.hpp"

namespace acycle {

/// Identifies one reproducible random stream: the same (master, trial)
/// always yields the same sample, independent of scheduling.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t trial = 0;

  /// Stream key derived by hashing (master, trial).
  std::uint64_t stream() const;
};

/// Counter-based generator: output i is a SplitMix64 finaliser applied to
/// key + i * golden-gamma, so streams can be split by key without state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  explicit CounterRng(const SeedSpec& seed) : key_(seed.stream()) {}

  std::uint64_t next();
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next() >> 32); }
  /// Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);
  /// k / 2^32 with k uniform in {0, ..., 2^32 - 1}.
  Time dyadic_uniform();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

enum class BirthLaw { uniform, exponential };
enum class ProcessKind { linial_meshulam, clique, uniform_complex };

const char* to_string(BirthLaw law);
const char* to_string(ProcessKind kind);
BirthLaw parse_birth_law(const std::string& s);
ProcessKind parse_process_kind(const std::string& s);

struct ProcessSpec {
  ProcessKind kind = ProcessKind::linial_meshulam;
  std::size_t n = 0;
  int d = 1;
  BirthLaw law = BirthLaw::uniform;
  int max_dim = 0;  ///< clique truncation; 0 means d + 1
  std::size_t m = 0;  ///< uniform model size

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
};

/// Complete (d-1)-skeleton born at 0; every d-simplex gets an independent
/// birth time. Requires 1 <= d <= n-1.
Filtration lm_process(std::size_t n, int d, const SeedSpec& seed, BirthLaw law = BirthLaw::uniform);

/// Flag complex of the random graph process truncated at max_dim: each
/// simplex is born at the largest birth time among its edges.
Filtration clique_process(std::size_t n, const SeedSpec& seed, int max_dim, BirthLaw law = BirthLaw::uniform);

/// Complete (d-1)-skeleton plus a uniformly random m-subset of d-simplices.
SimplicialComplex uniform_complex(std::size_t n, int d, std::size_t m, const SeedSpec& seed);

/// Uniform complexes as a filtration with every simplex born at 0.
Filtration sample_process(const ProcessSpec& spec, const SeedSpec& seed);

/// C(n, k) in 64 bits; throws std::overflow_error when it does not fit.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The simplex of rank r in the lexicographic order of (k+1)-subsets of
/// {0, ..., n-1}.
Simplex unrank_simplex(std::size_t n, int k, std::uint64_t r);

}  // namespace acycle
