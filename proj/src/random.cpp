#include "acycle/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace acycle {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t SeedSpec::stream() const { return splitmix64(master ^ splitmix64(trial ^ 0x5851f42d4c957f2dull)); }

std::uint64_t CounterRng::next() {
  std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("CounterRng::below: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    auto x = next();
    if (x < limit) return x % bound;
  }
}

Time CounterRng::dyadic_uniform() {
  mpz_class num(static_cast<unsigned long>(next_u32()));
  mpz_class den = mpz_class(1) << 32;
  Time t(num, den);
  t.canonicalize();
  return t;
}

double CounterRng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

Time draw_birth(CounterRng& rng, BirthLaw law) {
  if (law == BirthLaw::uniform) return rng.dyadic_uniform();
  // Exact rational image of the double -log(1 - u).
  return Time(-std::log1p(-rng.uniform01()));
}

}  // namespace

const char* to_string(BirthLaw law) { return law == BirthLaw::uniform ? "uniform" : "exponential"; }

const char* to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::linial_meshulam: return "linial-meshulam";
    case ProcessKind::clique: return "clique";
    case ProcessKind::uniform_complex: return "uniform-complex";
  }
  return "?";
}

BirthLaw parse_birth_law(const std::string& s) {
  if (s == "uniform") return BirthLaw::uniform;
  if (s == "exponential") return BirthLaw::exponential;
  throw std::invalid_argument("unknown birth law '" + s + "'");
}

ProcessKind parse_process_kind(const std::string& s) {
  if (s == "linial-meshulam" || s == "lm") return ProcessKind::linial_meshulam;
  if (s == "clique") return ProcessKind::clique;
  if (s == "uniform-complex" || s == "uniform") return ProcessKind::uniform_complex;
  throw std::invalid_argument("unknown process kind '" + s + "'");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

void ProcessSpec::validate() const {
  if (d < 1 || n < 2 || static_cast<std::size_t>(d) > n - 1)
    throw std::invalid_argument("process: need 1 <= d <= n-1");
  if (kind == ProcessKind::uniform_complex && m > binomial(n, static_cast<std::uint64_t>(d) + 1))
    throw std::invalid_argument("process: m exceeds C(n, d+1)");
  if (kind == ProcessKind::clique && max_dim < 0) throw std::invalid_argument("process: negative max_dim");
}

Filtration lm_process(std::size_t n, int d, const SeedSpec& seed, BirthLaw law) {
  if (d < 1 || n < 2 || static_cast<std::size_t>(d) > n - 1)
    throw std::invalid_argument("lm_process: need 1 <= d <= n-1");
  auto x = build_skeleton(n, d);
  CounterRng rng(seed);
  std::vector<std::vector<Time>> births(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k < d; ++k) births[k].assign(x.f(k), Time(0));
  births[d].reserve(x.f(d));
  for (std::size_t i = 0; i < x.f(d); ++i) births[d].push_back(draw_birth(rng, law));
  return Filtration(std::move(x), std::move(births));
}

Filtration clique_process(std::size_t n, const SeedSpec& seed, int max_dim, BirthLaw law) {
  if (max_dim < 1 || n < 2) throw std::invalid_argument("clique_process: need max_dim >= 1 and n >= 2");
  int top = std::min<int>(max_dim, static_cast<int>(n) - 1);
  auto x = build_skeleton(n, top);
  CounterRng rng(seed);
  std::vector<std::vector<Time>> births(static_cast<std::size_t>(top) + 1);
  births[0].assign(n, Time(0));
  births[1].reserve(x.f(1));
  for (std::size_t i = 0; i < x.f(1); ++i) births[1].push_back(draw_birth(rng, law));
  for (int k = 2; k <= top; ++k) {
    const auto& layer = x.simplices(k);
    births[k].resize(layer.size());
    for (std::size_t i = 0; i < layer.size(); ++i) {
      // The latest facet carries the latest edge.
      const Time* latest = nullptr;
      for (std::size_t j = 0; j < layer[i].size(); ++j) {
        const Time& b = births[k - 1][*x.index_of(layer[i].facet(j))];
        if (!latest || b > *latest) latest = &b;
      }
      births[k][i] = *latest;
    }
  }
  return Filtration(std::move(x), std::move(births));
}

Simplex unrank_simplex(std::size_t n, int k, std::uint64_t r) {
  std::vector<Vertex> vs;
  std::size_t remaining = static_cast<std::size_t>(k) + 1;
  Vertex v = 0;
  while (remaining > 0) {
    std::uint64_t count = binomial(n - v - 1, remaining - 1);
    if (r < count) {
      vs.push_back(v);
      --remaining;
    } else {
      r -= count;
    }
    ++v;
  }
  return Simplex(std::move(vs));
}

SimplicialComplex uniform_complex(std::size_t n, int d, std::size_t m, const SeedSpec& seed) {
  if (d < 1 || n < 2 || static_cast<std::size_t>(d) > n - 1)
    throw std::invalid_argument("uniform_complex: need 1 <= d <= n-1");
  const std::uint64_t total = binomial(n, static_cast<std::uint64_t>(d) + 1);
  if (m > total) throw std::invalid_argument("uniform_complex: m exceeds C(n, d+1)");
  // Partial Fisher-Yates over the index space; only touched slots are stored.
  CounterRng rng(seed);
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto slot = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::uint64_t> chosen;
  chosen.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t j = i + rng.below(total - i);
    std::uint64_t vi = slot(i), vj = slot(j);
    swapped[j] = vi;
    swapped[i] = vj;
    chosen.push_back(vj);
  }
  std::sort(chosen.begin(), chosen.end());
  auto base = build_skeleton(n, d - 1);
  std::vector<Simplex> all;
  for (int k = 0; k < d; ++k) all.insert(all.end(), base.simplices(k).begin(), base.simplices(k).end());
  for (auto r : chosen) all.push_back(unrank_simplex(n, d, r));
  return SimplicialComplex(n, std::move(all));
}

Filtration sample_process(const ProcessSpec& spec, const SeedSpec& seed) {
  spec.validate();
  switch (spec.kind) {
    case ProcessKind::linial_meshulam: return lm_process(spec.n, spec.d, seed, spec.law);
    case ProcessKind::clique: return clique_process(spec.n, seed, spec.max_dim ? spec.max_dim : spec.d + 1, spec.law);
    case ProcessKind::uniform_complex: {
      auto y = uniform_complex(spec.n, spec.d, spec.m, seed);
      std::vector<std::vector<Time>> births(static_cast<std::size_t>(y.dim()) + 1);
      for (int k = 0; k <= y.dim(); ++k) births[k].assign(y.f(k), Time(0));
      return Filtration(std::move(y), std::move(births));
    }
  }
  throw std::logic_error("unreachable process kind");
}

}  // namespace acycle
