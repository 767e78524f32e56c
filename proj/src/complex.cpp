#include "acycle/complex.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace acycle {

Time parse_time(const std::string& text) {
  Time t;
  if (text.empty() || t.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: '" + text + "'");
  if (text.find('/') != std::string::npos && sgn(t.get_den()) == 0)
    throw std::invalid_argument("zero denominator: '" + text + "'");
  t.canonicalize();
  return t;
}

std::string format_time(const Time& t) {
  return t.get_den() == 1 ? t.get_num().get_str() : t.get_str();
}

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ComplexError("simplex must have at least one vertex");
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    if (vertices_[i] <= vertices_[i - 1]) throw ComplexError("simplex vertices must be strictly increasing");
}

Simplex::Simplex(std::initializer_list<Vertex> vertices) : Simplex(std::vector<Vertex>(vertices)) {}

Simplex Simplex::facet(std::size_t j) const {
  Simplex out;
  out.vertices_.reserve(vertices_.size() - 1);
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (i != j) out.vertices_.push_back(vertices_[i]);
  return out;
}

Simplex Simplex::with_vertex(Vertex v) const {
  Simplex out;
  out.vertices_ = vertices_;
  auto it = std::lower_bound(out.vertices_.begin(), out.vertices_.end(), v);
  if (it != out.vertices_.end() && *it == v) throw ComplexError("vertex already in simplex");
  out.vertices_.insert(it, v);
  return out;
}

bool Simplex::contains(const Simplex& other) const {
  return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end());
}

std::size_t SimplexHash::operator()(const Simplex& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto v : s.vertices()) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::ostream& operator<<(std::ostream& out, const Simplex& s) {
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? "," : "") << s[i];
  return out << '}';
}

// ------------------------------------------------------ SimplicialComplex

SimplicialComplex::SimplicialComplex(std::size_t n_vertices, std::vector<Simplex> simplices)
    : n_vertices_(n_vertices) {
  if (n_vertices == 0) throw ComplexError("complex must have at least one vertex");
  int top = 0;
  for (const auto& s : simplices) {
    if (s.back() >= n_vertices) throw ComplexError("vertex id out of range");
    top = std::max(top, s.dim());
  }
  by_dim_.assign(static_cast<std::size_t>(top) + 1, {});
  for (auto& s : simplices) by_dim_[static_cast<std::size_t>(s.dim())].push_back(std::move(s));
  for (auto& layer : by_dim_) {
    std::sort(layer.begin(), layer.end());
    if (std::adjacent_find(layer.begin(), layer.end()) != layer.end())
      throw ComplexError("duplicate simplex");
  }
  if (by_dim_[0].size() != n_vertices) throw ComplexError("every vertex 0..n-1 must be present");
  for (std::size_t k = 1; k < by_dim_.size(); ++k)
    if (by_dim_[k].empty()) throw ComplexError("dimension gap in complex");
  build_index();
  for (std::size_t k = 1; k < by_dim_.size(); ++k)
    for (const auto& s : by_dim_[k])
      for (std::size_t j = 0; j <= k; ++j)
        if (!index_[k - 1].count(s.facet(j))) throw ComplexError("complex is not closed under faces");
}

void SimplicialComplex::build_index() {
  index_.assign(by_dim_.size(), {});
  for (std::size_t k = 0; k < by_dim_.size(); ++k) {
    index_[k].reserve(by_dim_[k].size());
    for (std::size_t i = 0; i < by_dim_[k].size(); ++i) index_[k].emplace(by_dim_[k][i], i);
  }
}

SimplicialComplex SimplicialComplex::closure(std::size_t n_vertices, const std::vector<Simplex>& generators) {
  std::vector<std::set<Simplex>> layers(1);
  for (Vertex v = 0; v < n_vertices; ++v) layers[0].insert(Simplex{v});
  std::vector<Simplex> frontier = generators;
  while (!frontier.empty()) {
    Simplex s = std::move(frontier.back());
    frontier.pop_back();
    auto k = static_cast<std::size_t>(s.dim());
    if (layers.size() <= k) layers.resize(k + 1);
    if (!layers[k].insert(s).second) continue;
    if (k > 0)
      for (std::size_t j = 0; j <= k; ++j) frontier.push_back(s.facet(j));
  }
  std::vector<Simplex> all;
  for (auto& layer : layers) all.insert(all.end(), layer.begin(), layer.end());
  return SimplicialComplex(n_vertices, std::move(all));
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  static const std::vector<Simplex> empty;
  if (k < 0 || k > dim()) return empty;
  return by_dim_[static_cast<std::size_t>(k)];
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& layer : by_dim_) f.push_back(layer.size());
  return f;
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  auto k = s.dim();
  if (k < 0 || k > dim()) return std::nullopt;
  const auto& idx = index_[static_cast<std::size_t>(k)];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

SimplicialComplex SimplicialComplex::skeleton(int k) const {
  if (k < 0) throw std::domain_error("skeleton: negative dimension");
  SimplicialComplex out;
  out.n_vertices_ = n_vertices_;
  out.by_dim_.assign(by_dim_.begin(), by_dim_.begin() + std::min<std::ptrdiff_t>(k + 1, by_dim_.size()));
  out.index_.assign(index_.begin(), index_.begin() + static_cast<std::ptrdiff_t>(out.by_dim_.size()));
  return out;
}

namespace {

void combinations(std::size_t n, std::size_t r, std::vector<Vertex>& current, Vertex start,
                  std::vector<Simplex>& out) {
  if (current.size() == r) {
    out.emplace_back(current);
    return;
  }
  for (Vertex v = start; v + (r - current.size()) <= n; ++v) {
    current.push_back(v);
    combinations(n, r, current, v + 1, out);
    current.pop_back();
  }
}

}  // namespace

SimplicialComplex build_skeleton(std::size_t n, int k) {
  if (n == 0 || k < 0 || static_cast<std::size_t>(k) > n - 1)
    throw std::domain_error("build_skeleton: need 0 <= k <= n-1");
  std::vector<Simplex> all;
  std::vector<Vertex> current;
  for (int j = 0; j <= k; ++j) combinations(n, static_cast<std::size_t>(j) + 1, current, 0, all);
  return SimplicialComplex(n, std::move(all));
}

// -------------------------------------------------------------- Filtration

Filtration::Filtration(SimplicialComplex complex, std::vector<std::vector<Time>> births)
    : complex_(std::move(complex)), births_(std::move(births)) {
  if (births_.size() != static_cast<std::size_t>(complex_.dim() + 1))
    throw ComplexError("filtration: birth table does not match complex dimension");
  for (int k = 0; k <= complex_.dim(); ++k) {
    const auto& layer = complex_.simplices(k);
    if (births_[k].size() != layer.size()) throw ComplexError("filtration: birth table size mismatch");
    for (std::size_t i = 0; i < layer.size(); ++i) {
      births_[k][i].canonicalize();
      if (sgn(births_[k][i]) < 0) throw ComplexError("filtration: negative birth time");
      if (k == 0) continue;
      for (std::size_t j = 0; j <= static_cast<std::size_t>(k); ++j) {
        auto face = *complex_.index_of(layer[i].facet(j));
        if (births_[k - 1][face] > births_[k][i])
          throw ComplexError("filtration: face born after coface");
      }
    }
  }
}

Filtration Filtration::from_list(std::size_t n_vertices, const std::vector<std::pair<Simplex, Time>>& entries) {
  std::vector<Simplex> simplices;
  simplices.reserve(entries.size());
  for (const auto& [s, t] : entries) simplices.push_back(s);
  SimplicialComplex x(n_vertices, std::move(simplices));
  std::vector<std::vector<Time>> births(static_cast<std::size_t>(x.dim() + 1));
  for (int k = 0; k <= x.dim(); ++k) births[k].resize(x.f(k));
  for (const auto& [s, t] : entries) births[s.dim()][*x.index_of(s)] = t;
  return Filtration(std::move(x), std::move(births));
}

const Time& Filtration::birth(const Simplex& s) const {
  auto i = complex_.index_of(s);
  if (!i) throw std::out_of_range("filtration: simplex not in complex");
  return births_[s.dim()][*i];
}

Time Filtration::saturation_time() const {
  Time t = 0;
  for (const auto& layer : births_)
    for (const auto& b : layer)
      if (b > t) t = b;
  return t;
}

SimplicialComplex Filtration::sublevel(const Time& t) const {
  std::vector<Simplex> kept;
  for (int k = 0; k <= complex_.dim(); ++k)
    for (std::size_t i = 0; i < complex_.f(k); ++i)
      if (births_[k][i] <= t) kept.push_back(complex_.simplices(k)[i]);
  return SimplicialComplex(complex_.n_vertices(), std::move(kept));
}

std::vector<Event> filtration_events(const Filtration& f, int max_dim) {
  const auto& x = f.complex();
  std::vector<Event> events;
  for (int k = 0; k <= std::min(max_dim, x.dim()); ++k)
    for (std::size_t i = 0; i < x.f(k); ++i) events.push_back({&f.birth(k, i), k, i});
  std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    int c = cmp(*a.time, *b.time);
    if (c != 0) return c < 0;
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.index < b.index;  // lex order within a dimension
  });
  return events;
}

// ---------------------------------------------------------------- Boundary

SparseColumn<Integer> boundary_column(const SimplicialComplex& x, int k, std::size_t i) {
  if (k == 0) return {{0, 1}};
  const auto& s = x.simplices(k).at(i);
  SparseColumn<Integer> col;
  col.reserve(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto row = *x.index_of(s.facet(j));
    col.push_back({static_cast<std::uint32_t>(row), (j % 2 == 0) ? 1 : -1});
  }
  std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  return col;
}

std::size_t reduced_boundary_rows(const SimplicialComplex& x, int k) { return k == 0 ? 1 : x.f(k - 1); }

SparseColumnMatrix<Integer> reduced_boundary(const SimplicialComplex& x, int k) {
  if (k < 0 || k > x.dim()) throw std::domain_error("boundary: degree out of range");
  SparseColumnMatrix<Integer> m(reduced_boundary_rows(x, k));
  for (std::size_t i = 0; i < x.f(k); ++i) m.push_back(boundary_column(x, k, i));
  return m;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& x, int k) {
  if (k < 1 || k > x.dim()) throw std::domain_error("boundary_matrix: need 1 <= k <= dim X");
  return {k, reduced_boundary(x, k)};
}

// --------------------------------------------------------------------- I/O

Filtration read_filtration(std::istream& in) {
  std::vector<std::pair<Simplex, Time>> entries;
  std::string line;
  std::size_t lineno = 0;
  Vertex max_vertex = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw ComplexError("line " + std::to_string(lineno) + ": expected vertices and a time");
    std::vector<Vertex> vs;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tokens[i], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tokens[i].size() || tokens[i][0] == '-')
        throw ComplexError("line " + std::to_string(lineno) + ": bad vertex '" + tokens[i] + "'");
      vs.push_back(static_cast<Vertex>(v));
      max_vertex = std::max(max_vertex, vs.back());
    }
    Time t;
    try {
      t = parse_time(tokens.back());
    } catch (const std::invalid_argument& e) {
      throw ComplexError("line " + std::to_string(lineno) + ": " + e.what());
    }
    entries.emplace_back(Simplex(std::move(vs)), std::move(t));
  }
  if (entries.empty()) throw ComplexError("empty filtration file");
  return Filtration::from_list(static_cast<std::size_t>(max_vertex) + 1, entries);
}

void write_filtration(std::ostream& out, const Filtration& f) {
  const auto& x = f.complex();
  out << "# n_vertices " << x.n_vertices() << " dim " << x.dim() << '\n';
  for (int k = 0; k <= x.dim(); ++k) {
    const auto& layer = x.simplices(k);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      for (auto v : layer[i].vertices()) out << v << ' ';
      out << format_time(f.birth(k, i)) << '\n';
    }
  }
}

}  // namespace acycle
