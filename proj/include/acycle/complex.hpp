#pragma once

// Finite simplicial complexes, filtrations and oriented boundary operators.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "acycle/field.hpp"
#include "acycle/sparse.hpp"

namespace acycle {

using Vertex = std::uint32_t;

/// Raised when an input violates the structural contract of a complex or
/// filtration (not closed, unsorted vertices, non-monotone births, ...).
class ComplexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An oriented simplex <v0 ... vk> with strictly increasing vertex ids.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(std::vector<Vertex> vertices);
  Simplex(std::initializer_list<Vertex> vertices);

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const { return vertices_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  Vertex back() const { return vertices_.back(); }

  /// The facet obtained by deleting the j-th vertex; it carries sign (-1)^j
  /// in the boundary of this simplex.
  Simplex facet(std::size_t j) const;
  /// This simplex with one extra vertex inserted in order.
  Simplex with_vertex(Vertex v) const;
  bool contains(const Simplex& other) const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  /// Lexicographic order on the vertex sequence.
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::vector<Vertex> vertices_;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

std::ostream& operator<<(std::ostream& out, const Simplex& s);

/// A finite, downward-closed family of simplices on vertices 0..n-1.
class SimplicialComplex {
 public:
  /// Validates downward closure and presence of every vertex; throws
  /// ComplexError otherwise. Duplicates are rejected.
  SimplicialComplex(std::size_t n_vertices, std::vector<Simplex> simplices);

  /// Downward closure of the given simplices together with all n vertices.
  static SimplicialComplex closure(std::size_t n_vertices, const std::vector<Simplex>& generators);

  std::size_t n_vertices() const { return n_vertices_; }
  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

  /// k-simplices in lexicographic order; empty for k outside [0, dim].
  const std::vector<Simplex>& simplices(int k) const;
  std::size_t f(int k) const { return simplices(k).size(); }
  std::vector<std::size_t> f_vector() const;

  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }

  /// The k-skeleton X^(k).
  SimplicialComplex skeleton(int k) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.n_vertices_ == b.n_vertices_ && a.by_dim_ == b.by_dim_;
  }

 private:
  SimplicialComplex() = default;
  void build_index();

  std::size_t n_vertices_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
};

/// The k-skeleton of the full simplex on n vertices. Requires 0 <= k <= n-1.
SimplicialComplex build_skeleton(std::size_t n, int k);

/// A simplicial complex together with a monotone birth time per simplex.
class Filtration {
 public:
  /// births[k][i] is the birth of complex.simplices(k)[i]. Throws
  /// ComplexError on shape mismatch, negative times or a face born after
  /// one of its cofaces.
  Filtration(SimplicialComplex complex, std::vector<std::vector<Time>> births);

  /// Builds the complex from an explicit (simplex, birth) list.
  static Filtration from_list(std::size_t n_vertices,
                              const std::vector<std::pair<Simplex, Time>>& entries);

  const SimplicialComplex& complex() const { return complex_; }
  const Time& birth(int k, std::size_t i) const { return births_[k][i]; }
  const Time& birth(const Simplex& s) const;
  const std::vector<Time>& births(int k) const { return births_[k]; }
  Time saturation_time() const;
  /// X(t): simplices born at or before t. Every vertex must be born by t.
  SimplicialComplex sublevel(const Time& t) const;

  friend bool operator==(const Filtration& a, const Filtration& b) {
    return a.complex_ == b.complex_ && a.births_ == b.births_;
  }

 private:
  SimplicialComplex complex_;
  std::vector<std::vector<Time>> births_;
};

/// One simplex of a filtration, identified by (dimension, lex index).
struct Event {
  const Time* time;
  int dim;
  std::size_t index;
};

/// Simplices of dimension <= max_dim sorted by (birth, dimension, lex).
/// Faces never follow their cofaces.
std::vector<Event> filtration_events(const Filtration& f, int max_dim);

/// Oriented boundary operator d_k with rows indexed by the (k-1)-simplices
/// and columns by the k-simplices of the complex, both in lex order.
struct BoundaryMatrix {
  int degree;
  SparseColumnMatrix<Integer> matrix;
};

/// Requires 1 <= k <= dim X.
BoundaryMatrix boundary_matrix(const SimplicialComplex& x, int k);

/// Boundary column of the i-th k-simplex, sorted by row. For k = 0 this is
/// the augmentation (a single 1 in row 0), which realises reduced homology.
SparseColumn<Integer> boundary_column(const SimplicialComplex& x, int k, std::size_t i);

/// Column of the augmented operator; k = 0 gives a 1x f_0 matrix of ones.
SparseColumnMatrix<Integer> reduced_boundary(const SimplicialComplex& x, int k);

/// Row count of the augmented k-th boundary operator (1 for k = 0).
std::size_t reduced_boundary_rows(const SimplicialComplex& x, int k);

// Text format: one simplex per line, "v0 v1 ... vk p/q"; '#' starts a comment.
Filtration read_filtration(std::istream& in);
void write_filtration(std::ostream& out, const Filtration& f);

}  // namespace acycle
