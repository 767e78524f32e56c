#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "acycle/complex.hpp"
#include "acycle/random.hpp"
#include "acycle/sparse.hpp"
#include "oracles.hpp"

using namespace acycle;

namespace {

SparseColumnMatrix<Integer> from_rows(const std::vector<std::vector<long>>& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  SparseColumnMatrix<Integer> m(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    SparseColumn<Integer> c;
    for (std::size_t i = 0; i < rows; ++i)
      if (a[i][j]) c.push_back({static_cast<std::uint32_t>(i), a[i][j]});
    m.push_back(c);
  }
  return m;
}

oracle::Dense dense_q(const SparseColumnMatrix<Integer>& m) {
  oracle::Dense a(m.rows(), std::vector<mpq_class>(m.cols(), 0));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) a[e.row][j] = static_cast<long>(e.value);
  return a;
}

std::vector<std::vector<long>> random_int_matrix(CounterRng& rng, std::size_t r, std::size_t c, long span,
                                                 double density) {
  std::vector<std::vector<long>> a(r, std::vector<long>(c, 0));
  for (auto& row : a)
    for (auto& v : row)
      if (rng.uniform01() < density) v = static_cast<long>(rng.below(2 * span + 1)) - span;
  return a;
}

SparseColumn<Integer> unit(std::uint32_t i) { return {{i, 1}}; }

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(convert<Rational>(SparseColumnMatrix<Integer>(3))) == 0);
  CHECK(rank(convert<Rational>(from_rows({{0, 0}, {0, 0}}))) == 0);
  auto path = SimplicialComplex::closure(3, {Simplex{0, 1}, Simplex{1, 2}});
  CHECK(rank(convert<Rational>(boundary_matrix(path, 1).matrix)) == 2);
  auto d2 = boundary_matrix(build_skeleton(5, 2), 2).matrix;
  CHECK(rank(convert<Rational>(d2)) == 6);
  CHECK(rank(convert<ModP>(d2)) == 6);
  CHECK(rational_rank(d2) == 6);
  CHECK(oracle::rank_q(dense_q(d2)) == 6);
}

TEST_CASE("rank oracle") {
  RankOracle<Rational> o(3);
  CHECK(o.try_add(convert_column<Rational>(unit(0))));
  CHECK_FALSE(o.try_add(convert_column<Rational>(unit(0))));
  CHECK_FALSE(o.try_add({}));
  CHECK(o.accepted() == 1);
  CHECK_THROWS_AS(o.try_add(convert_column<Rational>(unit(5))), std::out_of_range);

  // Tetrahedron faces in lex order: 012, 013, 023, 123.
  auto x = build_skeleton(4, 2);
  RankOracle<Rational> t(x.f(1));
  std::vector<bool> got;
  for (std::size_t i = 0; i < 4; ++i) got.push_back(t.try_add(convert_column<Rational>(boundary_column(x, 2, i))));
  CHECK(got == std::vector<bool>{true, true, true, false});

  // A probe leaves the oracle untouched.
  RankOracle<ModP> p(x.f(1));
  p.try_add(convert_column<ModP>(boundary_column(x, 2, 0)));
  CHECK(p.independent(convert_column<ModP>(boundary_column(x, 2, 1))));
  CHECK(p.accepted() == 1);

  RankOracle<Rational> capped(x.f(1), 1);
  CHECK(capped.try_add(convert_column<Rational>(boundary_column(x, 2, 0))));
  CHECK(capped.saturated());
  CHECK_FALSE(capped.try_add(convert_column<Rational>(boundary_column(x, 2, 1))));
}

TEST_CASE("sparse column validation") {
  SparseColumnMatrix<Integer> m(2);
  CHECK_THROWS_AS(m.push_back({{2, 1}}), std::out_of_range);
  CHECK_THROWS_AS(m.push_back({{1, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(m.push_back({{0, 0}}), std::invalid_argument);
}

TEST_CASE("random ranks against elimination oracles") {
  CounterRng rng(SeedSpec{7, 0});
  for (int it = 0; it < 60; ++it) {
    std::size_t r = 1 + rng.below(9), c = 1 + rng.below(9);
    auto a = random_int_matrix(rng, r, c, 3, 0.4);
    auto m = from_rows(a);
    auto want = oracle::rank_q(dense_q(m));
    CHECK(rank(convert<Rational>(m)) == want);
    CHECK(rational_rank(m) == want);
    CHECK(rank(convert<ModP>(m)) <= want);
    std::vector<std::vector<std::int64_t>> a64(r, std::vector<std::int64_t>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a64[i][j] = a[i][j];
    CHECK(rank(convert<ModP>(m)) == oracle::rank_mod(a64, ModP::modulus));
    CHECK(rank(convert<ModP2>(m)) == oracle::rank_mod(a64, ModP2::modulus));

    // Streaming acceptance count equals the rank of everything fed in.
    RankOracle<Rational> o(r);
    std::size_t accepted = 0;
    for (std::size_t j = 0; j < c; ++j) accepted += o.try_add(convert_column<Rational>(m.column(j)));
    CHECK(accepted == want);
  }
}

TEST_CASE("rational rank survives 64-bit overflow") {
  // Entries near 2^40 make fraction-free products overflow int64.
  const long big = 1L << 40;
  auto m = from_rows({{big, big + 1, 3}, {big - 1, big, 5}, {7, big + 3, big}});
  CHECK(rational_rank(m) == oracle::rank_q(dense_q(m)));
  auto singular = from_rows({{big, 2 * big, 1}, {big + 1, 2 * big + 2, 1}, {3, 6, 0}});
  CHECK(rational_rank(singular) == oracle::rank_q(dense_q(singular)));
}

TEST_CASE("modular and rational ranks agree on boundary matrices") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    auto f = clique_process(10, SeedSpec{99, t}, 3);
    auto y = f.sublevel(Time(1, 2));
    for (int k = 1; k <= y.dim(); ++k) {
      auto m = boundary_matrix(y, k).matrix;
      CHECK(rank(convert<ModP>(m)) == rational_rank(m));
    }
  }
}

TEST_CASE("smith normal form") {
  auto s = smith_normal_form(from_rows({{2, 0}, {0, 4}}));
  CHECK(s.divisors == std::vector<mpz_class>{2, 4});
  CHECK(s.product() == 8);
  auto tri = SimplicialComplex::closure(3, {Simplex{0, 1}, Simplex{0, 2}, Simplex{1, 2}});
  CHECK(smith_normal_form(boundary_matrix(tri, 1).matrix).divisors == std::vector<mpz_class>{1, 1});
  CHECK(smith_normal_form(from_rows({{4, 6}, {6, 9}})).divisors == std::vector<mpz_class>{1});
  CHECK(smith_normal_form(SparseColumnMatrix<Integer>(2)).rank() == 0);

  // The projective plane: d_2 has elementary divisors 1,...,1,2.
  std::vector<Simplex> tris;
  for (const auto& t : oracle::rp2_triangles())
    tris.push_back(Simplex{static_cast<Vertex>(t[0]), static_cast<Vertex>(t[1]), static_cast<Vertex>(t[2])});
  auto rp2 = SimplicialComplex::closure(6, tris);
  auto snf = smith_normal_form(boundary_matrix(rp2, 2).matrix);
  CHECK(snf.rank() == 10);
  CHECK(snf.divisors.back() == 2);
  CHECK(snf.product() == 2);
}

TEST_CASE("smith form matches determinant divisors") {
  CounterRng rng(SeedSpec{13, 0});
  for (int it = 0; it < 80; ++it) {
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
    auto a = random_int_matrix(rng, r, c, 6, 0.7);
    auto snf = smith_normal_form(from_rows(a));
    auto want = oracle::elementary_divisors_by_minors(a);
    CHECK(snf.divisors == want);
    for (std::size_t i = 1; i < snf.divisors.size(); ++i) CHECK(snf.divisors[i] % snf.divisors[i - 1] == 0);
  }
}

TEST_CASE("determinants") {
  CHECK(determinant(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
  CHECK(determinant(from_rows({{1, 2}, {2, 4}})) == 0);
  CHECK(determinant(SparseColumnMatrix<Integer>(0)) == 1);
  CHECK_THROWS_AS(determinant(from_rows({{1, 2, 3}, {4, 5, 6}})), std::domain_error);

  CounterRng rng(SeedSpec{17, 0});
  for (int it = 0; it < 40; ++it) {
    std::size_t n = 1 + rng.below(6);
    auto a = random_int_matrix(rng, n, n, 9, 0.8);
    auto m = from_rows(a);
    CHECK(mpq_class(determinant(m)) == oracle::det_laplace(dense_q(m)));
    auto q = convert<Rational>(m);
    CHECK(determinant(q) == oracle::det_laplace(dense_q(m)));
  }
}

TEST_CASE("determinant of a square boundary block equals a relative homology order") {
  // Rows K = all edges not in the spanning tree {01, 02, 03}; columns S =
  // three triangles. |det| equals the SNF product of the same block.
  auto x = build_skeleton(4, 2);
  auto d2 = boundary_matrix(x, 2).matrix;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < x.f(1); ++i)
    if (x.simplices(1)[i][0] != 0) rows.push_back(i);
  for (const auto& cols : oracle::subsets(4, 3)) {
    auto block = d2.select_columns(cols).select_rows(rows);
    mpz_class det = determinant(block);
    CHECK(abs(det) == smith_normal_form(block).product());
    CHECK(abs(det) == 1);
  }
}
