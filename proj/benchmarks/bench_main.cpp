#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "picard/linear.hpp"
#include "picard/picard.hpp"
#include "picard/surface.hpp"

using namespace picard;

namespace {

SurfaceModel fixture(const std::string& name) {
  return load_surface_file(std::string(PICARD_FIXTURE_DIR) + "/surfaces/" + name + ".json");
}

Polynomial dense_form(int nvars, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-9, 9);
  Polynomial p(Field::rationals(), nvars);
  for (const auto& m : monomials_up_to(nvars, degree))
    p = p + Polynomial::monomial(Field::rationals(), nvars, m, Rational(coeff(rng), 1 + rng() % 5));
  return p;
}

CoeffMatrix random_matrix(std::size_t rows, std::size_t cols, std::size_t rank_bound) {
  std::mt19937_64 rng(rows * 131 + cols);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(rank_bound)),
      b(rank_bound, std::vector<Rational>(cols)), dense(rows, std::vector<Rational>(cols, 0));
  for (auto& r : a) for (auto& v : r) v = coeff(rng);
  for (auto& r : b) for (auto& v : r) v = Rational(coeff(rng), 1 + rng() % 3);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rank_bound; ++k) dense[i][j] += a[i][k] * b[k][j];
  return CoeffMatrix::from_dense(Field::rationals(), dense, "bench");
}

void BM_PolynomialMultiply(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const Polynomial a = dense_form(4, degree, 1), b = dense_form(4, degree, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.counters["terms"] = static_cast<double>(a.terms().size());
}
BENCHMARK(BM_PolynomialMultiply)->Arg(2)->Arg(4)->Arg(6);

void BM_NullspaceModular(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoeffMatrix m = random_matrix(n, n + 10, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(nullspace_basis(m));
}
BENCHMARK(BM_NullspaceModular)->Arg(20)->Arg(60)->Arg(120);

void BM_NullspaceFractions(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoeffMatrix m = random_matrix(n, n + 10, n / 2);
  EngineOptions options;
  options.force_fractions = true;
  for (auto _ : state) benchmark::DoNotOptimize(nullspace_basis(m, options));
}
BENCHMARK(BM_NullspaceFractions)->Arg(20)->Arg(60)->Arg(120);

void BM_SolvePicard(benchmark::State& state, const char* name) {
  const SurfaceModel s = fixture(name);
  for (auto _ : state) benchmark::DoNotOptimize(solve_picard(s));
}
BENCHMARK_CAPTURE(BM_SolvePicard, fermat_quartic, "fermat_quartic");
BENCHMARK_CAPTURE(BM_SolvePicard, cone_quartic_random, "cone_quartic_random");
BENCHMARK_CAPTURE(BM_SolvePicard, steiner_roman_random, "steiner_roman_random");

void BM_JacobianCount(benchmark::State& state, const char* name) {
  const SurfaceModel s = fixture(name);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_count(s, 1));
}
BENCHMARK_CAPTURE(BM_JacobianCount, smooth_cubic_random, "smooth_cubic_random");
BENCHMARK_CAPTURE(BM_JacobianCount, fermat_quartic_random, "fermat_quartic_random");

}  // namespace

BENCHMARK_MAIN();
