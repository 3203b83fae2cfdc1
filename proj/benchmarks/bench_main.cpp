#include <benchmark/benchmark.h>

#include "ellconn/instances.hpp"
#include "ellconn/maps.hpp"
#include "ellconn/sampling.hpp"
#include "ellconn/symplectic.hpp"

namespace {

using namespace ellconn;

void BM_RationalArithmetic(benchmark::State& state) {
  SampleRng rng(kSeedCurve);
  Rational a = rng.rational(1000000, 999983);
  Rational b = rng.nonzero_rational(1000000, 999983);
  for (auto _ : state) {
    Rational c = (a + b) * (a - b) / b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_RationalArithmetic);

void BM_PolyGcd(benchmark::State& state) {
  SampleRng rng(kSeedCurve);
  std::vector<Rational> ca, cb;
  for (int i = 0; i < 12; ++i) ca.push_back(rng.rational());
  for (int i = 0; i < 10; ++i) cb.push_back(rng.rational());
  Poly<Rational> common{Rational(1), Rational(2), Rational(1)};
  Poly<Rational> a = Poly<Rational>(ca) * common;
  Poly<Rational> b = Poly<Rational>(cb) * common;
  for (auto _ : state) {
    auto g = Poly<Rational>::gcd(a, b);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_PolyGcd);

void BM_FamilyConstruction(benchmark::State& state) {
  auto inst = reference_instance();
  for (auto _ : state) {
    auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(3, 7), Rational(-2));
    benchmark::DoNotOptimize(conn);
  }
}
BENCHMARK(BM_FamilyConstruction);

void BM_ResidueAtMarkedPoint(benchmark::State& state) {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(3, 7), Rational(-2));
  for (auto _ : state) {
    auto rd = residue_data(inst, conn, inst.t1());
    benchmark::DoNotOptimize(rd);
  }
}
BENCHMARK(BM_ResidueAtMarkedPoint);

void BM_ResidueAtTwoTorsion(benchmark::State& state) {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(3, 7), Rational(-2));
  for (auto _ : state) {
    auto rd = residue_data(inst, conn, inst.w0());
    benchmark::DoNotOptimize(rd);
  }
}
BENCHMARK(BM_ResidueAtTwoTorsion);

void BM_VerifyFamily(benchmark::State& state) {
  auto inst = reference_instance();
  for (auto _ : state) {
    auto rep = verify_family(inst, Rational(1), Rational(2), Rational(3, 7), Rational(-2));
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_VerifyFamily);

void BM_AppMatrix(benchmark::State& state) {
  auto inst = reference_instance();
  for (auto _ : state) {
    auto m = app_matrix(inst, Rational(1), Rational(2));
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_AppMatrix);

void BM_AppFirstPrinciples(benchmark::State& state) {
  auto inst = reference_instance();
  auto conn = nabla_c(inst, Rational(1), Rational(2), Rational(3, 7), Rational(-2));
  for (auto _ : state) {
    auto a = app(inst, conn);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_AppFirstPrinciples);

void BM_EtaDifferential(benchmark::State& state) {
  auto inst = reference_instance();
  for (auto _ : state) {
    auto s = eta_differential(inst, Rational(1), Rational(2), Rational(1), Rational(1));
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EtaDifferential);

}  // namespace

BENCHMARK_MAIN();
