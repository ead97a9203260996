#include "reilly/bvh.hpp"
#include "reilly/curvature.hpp"
#include "reilly/generate.hpp"
#include "reilly/pinching.hpp"
#include "reilly/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace reilly;

namespace {

const TriMesh& spheroid(int subdiv) {
  static std::vector<TriMesh> cache(8);
  if (cache[subdiv].faces.empty()) cache[subdiv] = generate(Ellipsoid{1.0, 1.0, 1.2}, subdiv);
  return cache[subdiv];
}

void BM_Generate(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate(Ellipsoid{1.0, 1.0, 1.2}, s));
}
BENCHMARK(BM_Generate)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness(m));
    benchmark::DoNotOptimize(assemble_mass(m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.num_faces()));
}
BENCHMARK(BM_Assemble)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_VertexGeometry(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vertex_geometry(m));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m.num_vertices()));
}
BENCHMARK(BM_VertexGeometry)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_FirstEigenpair(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  const SparseSymMatrix K = assemble_stiffness(m), M = assemble_mass(m);
  for (auto _ : state) benchmark::DoNotOptimize(first_eigenpair(K, M));
}
BENCHMARK(BM_FirstEigenpair)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_LowestSpectrum8(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  const SparseSymMatrix K = assemble_stiffness(m), M = assemble_mass(m);
  for (auto _ : state) benchmark::DoNotOptimize(lowest_spectrum(K, M, 8));
}
BENCHMARK(BM_LowestSpectrum8)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_BvhBuild(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(TriangleBvh(m));
}
BENCHMARK(BM_BvhBuild)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_BvhQuery(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  const TriangleBvh bvh(m);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<Vec3> queries(1024);
  for (Vec3& q : queries) q = Vec3(u(rng), u(rng), u(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bvh.distance(queries[i++ & 1023]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BvhQuery)->DenseRange(3, 6);

void BM_FullReport(benchmark::State& state) {
  const TriMesh& m = spheroid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(full_report(m, 2, 2.0));
}
BENCHMARK(BM_FullReport)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

}  // namespace

// the packaged benchmark_main archive carries LTO bytecode from another compiler
BENCHMARK_MAIN();
