#include "kcone/assembler.hpp"
#include "kcone/cohomology.hpp"
#include "kcone/forms.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace kcone;

namespace {

ExactMatrix random_matrix(std::size_t n, double density, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> val(-9, 9);
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (keep(rng)) m.set(r, c, val(rng));
    }
  }
  return m;
}

std::shared_ptr<GradedQuotient> fermat(int n) {
  const auto r = make_ring({"x", "y", "z"});
  const std::string d = std::to_string(n);
  return std::make_shared<GradedQuotient>(
      r, std::vector<HPoly>{parse_homogeneous("x^" + d + "+y^" + d + "+z^" + d, r)});
}

}  // namespace

static void BM_SparseRank(benchmark::State& st) {
  const ExactMatrix m = random_matrix(st.range(0), 0.1, 7);
  for (auto _ : st) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_SparseRank)->Arg(32)->Arg(64)->Arg(128);

static void BM_BareissRank(benchmark::State& st) {
  const ExactMatrix m = random_matrix(st.range(0), 0.1, 7);
  for (auto _ : st) benchmark::DoNotOptimize(bareiss_rank(m));
}
BENCHMARK(BM_BareissRank)->Arg(32)->Arg(64);

static void BM_RingPiece(benchmark::State& st) {
  for (auto _ : st) {
    const auto q = fermat(5);
    benchmark::DoNotOptimize(q->dim(int(st.range(0))));
  }
}
BENCHMARK(BM_RingPiece)->Arg(8)->Arg(16);

static void BM_OneFormsPiece(benchmark::State& st) {
  const auto q = fermat(4);
  for (auto _ : st) {
    FormsComplex f(*q);
    benchmark::DoNotOptimize(f.piece(1, int(st.range(0))).dimension);
  }
}
BENCHMARK(BM_OneFormsPiece)->Arg(4)->Arg(8);

static void BM_TorsionReport(benchmark::State& st) {
  const auto q = fermat(int(st.range(0)));
  for (auto _ : st) {
    FormsComplex f(*q);
    benchmark::DoNotOptimize(f.torsion_report(2, 0, 2 * int(st.range(0))).total());
  }
}
BENCHMARK(BM_TorsionReport)->Arg(2)->Arg(3);

static void BM_Cech(benchmark::State& st) {
  const CurveModel c = CurveModel::plane_curve("x^4+y^4+z^4");
  for (auto _ : st) benchmark::DoNotOptimize(cech_scheduled(c, 1, int(st.range(0))).dimension);
}
BENCHMARK(BM_Cech)->Arg(0)->Arg(3);

static void BM_QuarticReport(benchmark::State& st) {
  for (auto _ : st) {
    const KAssembler a(ConeInput::from_model(CurveModel::plane_curve("x^4+y^4+z^4")));
    benchmark::DoNotOptimize(a.report(-1, 3).cells.size());
  }
}
BENCHMARK(BM_QuarticReport)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
