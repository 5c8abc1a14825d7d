// Compares the serial and the OpenMP-parallel distributed analysis, and the
// global twin-plant check, over a batch of generated systems. The serial run
// doubles as the reference: both must produce identical reports.

#include <chrono>
#include <cstdio>
#include <random>

#include "dianet/io.hpp"
#include "dianet/orchestrator.hpp"
#include "dianet/randgen.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dianet;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int systems = argc > 1 ? std::atoi(argv[1]) : 60;
  unsigned seed = argc > 2 ? static_cast<unsigned>(std::atoi(argv[2])) : 1;
  int threads = 2;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif

  std::mt19937 rng(seed);
  RandomSystemParams params;
  params.max_components = 3;
  params.max_states = 6;
  std::vector<SystemSpec> batch;
  for (int i = 0; i < systems; ++i)
    batch.push_back(random_system(rng, params, "B" + std::to_string(i)));

  std::printf("%d systems, %d worker threads\n", systems, threads);
  std::printf("%-22s %12s\n", "configuration", "total ms");

  auto t0 = Clock::now();
  std::vector<std::string> serial;
  for (const auto& spec : batch)
    serial.push_back(
        emit_verdict_json(run_distributed(spec, true, 1), spec.sigma));
  std::printf("%-22s %12.1f\n", "distributed, serial", ms_since(t0));

  t0 = Clock::now();
  std::vector<std::string> parallel;
  for (const auto& spec : batch)
    parallel.push_back(
        emit_verdict_json(run_distributed(spec, true, threads), spec.sigma));
  std::printf("%-22s %12.1f\n", "distributed, parallel", ms_since(t0));

  t0 = Clock::now();
  for (const auto& spec : batch)
    for (ActionId f : spec.sigma.faults()) (void)check_global(spec, f);
  std::printf("%-22s %12.1f\n", "global twin plant", ms_since(t0));

  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (serial[i] != parallel[i]) {
      std::fprintf(stderr, "report mismatch on system %zu\n", i);
      return 1;
    }
  }
  std::printf("serial and parallel reports identical\n");
  return 0;
}
