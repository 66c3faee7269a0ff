// Times the OpenMP modulation sampler against the serial reference and
// verifies that both produce bit-identical records.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "smeary/monte_carlo.hpp"

using namespace smeary;

namespace {

double time_run(const char* label,
                std::vector<ModulationRecord> (*fn)(int, int, int,
                                                    const RadialDensity&,
                                                    std::uint64_t),
                int m, int n, int reps, const RadialDensity& d,
                std::uint64_t seed, std::vector<ModulationRecord>* out) {
  const auto t0 = std::chrono::steady_clock::now();
  *out = fn(m, n, reps, d, seed);
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("  %-8s m=%-3d n=%-5d reps=%-3d  %8.3f s\n", label, m, n, reps,
              dt);
  return dt;
}

}  // namespace

int main() {
  const RadialDensity cap = RadialDensity::uniform(1e-9, M_PI / 2 - 1e-4);
  bool identical = true;
  std::printf("modulation sampler: parallel vs serial\n");
  for (int m : {2, 5, 20}) {
    const int n = 1000, reps = 32;
    std::vector<ModulationRecord> par, ser;
    const double tp =
        time_run("parallel", &modulation_samples, m, n, reps, cap, 123u, &par);
    const double ts = time_run("serial", &modulation_samples_serial, m, n,
                               reps, cap, 123u, &ser);
    for (std::size_t i = 0; i < par.size(); ++i)
      identical = identical && par[i].z_n == ser[i].z_n &&
                  par[i].seed == ser[i].seed;
    std::printf("  speedup %.2fx\n", ts / tp);
  }
  std::printf("outputs identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
