// Timing harness for the OpenMP kernels against their serial twins. Every
// pair must also agree exactly, which demonstrates that results do not
// depend on the thread count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qst/kernels.hpp"
#include "qst/randomizer.hpp"
#include "qst/rng.hpp"
#include "qst/state.hpp"

namespace {

using qst::kernels::Exec;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Line {
  const char* name;
  double serial_ms;
  double parallel_ms;
  double max_delta;
};

void print_line(const Line& line) {
  std::printf("%-34s %10.2f ms %10.2f ms   x%5.2f   max|delta| %.3g\n",
              line.name, line.serial_ms, line.parallel_ms,
              line.parallel_ms > 0 ? line.serial_ms / line.parallel_ms : 0.0,
              line.max_delta);
}

qst::KeySet sampled_set(int n, std::size_t count, std::uint64_t seed) {
  qst::SeededRng rng(seed);
  std::vector<qst::PauliKey> keys;
  keys.reserve(count);
  const qst::Bits space = qst::Bits{1} << (2 * n);
  for (std::size_t i = 0; i < count; ++i) {
    keys.push_back(
        qst::PauliKey::from_packed(n, static_cast<qst::Bits>(rng.below(space))));
  }
  return qst::KeySet(n, std::move(keys));
}

Line bench_wht(int bits) {
  std::vector<std::int64_t> base(std::size_t{1} << bits);
  qst::SeededRng rng(7);
  for (auto& v : base) {
    v = static_cast<std::int64_t>(rng.below(1000));
  }
  auto serial = base;
  auto start = Clock::now();
  qst::kernels::wht(std::span<std::int64_t>(serial), Exec::serial);
  const double serial_ms = ms_since(start);

  auto parallel = base;
  start = Clock::now();
  qst::kernels::wht(std::span<std::int64_t>(parallel), Exec::parallel);
  const double parallel_ms = ms_since(start);

  double delta = 0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    delta = std::max(delta, std::abs(double(serial[i] - parallel[i])));
  }
  return {"wht int64", serial_ms, parallel_ms, delta};
}

Line bench_character_sums(int n, std::size_t count) {
  const auto set = sampled_set(n, count, 11);
  const auto packed = set.packed();

  auto start = Clock::now();
  const auto serial =
      qst::kernels::character_sums_direct(packed, 2 * n, Exec::serial);
  const double serial_ms = ms_since(start);

  start = Clock::now();
  const auto parallel =
      qst::kernels::character_sums_direct(packed, 2 * n, Exec::parallel);
  const double parallel_ms = ms_since(start);

  double delta = 0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    delta = std::max(delta, std::abs(double(serial[i] - parallel[i])));
  }
  return {"character sums (enumeration)", serial_ms, parallel_ms, delta};
}

Line bench_channel_average(int n, std::size_t count) {
  const auto set = sampled_set(n, count, 13);
  const auto rho = qst::density_from_pure(qst::random_pure_state(n, 17));

  auto start = Clock::now();
  const auto serial = qst::channel_apply_average(set, rho, Exec::serial);
  const double serial_ms = ms_since(start);

  start = Clock::now();
  const auto parallel = qst::channel_apply_average(set, rho, Exec::parallel);
  const double parallel_ms = ms_since(start);

  const double delta =
      (serial.entries - parallel.entries).cwiseAbs().maxCoeff();
  return {"channel apply (average)", serial_ms, parallel_ms, delta};
}

Line bench_channel_spectral(int n, std::size_t count) {
  const auto set = sampled_set(n, count, 19);
  const auto rho = qst::density_from_pure(qst::random_pure_state(n, 23));

  auto start = Clock::now();
  const auto serial = qst::channel_apply_spectral(set, rho, Exec::serial);
  const double serial_ms = ms_since(start);

  start = Clock::now();
  const auto parallel = qst::channel_apply_spectral(set, rho, Exec::parallel);
  const double parallel_ms = ms_since(start);

  const double delta =
      (serial.entries - parallel.entries).cwiseAbs().maxCoeff();
  return {"channel apply (spectral)", serial_ms, parallel_ms, delta};
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
  std::printf("OpenMP max threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel == serial\n");
#endif
  std::printf("%-34s %13s %13s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  if (quick) {
    print_line(bench_wht(14));
    print_line(bench_character_sums(4, 1u << 9));
    print_line(bench_channel_average(4, 1u << 9));
    print_line(bench_channel_spectral(6, 1u << 10));
  } else {
    print_line(bench_wht(22));
    print_line(bench_character_sums(8, 1u << 14));
    print_line(bench_channel_average(6, 1u << 12));
    print_line(bench_channel_spectral(9, 1u << 13));
  }
  return 0;
}
