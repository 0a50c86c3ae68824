// Times the OpenMP kernels against their serial reference
// implementations and verifies that both produce identical results.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "misseat/distribution.hpp"
#include "misseat/parallel.hpp"
#include "misseat/process.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn) {
  const auto start = Clock::now();
  fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const std::string& label, double serial_ms, double parallel_ms,
            bool identical) {
  std::cout << label << ": serial " << serial_ms << " ms, parallel "
            << parallel_ms << " ms, speedup "
            << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
            << (identical ? " (results identical)\n"
                          : " (RESULTS DIFFER!)\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"misseat benchmark: serial reference vs OpenMP kernels"};
  long n = 400;
  long k = 3;
  std::uint64_t trials = 200000;
  std::uint64_t seed = 1;
  app.add_option("--n", n, "passengers (default 400)");
  app.add_option("--k", k, "absent-minded passengers (default 3)");
  app.add_option("--trials", trials, "Monte Carlo trials (default 200000)");
  app.add_option("--seed", seed, "stream seed (default 1)");
  CLI11_PARSE(app, argc, argv);

  std::cout << "workers: " << misseat::worker_count() << "\n";

  for (const auto method : {misseat::Method::theorem1,
                            misseat::Method::theorem2}) {
    misseat::ExactPmf serial_pmf, parallel_pmf;
    const double serial_ms = time_ms([&] {
      serial_pmf = misseat::distribution_full(static_cast<int>(n),
                                              static_cast<int>(k), method,
                                              misseat::Execution::serial);
    });
    const double parallel_ms = time_ms([&] {
      parallel_pmf = misseat::distribution_full(static_cast<int>(n),
                                                static_cast<int>(k), method,
                                                misseat::Execution::parallel);
    });
    report(std::string("distribution_full ") + misseat::to_string(method) +
               " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")",
           serial_ms, parallel_ms, serial_pmf.probs == parallel_pmf.probs);
  }

  {
    const misseat::BoardingConfig config{static_cast<int>(n),
                                         static_cast<int>(k)};
    misseat::EmpiricalPmf serial_emp, parallel_emp;
    const double serial_ms = time_ms([&] {
      serial_emp = misseat::monte_carlo(config, trials, seed,
                                        misseat::Execution::serial);
    });
    const double parallel_ms = time_ms([&] {
      parallel_emp = misseat::monte_carlo(config, trials, seed,
                                          misseat::Execution::parallel);
    });
    report("monte_carlo (trials=" + std::to_string(trials) + ")", serial_ms,
           parallel_ms, serial_emp.counts == parallel_emp.counts);
  }
  return 0;
}
