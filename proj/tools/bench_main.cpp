#include <chrono>
#include <cstdio>

#include "qrelay/channels.hpp"
#include "qrelay/fqsw.hpp"
#include "qrelay/linalg.hpp"
#include "qrelay/optimize.hpp"

using namespace qrelay;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
void row(const char* name, F&& work) {
  const auto t0 = Clock::now();
  const double serial = work(Exec::serial);
  const double t_serial = seconds_since(t0);
  const auto t1 = Clock::now();
  const double parallel = work(Exec::parallel);
  const double t_parallel = seconds_since(t1);
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name,
              t_serial, t_parallel, t_serial / t_parallel,
              serial == parallel ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  {
    DecouplingConfig cfg{random_state(SubsystemShape{{"A", 8}, {"B", 2}, {"C", 4}}, 11),
                         2, 4, 400, 7};
    row("fqsw monte_carlo (400)", [&](Exec e) { return monte_carlo(cfg, e).lhs_mean; });
  }
  {
    const RelayChannel relay =
        direct_link_relay(make_channel("depolarizing", {2, 0.1, 0.0}));
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.max_evals = 1500;
    cfg.seed = 3;
    row("optimizer maximize (8x)", [&](Exec e) {
      return maximize(Objective::direct, relay, cfg, e).objective_value;
    });
  }
  return 0;
}
