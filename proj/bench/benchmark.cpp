// Timing comparison of the OpenMP kernels against their serial references:
// payoff-matrix construction, security-level evaluation, simplex pivoting,
// and sharded Monte Carlo. Usage: montyhall_bench [n_plays]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "montyhall/exact_engine.hpp"
#include "montyhall/game_model.hpp"
#include "montyhall/lp.hpp"
#include "montyhall/mc.hpp"
#include "montyhall/zerosum.hpp"

using namespace monty;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* label, double serial, double parallel) {
  std::printf("%-34s serial %8.3fs   openmp %8.3fs   speedup %.2fx\n", label,
              serial, parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  const uint64_t n_plays = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run serially\n");
#endif

  {
    const GameConfig config{5, 1};  // 1280 x 1620 win-indicator matrix
    PayoffMatrix serial_matrix, parallel_matrix;
    const double t_serial =
        seconds([&] { serial_matrix = build_payoff_matrix_serial(config); });
    const double t_parallel =
        seconds([&] { parallel_matrix = build_payoff_matrix(config); });
    report("payoff matrix build (N=5,k=1)", t_serial, t_parallel);
    if (serial_matrix.entries != parallel_matrix.entries) {
      std::printf("MISMATCH: parallel payoff matrix differs from reference\n");
      return 1;
    }

    const Matrix a = serial_matrix.to_matrix();
    const MixedStrategy x = MixedStrategy::uniform(a.rows);
    const MixedStrategy y = MixedStrategy::uniform(a.cols);
    double sx = 0.0, sy = 0.0;
    const double t_sec = seconds([&] {
      for (int r = 0; r < 50; ++r) {
        sx = security_level(a, x, Side::kPlayer);
        sy = security_level(a, y, Side::kTeam);
      }
    });
    std::printf("%-34s %8.3fs   (player %.6f, team %.6f)\n",
                "security levels x50 (openmp)", t_sec, sx, sy);

    MatrixGameSolution lp_serial, lp_parallel;
    const double t_lp_serial =
        seconds([&] { lp_serial = solve_matrix_game(a, 1e-9, false); });
    const double t_lp_parallel =
        seconds([&] { lp_parallel = solve_matrix_game(a, 1e-9, true); });
    report("simplex solve (N=5,k=1)", t_lp_serial, t_lp_parallel);
    if (lp_serial.value != lp_parallel.value ||
        lp_serial.row_strategy != lp_parallel.row_strategy) {
      std::printf("MISMATCH: parallel simplex differs from reference\n");
      return 1;
    }
    std::printf("%-34s value %.9f, gap %.3e, %d iterations\n", "",
                lp_parallel.value, lp_parallel.duality_gap,
                lp_parallel.iterations);
  }

  {
    const GameModel classic = make_preset("classic-symmetric");
    SimResult serial_run, sharded_run;
    const double t_serial =
        seconds([&] { serial_run = simulate(classic, n_plays, 42); });
    const double t_sharded =
        seconds([&] { sharded_run = simulate(classic, n_plays, 42, 64); });
    char label[64];
    std::snprintf(label, sizeof(label), "monte carlo %.1e plays x64 shards",
                  static_cast<double>(n_plays));
    report(label, t_serial, t_sharded);
    std::printf("%-34s serial %.6f   sharded %.6f   exact %.6f\n", "estimates",
                serial_run.estimate, sharded_run.estimate,
                unconditional_win_prob(classic));
  }
  return 0;
}
