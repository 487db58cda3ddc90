#include <chrono>
#include <cstdio>

#include "support/large_ladder.hpp"
#include "zladder/parallel.hpp"

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lad = zladder::testing::large_ladder(zladder::workers_from_env(1));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("ladder table: %zu nodes up to %.6g, J = %.17g (%.1f s)\n", lad.table().size(), lad.domain_hi(),
              lad.table().total(), secs);
  return 0;
}
