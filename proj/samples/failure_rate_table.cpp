// Copyright 2026 The qecw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Monte Carlo failure rates of the three-qubit flip code next to the closed
// form 3p^2 - 2p^3, then one seven-qubit depolarizing point for scale.
//
//   ./failure_rate_table

#include <cstdio>

#include "qecw/analytic.hpp"
#include "qecw/codes.hpp"
#include "qecw/montecarlo.hpp"
#include "qecw/noise.hpp"

using namespace qecw;

int main() {
  TrialConfig cfg;
  cfg.code = repetition_code();
  cfg.trials = 200000;
  cfg.master_seed = 1;
  cfg.workers = 2;

  std::printf("three-qubit flip code, %llu trials per point\n",
              static_cast<unsigned long long>(cfg.trials));
  std::printf("%8s %12s %12s %12s %12s\n", "p", "p_hat", "ci_low", "ci_high",
              "closed");
  for (double p : {0.02, 0.05, 0.1, 0.2}) {
    cfg.model = BitFlip{p};
    FailureEstimate est = estimate_failure(cfg);
    std::printf("%8.3f %12.6f %12.6f %12.6f %12.6f\n", p, est.p_hat,
                est.ci_low, est.ci_high, three_bit_failure(p));
  }

  cfg.code = steane_code();
  cfg.model = Depolarizing{0.01};
  FailureEstimate est = estimate_failure(cfg);
  std::printf("\nseven-qubit code, depolarizing p=0.01: p_hat=%.6f "
              "[%.6f, %.6f]\n",
              est.p_hat, est.ci_low, est.ci_high);
  return 0;
}
