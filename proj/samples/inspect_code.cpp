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
// Loads a stabilizer file, reports the code parameters, and dumps the
// lookup decoder it induces: one minimum-weight correction per syndrome.
//
//   ./inspect_code [samples/five_qubit.stab]

#include <cstdio>
#include <exception>
#include <string>

#include "qecw/codes.hpp"
#include "qecw/correct.hpp"

using namespace qecw;

int main(int argc, char **argv) {
  std::string path = argc > 1 ? argv[1] : "samples/five_qubit.stab";
  try {
    StabilizerCode code = load_stabilizer_file(path);
    std::printf("%s: n=%u k=%u, %zu stabilizer generators\n", path.c_str(),
                code.n, code.k, code.stabilizers.size());

    auto show = [&](const char *label, PauliFilter f) {
      auto d = min_distance_bruteforce(code, code.n, f);
      if (d)
        std::printf("  distance (%s): %u\n", label, *d);
      else
        std::printf("  distance (%s): none up to weight %u\n", label, code.n);
    };
    show("any error", PauliFilter::kAny);
    show("X only", PauliFilter::kXOnly);
    show("Z only", PauliFilter::kZOnly);

    SyndromeTable table = build_decoder(code);
    std::printf("\nsyndrome -> correction (%zu entries)\n",
                table.entries.size());
    for (size_t idx = 0; idx < table.entries.size(); ++idx) {
      BitVec syn(table.n_checks);
      for (uint32_t b = 0; b < table.n_checks; ++b)
        syn.set(b, (idx >> b) & 1u);
      std::printf("  %s  %s\n", syn.str().c_str(),
                  table.lookup(idx).str().c_str());
    }
    return 0;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
