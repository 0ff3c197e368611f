/*
Copyright 2026 The fmcodec Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef FMC_STRATEGY_HPP
#define FMC_STRATEGY_HPP

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "fmc/codec.hpp"
#include "fmc/tensor.hpp"

namespace fmc {

// Per-stage method assignment: transform coding on the dense early stages,
// plain low-bit quantization on the sparse late ones.
struct StageStrategy {
    std::vector<MethodSpec> stages;

    // First stage using plain quantize+ZVC; -1 when no stage does.
    int split_stage() const;

    // Early stages get dct-2d(early_bits), stages >= split get lowbit(late_bits).
    static StageStrategy split(int n_stages, int split, int early_bits, int late_bits);

    // Text config, one "stage method-spec" pair per line, '#' comments:
    //
    //   0 dct-2d(8)
    //   1 lowbit(5)
    //   2 lowbit(5)
    static StageStrategy parse_file(const std::filesystem::path& path);
};

// Compresses each (stage, tensor) with its stage's method; output order
// matches input order. A stage not covered by the strategy is a config
// error (std::invalid_argument). dct-cm entries without an inline mask use
// `mask`, or preset M1 when none is given.
std::vector<CompressedActivation> strategy_compress(
    const std::vector<std::pair<int, Tensor>>& stages,
    const StageStrategy& s,
    const std::optional<MaskSchedule>& mask = {});

} // namespace fmc

#endif // FMC_STRATEGY_HPP
