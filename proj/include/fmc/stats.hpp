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

#ifndef FMC_STATS_HPP
#define FMC_STATS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fmc/codec.hpp"
#include "fmc/tensor.hpp"

namespace fmc {

// One compressed block. `elements` counts encoded (padded) elements and nnz
// the nonzero codes among them; raw_bits measures the original tensor at the
// reference width, compressed_bits the full container.
struct BlockStats {
    int block_id = 0;
    int stage = 0;
    uint64_t elements = 0;
    uint64_t nnz = 0;
    double sparsity = 0.0;
    uint64_t raw_bits = 0;
    uint64_t compressed_bits = 0;
    double ratio = 0.0;
    std::optional<double> max_abs_err;
    std::optional<double> rel_l2_err;
};

struct StatsReport {
    std::string method; // canonical MethodSpec string
    std::vector<BlockStats> rows;
    double aggregate_ratio = 0.0; // sum(raw_bits) / sum(compressed_bits)
    double mean_sparsity = 0.0;
    std::optional<double> max_abs_err; // max over rows
    std::optional<double> rel_l2_err;  // pooled over all elements
};

// Runs one method over a corpus of blocks. `stages[i]` maps block i to a
// network stage (block index itself when empty). When `refs` is nonempty it
// must pair one reference tensor per block; reconstruction error is measured
// in the real domain against it. raw_bitwidth is the reference width of the
// uncompressed data (the quantization baseline, typically 8).
StatsReport build_stats(const std::vector<Tensor>& blocks,
                        const MethodSpec& spec,
                        int raw_bitwidth,
                        const std::vector<int>& stages = {},
                        const std::vector<Tensor>& refs = {});

// Methods-and-parameters sweep shaped like the published ratio table:
// lowbit baselines, 2-D DCT, ASP, and DCT-CM mask/bit combinations.
std::vector<MethodSpec> table1_preset();

} // namespace fmc

#endif // FMC_STATS_HPP
