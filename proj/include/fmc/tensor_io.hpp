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

#ifndef FMC_TENSOR_IO_HPP
#define FMC_TENSOR_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "fmc/tensor.hpp"

namespace fmc {

// Tensor container file ("FMC1"). 32-byte header, little-endian throughout:
//
//   offset  size  field
//   0       4     magic "FMC1"
//   4       1     dtype: 0 float32, 1 unsigned codes, 2 signed-symmetric codes
//   5       1     bitwidth: code width 1..16; 32 when dtype = 0
//   6       2     reserved, must be zero
//   8       16    n, c, h, w as 32-bit unsigned
//   24      4     quant scale, IEEE-754 float32 (0 when dtype = 0)
//   28      4     quant zero_point, 32-bit signed (always 0)
//
// Payload: n*c*h*w elements, row-major (n, c, h, w). float32 for dtype 0;
// integer codes one per ceil(bitwidth/8) bytes, little-endian, two's
// complement for dtype 2. Round-trips are byte-identical.
Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const Tensor& t, const std::filesystem::path& path);

std::vector<uint8_t> tensor_to_bytes(const Tensor& t);
Tensor tensor_from_bytes(std::span<const uint8_t> bytes);

// Desk-scale stand-in for per-stage network activations. Spectrum controls
// the channel-frequency content: lowpass_k in 1..8 concentrates each 8-long
// channel patch's energy in DCT coefficients 0..k-1 (at least 95% of it, by
// construction), lowpass_k = 0 means flat random values. Post-ReLU
// semantics: every value is nonnegative.
struct SyntheticProfile {
    struct StageShape {
        uint32_t c = 8;
        uint32_t h = 1;
        uint32_t w = 1;
    };

    std::vector<StageShape> stage_shapes;
    std::vector<double> stage_sparsity; // per stage, in [0, 1)
    int lowpass_k = 0;                  // 0 = flat, 1..8 = lowpass(k)
    uint64_t seed = 0;

    void check() const; // std::invalid_argument on a broken profile
};

// Deterministic under a fixed profile, including across platforms. Each
// tensor's zero fraction lands within +/-2% of its stage target (exact for
// every default shape; granularity-limited below ~200 elements). lowpass
// profiles require c to be a multiple of 8 and zero whole channel patches so
// the spectral guarantee survives sparsification.
std::vector<std::pair<int, Tensor>> generate_synthetic(const SyntheticProfile& p);

} // namespace fmc

#endif // FMC_TENSOR_IO_HPP
