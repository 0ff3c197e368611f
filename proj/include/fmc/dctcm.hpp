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

#ifndef FMC_DCTCM_HPP
#define FMC_DCTCM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fmc/asp.hpp"
#include "fmc/compressed.hpp"
#include "fmc/dct.hpp"
#include "fmc/tensor.hpp"

namespace fmc {

// Per-stage count of low-frequency DCT coefficients to keep. Stage s uses
// keep[s]; stages past the end of the schedule reuse the last entry.
struct MaskSchedule {
    int patch_len = 8;     // {4, 8, 16}
    std::vector<int> keep; // each in (0, patch_len]

    static MaskSchedule m1(); // [4, 6, 4, 2, 1] / 8
    static MaskSchedule m2(); // [2, 4, 3, 2, 1] / 8

    // Accepts "m1", "m2", keep-count lists like "4,6,4,2,1/8", and
    // bit-vector lists like "11110000,11000000/8". Bit vectors must be a
    // contiguous run of 1s from index 0; anything else is rejected.
    static MaskSchedule parse(std::string_view spec);

    int keep_for_stage(int stage) const;
    void check() const; // throws std::invalid_argument on a broken schedule
};

// Encoder pipeline: optional ASP -> zero-pad channels to a multiple of
// patch_len -> per spatial position, 1-D DCT each channel patch -> zero
// coefficients at index >= keep -> calibrate + quantize signed-symmetric at
// `bits` -> ZVC. The header records everything needed to decode.
CompressedActivation dctcm_encode(const Tensor& x, int stage, const MaskSchedule& mask,
                                  int bits, const std::optional<AspConfig>& asp = {});

// ZVC decode -> dequantize -> inverse 1-D DCT per patch -> strip channel
// padding. Inverse of dctcm_encode up to mask truncation plus quantization.
Tensor dctcm_decode(const CompressedActivation& a);

// One output-channel block of a 1x1 convolution over a channel patch:
// w is row-major out_channels x n.
struct WeightBlock {
    uint32_t out_channels = 0;
    uint32_t n = 0;
    std::vector<double> w;

    double at(uint32_t row, uint32_t col) const { return w[size_t(row) * n + col]; }
};

// W* = W A^T: folds the inverse transform into the weights so convolution
// can consume frequency-domain activations directly, with no decoder IDCT.
WeightBlock fuse_weights(const WeightBlock& w, const DctMatrix& m);

// W* y_freq; equals W * dct1d_inverse(y_freq) when wstar = fuse_weights(W).
std::vector<double> apply_fused(const WeightBlock& wstar, std::span<const double> y_freq);

// Transform multiply count for one activation of shape (c, h, w):
// ceil(c/n)*h*w patches at keep*n multiplies each when zero computations are
// skipped, n*n otherwise.
uint64_t count_transform_macs(uint32_t c, uint32_t h, uint32_t w,
                              const MaskSchedule& mask, int stage, bool zero_skip);

} // namespace fmc

#endif // FMC_DCTCM_HPP
