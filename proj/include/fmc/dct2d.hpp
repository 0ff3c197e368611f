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

#ifndef FMC_DCT2D_HPP
#define FMC_DCT2D_HPP

#include <optional>
#include <vector>

#include "fmc/compressed.hpp"
#include "fmc/tensor.hpp"

namespace fmc {

// 8x8 quantization matrix for the 2-D pipeline, row-major, all entries > 0.
// The default is all-ones (pure scalar quantization): feature maps carry
// different frequency content than natural images, so no JPEG-style matrix
// is assumed.
using QMatrix = std::vector<double>;

// Per channel, per spatial 8x8 patch (zero-padded at the edges): 2-D DCT ->
// elementwise divide by qmatrix -> calibrate + quantize signed-symmetric at
// `bits` -> ZVC.
CompressedActivation dct2d_encode(const Tensor& x, int bits,
                                  const std::optional<QMatrix>& qmatrix = {},
                                  int stage = 0);

// ZVC decode -> dequantize -> multiply by qmatrix -> inverse 2-D DCT -> crop
// padding. The container does not store the qmatrix; decoding data encoded
// with a custom matrix requires passing the same matrix again.
Tensor dct2d_decode(const CompressedActivation& a,
                    const std::optional<QMatrix>& qmatrix = {});

} // namespace fmc

#endif // FMC_DCT2D_HPP
