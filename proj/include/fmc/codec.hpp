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

#ifndef FMC_CODEC_HPP
#define FMC_CODEC_HPP

#include <optional>
#include <string>
#include <string_view>

#include "fmc/compressed.hpp"
#include "fmc/dct2d.hpp"
#include "fmc/dctcm.hpp"
#include "fmc/tensor.hpp"

namespace fmc {

// One fully parameterized compression configuration. Parsed from specs like
//
//   zvc(8)                    quantize unsigned 8-bit + ZVC
//   asp(0.25)+zvc(8)          ASP threshold 0.25, then the above
//   dct-cm(m1,8)              channel DCT, mask preset M1, 8-bit coefficients
//   asp(0.125)+dct-cm(m1,10)  ASP before the channel DCT
//   dct-2d(8)                 spatial 8x8 DCT, 8-bit coefficients
//   lowbit(5) / passthrough(8)  strategy-file aliases for zvc(b)
//
// Omitted bits default to 8, e.g. plain "zvc".
struct MethodSpec {
    Method method = Method::ZvcOnly;
    int bits = 8;
    double asp_threshold = 0.0; // 0 disables
    std::optional<MaskSchedule> mask; // dct-cm only
    std::optional<QMatrix> qmatrix;   // dct-2d only

    static MethodSpec parse(std::string_view text);
    std::string describe() const; // canonical spec string
};

// Dispatches a tensor through the configured pipeline. A quantized input is
// dequantized first for the transform and ASP paths; for plain ZVC with
// matching bitwidth its codes are reused as-is, which keeps that path
// lossless. `stage` selects the mask entry for dct-cm and is recorded in the
// header for every method.
CompressedActivation compress(const Tensor& x, const MethodSpec& spec, int stage = 0);

// Inverse dispatch over the header's method byte. ZVC-only and ASP payloads
// come back as quantized codes; transform payloads come back as reals.
Tensor decompress(const CompressedActivation& a,
                  const std::optional<QMatrix>& qmatrix = {});

} // namespace fmc

#endif // FMC_CODEC_HPP
