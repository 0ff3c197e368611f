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

#ifndef FMC_QUANT_HPP
#define FMC_QUANT_HPP

#include <cstdint>

namespace fmc {

enum class Signedness : uint8_t {
    Unsigned        = 0, // codes in [0, 2^b - 1], for post-ReLU activations
    SignedSymmetric = 1, // codes in [-(2^(b-1) - 1), 2^(b-1) - 1], for DCT coefficients
};

// Fixed-point quantization parameters. zero_point is pinned to 0 so that a
// real 0.0 always maps to code 0 and back; anything else would destroy the
// sparsity ZVC depends on.
struct QuantParams {
    uint8_t    bitwidth   = 8; // 1..16
    Signedness signedness = Signedness::Unsigned;
    double     scale      = 1.0; // > 0; held to float32 precision for serialization
    int32_t    zero_point = 0;   // always 0

    int64_t code_min() const;
    int64_t code_max() const;

    bool operator==(const QuantParams&) const = default;
};

// Throws std::invalid_argument on out-of-range bitwidth, non-positive scale,
// or nonzero zero_point.
void validate(const QuantParams& q);

// code = clamp(round_half_away_from_zero(x / scale), code range)
int64_t quantize_value(double x, const QuantParams& q);
double dequantize_value(int64_t code, const QuantParams& q);

class Tensor;

// Quantizes an unquantized tensor; the result carries q as metadata.
// Throws std::domain_error for negative inputs under Unsigned, and
// std::logic_error if x already holds codes.
Tensor quantize(const Tensor& x, const QuantParams& q);

// value = code * scale. Throws std::logic_error without quant metadata.
Tensor dequantize(const Tensor& codes);

// Per-tensor scale fitting the extreme value to the top code:
//   Unsigned:        scale = max(x) / (2^b - 1)
//   SignedSymmetric: scale = max|x| / (2^(b-1) - 1)
// A degenerate all-zero tensor (or empty code range) calibrates to scale 1.
// The returned scale is rounded to float32 so encode and decode agree.
QuantParams calibrate_scale(const Tensor& x, int bitwidth, Signedness signedness);

} // namespace fmc

#endif // FMC_QUANT_HPP
