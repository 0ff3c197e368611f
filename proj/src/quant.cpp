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

#include "fmc/quant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fmc/tensor.hpp"

namespace fmc {

int64_t QuantParams::code_min() const {
    if (signedness == Signedness::Unsigned) return 0;
    return -((int64_t(1) << (bitwidth - 1)) - 1);
}

int64_t QuantParams::code_max() const {
    if (signedness == Signedness::Unsigned) return (int64_t(1) << bitwidth) - 1;
    return (int64_t(1) << (bitwidth - 1)) - 1;
}

void validate(const QuantParams& q) {
    if (q.bitwidth < 1 || q.bitwidth > 16) {
        throw std::invalid_argument("quant: bitwidth " + std::to_string(q.bitwidth) +
                                    " outside 1..16");
    }
    if (!(q.scale > 0.0)) {
        throw std::invalid_argument("quant: scale must be positive");
    }
    if (q.zero_point != 0) {
        throw std::invalid_argument("quant: zero_point must be 0");
    }
}

int64_t quantize_value(double x, const QuantParams& q) {
    // llround rounds half away from zero, deterministically.
    int64_t code = std::llround(x / q.scale);
    return std::clamp(code, q.code_min(), q.code_max());
}

double dequantize_value(int64_t code, const QuantParams& q) {
    return double(code) * q.scale;
}

Tensor quantize(const Tensor& x, const QuantParams& q) {
    validate(q);
    if (x.is_quantized()) {
        throw std::logic_error("quantize: input already holds codes");
    }
    std::vector<double> codes(x.size());
    const auto& in = x.data();
    for (size_t i = 0; i < in.size(); ++i) {
        if (q.signedness == Signedness::Unsigned && in[i] < 0.0) {
            throw std::domain_error("quantize: negative input under unsigned codes");
        }
        codes[i] = double(quantize_value(in[i], q));
    }
    return Tensor(x.dims(), std::move(codes), q);
}

Tensor dequantize(const Tensor& codes) {
    if (!codes.is_quantized()) {
        throw std::logic_error("dequantize: tensor carries no quant metadata");
    }
    const QuantParams q = *codes.quant();
    std::vector<double> vals(codes.size());
    for (size_t i = 0; i < vals.size(); ++i) {
        vals[i] = dequantize_value(int64_t(codes[i]), q);
    }
    return Tensor(codes.dims(), std::move(vals));
}

QuantParams calibrate_scale(const Tensor& x, int bitwidth, Signedness signedness) {
    QuantParams q;
    if (bitwidth < 1 || bitwidth > 16) {
        throw std::invalid_argument("calibrate: bitwidth " + std::to_string(bitwidth) +
                                    " outside 1..16");
    }
    q.bitwidth = uint8_t(bitwidth);
    q.signedness = signedness;

    double peak = 0.0;
    for (double v : x.data()) {
        double mag = (signedness == Signedness::Unsigned) ? v : std::fabs(v);
        peak = std::max(peak, mag);
    }
    const int64_t top = q.code_max();
    double scale = (peak > 0.0 && top > 0) ? peak / double(top) : 1.0;
    // Hold the scale to float32 so the serialized header reproduces it exactly.
    q.scale = double(float(scale));
    return q;
}

} // namespace fmc
