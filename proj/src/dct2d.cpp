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

#include "fmc/dct2d.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fmc/dct.hpp"

namespace fmc {

namespace {

constexpr int kPatch = 8;

uint64_t round_up(uint64_t v, uint64_t m) { return (v + m - 1) / m * m; }

void check_qmatrix(const QMatrix& q) {
    if (q.size() != size_t(kPatch) * kPatch) {
        throw std::invalid_argument("dct2d: qmatrix must have 64 entries");
    }
    for (double v : q) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("dct2d: qmatrix entries must be finite and > 0");
        }
    }
}

} // namespace

CompressedActivation dct2d_encode(const Tensor& x, int bits,
                                  const std::optional<QMatrix>& qmatrix, int stage) {
    if (x.is_quantized()) {
        throw std::logic_error("dct2d_encode: input holds quantized codes; dequantize first");
    }
    if (stage < 0 || stage > 255) {
        throw std::invalid_argument("dct2d_encode: stage outside 0..255");
    }
    if (qmatrix) check_qmatrix(*qmatrix);

    const Dims d = x.dims();
    const Dims pd{d.n, d.c, uint32_t(round_up(d.h, kPatch)), uint32_t(round_up(d.w, kPatch))};
    const DctMatrix A(kPatch);

    std::vector<double> coeffs(pd.count(), 0.0);
    std::vector<double> patch(kPatch * kPatch), freq(kPatch * kPatch);

    for (uint32_t b = 0; b < d.n; ++b) {
        for (uint32_t ch = 0; ch < d.c; ++ch) {
            for (uint32_t bi = 0; bi < pd.h; bi += kPatch) {
                for (uint32_t bj = 0; bj < pd.w; bj += kPatch) {
                    for (int u = 0; u < kPatch; ++u) {
                        for (int v = 0; v < kPatch; ++v) {
                            const uint32_t i = bi + uint32_t(u);
                            const uint32_t j = bj + uint32_t(v);
                            patch[size_t(u) * kPatch + v] =
                                (i < d.h && j < d.w) ? x.at(b, ch, i, j) : 0.0;
                        }
                    }
                    dct2d_forward(patch, freq, A);
                    for (int u = 0; u < kPatch; ++u) {
                        for (int v = 0; v < kPatch; ++v) {
                            double y = freq[size_t(u) * kPatch + v];
                            if (qmatrix) y /= (*qmatrix)[size_t(u) * kPatch + v];
                            coeffs[flat_index(pd, b, ch, bi + uint32_t(u), bj + uint32_t(v))] = y;
                        }
                    }
                }
            }
        }
    }

    Tensor coeff_tensor(pd, std::move(coeffs));
    const QuantParams q = calibrate_scale(coeff_tensor, bits, Signedness::SignedSymmetric);
    const Tensor codes = quantize(coeff_tensor, q);

    CompressedActivation a;
    a.method = Method::Dct2d;
    a.stage = uint8_t(stage);
    a.patch_len = kPatch;
    a.keep = 0;
    a.quant = q;
    a.dims = d;
    a.payload = zvc_encode(codes);
    return a;
}

Tensor dct2d_decode(const CompressedActivation& a, const std::optional<QMatrix>& qmatrix) {
    if (a.method != Method::Dct2d) {
        throw std::invalid_argument("dct2d_decode: container method is not dct-2d");
    }
    if (qmatrix) check_qmatrix(*qmatrix);

    const Dims d = a.dims;
    const Dims pd{d.n, d.c, uint32_t(round_up(d.h, kPatch)), uint32_t(round_up(d.w, kPatch))};
    const Tensor codes = zvc_decode(a.payload, pd, a.quant);
    const Tensor coeffs = dequantize(codes);
    const DctMatrix A(kPatch);

    Tensor out(d);
    std::vector<double> freq(kPatch * kPatch), patch(kPatch * kPatch);
    for (uint32_t b = 0; b < d.n; ++b) {
        for (uint32_t ch = 0; ch < d.c; ++ch) {
            for (uint32_t bi = 0; bi < pd.h; bi += kPatch) {
                for (uint32_t bj = 0; bj < pd.w; bj += kPatch) {
                    for (int u = 0; u < kPatch; ++u) {
                        for (int v = 0; v < kPatch; ++v) {
                            double y = coeffs.at(b, ch, bi + uint32_t(u), bj + uint32_t(v));
                            if (qmatrix) y *= (*qmatrix)[size_t(u) * kPatch + v];
                            freq[size_t(u) * kPatch + v] = y;
                        }
                    }
                    dct2d_inverse(freq, patch, A);
                    for (int u = 0; u < kPatch; ++u) {
                        for (int v = 0; v < kPatch; ++v) {
                            const uint32_t i = bi + uint32_t(u);
                            const uint32_t j = bj + uint32_t(v);
                            if (i < d.h && j < d.w) {
                                out.at(b, ch, i, j) = patch[size_t(u) * kPatch + v];
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace fmc
