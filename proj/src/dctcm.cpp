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

#include "fmc/dctcm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace fmc {

namespace {

uint64_t round_up(uint64_t v, uint64_t m) { return (v + m - 1) / m * m; }

int parse_int(std::string_view tok, const char* what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::invalid_argument(std::string("mask: bad ") + what + " '" + std::string(tok) +
                                    "'");
    }
    return v;
}

bool is_bit_token(std::string_view tok, size_t patch_len) {
    if (tok.size() != patch_len) return false;
    return std::all_of(tok.begin(), tok.end(), [](char ch) { return ch == '0' || ch == '1'; });
}

int keep_from_bits(std::string_view tok) {
    const size_t ones = size_t(std::count(tok.begin(), tok.end(), '1'));
    // Only a prefix of 1s maps onto a low-frequency mask.
    for (size_t i = 0; i < tok.size(); ++i) {
        if ((tok[i] == '1') != (i < ones)) {
            throw std::invalid_argument("mask: bit vector '" + std::string(tok) +
                                        "' is not a low-frequency prefix");
        }
    }
    if (ones == 0) {
        throw std::invalid_argument("mask: bit vector keeps no coefficients");
    }
    return int(ones);
}

} // namespace

MaskSchedule MaskSchedule::m1() { return MaskSchedule{8, {4, 6, 4, 2, 1}}; }

MaskSchedule MaskSchedule::m2() { return MaskSchedule{8, {2, 4, 3, 2, 1}}; }

MaskSchedule MaskSchedule::parse(std::string_view spec) {
    if (spec == "m1" || spec == "M1") return m1();
    if (spec == "m2" || spec == "M2") return m2();

    MaskSchedule m;
    std::string_view list = spec;
    if (const size_t slash = spec.rfind('/'); slash != std::string_view::npos) {
        m.patch_len = parse_int(spec.substr(slash + 1), "patch length");
        list = spec.substr(0, slash);
    }
    if (list.empty()) {
        throw std::invalid_argument("mask: empty keep list");
    }
    size_t pos = 0;
    while (pos <= list.size()) {
        const size_t comma = std::min(list.find(',', pos), list.size());
        const std::string_view tok = list.substr(pos, comma - pos);
        if (is_bit_token(tok, size_t(m.patch_len))) {
            m.keep.push_back(keep_from_bits(tok));
        } else {
            m.keep.push_back(parse_int(tok, "keep count"));
        }
        pos = comma + 1;
    }
    m.check();
    return m;
}

int MaskSchedule::keep_for_stage(int stage) const {
    if (stage < 0) {
        throw std::invalid_argument("mask: negative stage");
    }
    const size_t i = std::min(size_t(stage), keep.size() - 1);
    return keep[i];
}

void MaskSchedule::check() const {
    if (patch_len != 4 && patch_len != 8 && patch_len != 16) {
        throw std::invalid_argument("mask: patch length must be 4, 8 or 16");
    }
    if (keep.empty()) {
        throw std::invalid_argument("mask: schedule has no stages");
    }
    for (int k : keep) {
        if (k < 1 || k > patch_len) {
            throw std::invalid_argument("mask: keep count " + std::to_string(k) +
                                        " outside 1.." + std::to_string(patch_len));
        }
    }
}

CompressedActivation dctcm_encode(const Tensor& x, int stage, const MaskSchedule& mask,
                                  int bits, const std::optional<AspConfig>& asp) {
    mask.check();
    if (x.is_quantized()) {
        throw std::logic_error("dctcm_encode: input holds quantized codes; dequantize first");
    }
    if (stage < 0 || stage > 255) {
        throw std::invalid_argument("dctcm_encode: stage outside 0..255");
    }

    const Tensor* src = &x;
    Tensor thresholded;
    if (asp && asp->threshold > 0.0) {
        thresholded = asp_apply(x, *asp);
        src = &thresholded;
    }

    const Dims d = x.dims();
    const int n = mask.patch_len;
    const int keep = mask.keep_for_stage(stage);
    const uint32_t c_pad = uint32_t(round_up(d.c, n));
    const Dims pd{d.n, c_pad, d.h, d.w};

    const DctMatrix A(n);
    std::vector<double> coeffs(pd.count(), 0.0);
    std::vector<double> patch(n), freq(n);

    for (uint32_t b = 0; b < d.n; ++b) {
        for (uint32_t p = 0; p < c_pad / n; ++p) {
            for (uint32_t i = 0; i < d.h; ++i) {
                for (uint32_t j = 0; j < d.w; ++j) {
                    for (int cc = 0; cc < n; ++cc) {
                        const uint32_t ch = p * n + uint32_t(cc);
                        patch[cc] = ch < d.c ? src->at(b, ch, i, j) : 0.0;
                    }
                    dct1d_forward(patch, freq, A);
                    for (int f = 0; f < n; ++f) {
                        const double y = f < keep ? freq[f] : 0.0;
                        coeffs[flat_index(pd, b, p * n + uint32_t(f), i, j)] = y;
                    }
                }
            }
        }
    }

    Tensor coeff_tensor(pd, std::move(coeffs));
    const QuantParams q = calibrate_scale(coeff_tensor, bits, Signedness::SignedSymmetric);
    const Tensor codes = quantize(coeff_tensor, q);

    CompressedActivation a;
    a.method = Method::DctCm;
    a.stage = uint8_t(stage);
    a.patch_len = uint8_t(n);
    a.keep = uint8_t(keep);
    a.quant = q;
    a.dims = d;
    a.payload = zvc_encode(codes);
    return a;
}

Tensor dctcm_decode(const CompressedActivation& a) {
    if (a.method != Method::DctCm) {
        throw std::invalid_argument("dctcm_decode: container method is not dct-cm");
    }
    const Dims d = a.dims;
    const int n = a.patch_len;
    const uint32_t c_pad = uint32_t(round_up(d.c, n));
    const Dims pd{d.n, c_pad, d.h, d.w};

    const Tensor codes = zvc_decode(a.payload, pd, a.quant);
    const Tensor coeffs = dequantize(codes);

    const DctMatrix A(n);
    Tensor out(d);
    std::vector<double> freq(n), patch(n);
    for (uint32_t b = 0; b < d.n; ++b) {
        for (uint32_t p = 0; p < c_pad / n; ++p) {
            for (uint32_t i = 0; i < d.h; ++i) {
                for (uint32_t j = 0; j < d.w; ++j) {
                    for (int f = 0; f < n; ++f) {
                        freq[f] = coeffs.at(b, p * n + uint32_t(f), i, j);
                    }
                    dct1d_inverse(freq, patch, A);
                    for (int cc = 0; cc < n; ++cc) {
                        const uint32_t ch = p * n + uint32_t(cc);
                        if (ch < d.c) out.at(b, ch, i, j) = patch[cc];
                    }
                }
            }
        }
    }
    return out;
}

WeightBlock fuse_weights(const WeightBlock& w, const DctMatrix& m) {
    if (w.n != uint32_t(m.n())) {
        throw std::invalid_argument("fuse_weights: weight width does not match transform size");
    }
    if (w.w.size() != size_t(w.out_channels) * w.n) {
        throw std::invalid_argument("fuse_weights: weight buffer size mismatch");
    }
    WeightBlock out{w.out_channels, w.n, std::vector<double>(w.w.size(), 0.0)};
    // (W A^T)[r][j] = sum_k W[r][k] A[j][k]
    for (uint32_t r = 0; r < w.out_channels; ++r) {
        for (uint32_t j = 0; j < w.n; ++j) {
            double acc = 0.0;
            for (uint32_t k = 0; k < w.n; ++k) {
                acc += w.at(r, k) * m.at(int(j), int(k));
            }
            out.w[size_t(r) * w.n + j] = acc;
        }
    }
    return out;
}

std::vector<double> apply_fused(const WeightBlock& wstar, std::span<const double> y_freq) {
    if (y_freq.size() != wstar.n) {
        throw std::invalid_argument("apply_fused: input length does not match weight width");
    }
    std::vector<double> out(wstar.out_channels, 0.0);
    for (uint32_t r = 0; r < wstar.out_channels; ++r) {
        double acc = 0.0;
        for (uint32_t j = 0; j < wstar.n; ++j) {
            acc += wstar.at(r, j) * y_freq[j];
        }
        out[r] = acc;
    }
    return out;
}

uint64_t count_transform_macs(uint32_t c, uint32_t h, uint32_t w,
                              const MaskSchedule& mask, int stage, bool zero_skip) {
    mask.check();
    const uint64_t n = uint64_t(mask.patch_len);
    const uint64_t patches = round_up(c, n) / n * h * w;
    const uint64_t per_patch = zero_skip ? uint64_t(mask.keep_for_stage(stage)) * n : n * n;
    return patches * per_patch;
}

} // namespace fmc
