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

#include "fmc/codec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fmc {

namespace {

int parse_bits(std::string_view tok) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw std::invalid_argument("method: bad bit count '" + std::string(tok) + "'");
    }
    return v;
}

double parse_threshold(std::string_view tok) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("method: bad asp threshold '" + std::string(tok) + "'");
    }
    return v;
}

// Splits "name(args)" and returns {name, args}; args is empty for bare names.
std::pair<std::string_view, std::string_view> split_call(std::string_view text) {
    const size_t open = text.find('(');
    if (open == std::string_view::npos) {
        return {text, {}};
    }
    if (text.back() != ')') {
        throw std::invalid_argument("method: missing ')' in '" + std::string(text) + "'");
    }
    return {text.substr(0, open), text.substr(open + 1, text.size() - open - 2)};
}

// Splits dct-cm arguments into the mask text and an optional bit count.
// "m1" and "m2" may be followed by ",bits"; inline keep lists with a
// "/patch_len" suffix may be followed by ",bits" after the suffix; a keep
// list without "/" is taken whole and uses the default bit count.
std::pair<std::string_view, std::string_view> split_dctcm_args(std::string_view args) {
    const size_t comma = args.find(',');
    const std::string_view head = args.substr(0, comma);
    if (head == "m1" || head == "M1" || head == "m2" || head == "M2") {
        return {head, comma == std::string_view::npos ? std::string_view{}
                                                      : args.substr(comma + 1)};
    }
    const size_t slash = args.rfind('/');
    if (slash == std::string_view::npos) {
        return {args, {}};
    }
    const size_t after = args.find(',', slash);
    if (after == std::string_view::npos) {
        return {args, {}};
    }
    return {args.substr(0, after), args.substr(after + 1)};
}

std::string format_threshold(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

bool all_nonnegative(const Tensor& x) {
    return std::all_of(x.data().begin(), x.data().end(), [](double v) { return v >= 0.0; });
}

CompressedActivation pack_codes(const Tensor& codes, Method method, int stage, const Dims& dims) {
    CompressedActivation a;
    a.method = method;
    a.stage = uint8_t(stage);
    a.patch_len = 0;
    a.keep = 0;
    a.quant = *codes.quant();
    a.dims = dims;
    a.payload = zvc_encode(codes);
    return a;
}

} // namespace

MethodSpec MethodSpec::parse(std::string_view text) {
    std::string clean(text);
    std::erase_if(clean, [](char ch) { return ch == ' ' || ch == '\t'; });
    std::string_view rest = clean;

    MethodSpec spec;
    if (rest.starts_with("asp(")) {
        const size_t close = rest.find(')');
        if (close == std::string_view::npos) {
            throw std::invalid_argument("method: missing ')' after asp(");
        }
        spec.asp_threshold = parse_threshold(rest.substr(4, close - 4));
        if (close + 1 >= rest.size() || rest[close + 1] != '+') {
            throw std::invalid_argument("method: expected '+' after the asp() prefix");
        }
        rest = rest.substr(close + 2);
    }

    const auto [name, args] = split_call(rest);
    if (name == "zvc" || name == "lowbit" || name == "passthrough") {
        spec.method = spec.asp_threshold > 0.0 ? Method::AspZvc : Method::ZvcOnly;
        if (!args.empty()) spec.bits = parse_bits(args);
    } else if (name == "dct-cm") {
        spec.method = Method::DctCm;
        if (args.empty()) {
            spec.mask = MaskSchedule::m1();
        } else {
            const auto [mask_text, bits_text] = split_dctcm_args(args);
            spec.mask = MaskSchedule::parse(mask_text);
            if (!bits_text.empty()) spec.bits = parse_bits(bits_text);
        }
    } else if (name == "dct-2d") {
        spec.method = Method::Dct2d;
        if (!args.empty()) spec.bits = parse_bits(args);
    } else {
        throw std::invalid_argument("method: unknown method '" + std::string(name) +
                                    "'; valid: zvc, dct-cm, dct-2d, lowbit, passthrough, "
                                    "optionally prefixed with asp(<threshold>)+");
    }

    if (spec.bits < 1 || spec.bits > 16) {
        throw std::invalid_argument("method: bit count outside 1..16");
    }
    return spec;
}

std::string MethodSpec::describe() const {
    std::string out;
    if (asp_threshold > 0.0) {
        out += "asp(" + format_threshold(asp_threshold) + ")+";
    }
    switch (method) {
    case Method::ZvcOnly:
    case Method::AspZvc:
        out += "zvc(" + std::to_string(bits) + ")";
        break;
    case Method::DctCm: {
        const MaskSchedule& m = mask ? *mask : MaskSchedule::m1();
        out += "dct-cm(";
        for (size_t i = 0; i < m.keep.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(m.keep[i]);
        }
        out += "/" + std::to_string(m.patch_len) + "," + std::to_string(bits) + ")";
        break;
    }
    case Method::Dct2d:
        out += "dct-2d(" + std::to_string(bits);
        if (qmatrix) out += ",custom-q";
        out += ")";
        break;
    }
    return out;
}

CompressedActivation compress(const Tensor& x, const MethodSpec& spec, int stage) {
    if (stage < 0 || stage > 255) {
        throw std::invalid_argument("compress: stage outside 0..255");
    }
    if (spec.bits < 1 || spec.bits > 16) {
        throw std::invalid_argument("compress: bit count outside 1..16");
    }

    if (spec.method == Method::ZvcOnly || spec.method == Method::AspZvc) {
        if (x.is_quantized() && x.quant()->bitwidth == spec.bits) {
            // Codes pass through untouched, so this path is lossless. ASP
            // compares in the real domain; surviving codes keep their bits.
            Tensor codes = x;
            if (spec.asp_threshold > 0.0) {
                const double scale = x.quant()->scale;
                for (uint64_t i = 0; i < codes.size(); ++i) {
                    if (std::abs(codes[i]) * scale < spec.asp_threshold) codes[i] = 0.0;
                }
            }
            return pack_codes(codes, spec.method, stage, x.dims());
        }
        Tensor real = x.is_quantized() ? dequantize(x) : x;
        if (spec.asp_threshold > 0.0) {
            real = asp_apply(real, AspConfig{spec.asp_threshold});
        }
        // Non-negative data (post-ReLU activations) quantizes unsigned;
        // anything with negatives falls back to the symmetric grid.
        const Signedness s =
            all_nonnegative(real) ? Signedness::Unsigned : Signedness::SignedSymmetric;
        const QuantParams q = calibrate_scale(real, spec.bits, s);
        return pack_codes(quantize(real, q), spec.method, stage, x.dims());
    }

    const Tensor real = x.is_quantized() ? dequantize(x) : x;
    if (spec.method == Method::DctCm) {
        const MaskSchedule& m = spec.mask ? *spec.mask : MaskSchedule::m1();
        std::optional<AspConfig> asp;
        if (spec.asp_threshold > 0.0) asp = AspConfig{spec.asp_threshold};
        return dctcm_encode(real, stage, m, spec.bits, asp);
    }

    // dct-2d: ASP runs on the spatial values before the transform.
    const Tensor* in = &real;
    Tensor thresholded;
    if (spec.asp_threshold > 0.0) {
        thresholded = asp_apply(real, AspConfig{spec.asp_threshold});
        in = &thresholded;
    }
    return dct2d_encode(*in, spec.bits, spec.qmatrix, stage);
}

Tensor decompress(const CompressedActivation& a, const std::optional<QMatrix>& qmatrix) {
    if (qmatrix && a.method != Method::Dct2d) {
        throw std::invalid_argument("decompress: qmatrix given for a method that has none");
    }
    switch (a.method) {
    case Method::ZvcOnly:
    case Method::AspZvc:
        return zvc_decode(a.payload, a.dims, a.quant);
    case Method::DctCm:
        return dctcm_decode(a);
    case Method::Dct2d:
        return dct2d_decode(a, qmatrix);
    }
    throw std::logic_error("decompress: unreachable method");
}

} // namespace fmc
