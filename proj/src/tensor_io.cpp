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

#include "fmc/tensor_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "fmc/dct.hpp"
#include "fmc/errors.hpp"

namespace fmc {

namespace {

constexpr char kMagic[4] = {'F', 'M', 'C', '1'};
constexpr size_t kHeaderBytes = 32;

uint32_t read_u32le(std::span<const uint8_t> b, size_t off) {
    return uint32_t(b[off]) | uint32_t(b[off + 1]) << 8 | uint32_t(b[off + 2]) << 16 |
           uint32_t(b[off + 3]) << 24;
}

void write_u32le(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(uint8_t(v & 0xFF));
    out.push_back(uint8_t((v >> 8) & 0xFF));
    out.push_back(uint8_t((v >> 16) & 0xFF));
    out.push_back(uint8_t((v >> 24) & 0xFF));
}

} // namespace

std::vector<uint8_t> tensor_to_bytes(const Tensor& t) {
    std::vector<uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    if (t.is_quantized()) {
        const QuantParams q = *t.quant();
        validate(q);
        out.push_back(q.signedness == Signedness::SignedSymmetric ? 2 : 1);
        out.push_back(q.bitwidth);
    } else {
        out.push_back(0);
        out.push_back(32);
    }
    out.push_back(0);
    out.push_back(0);
    const Dims d = t.dims();
    write_u32le(out, d.n);
    write_u32le(out, d.c);
    write_u32le(out, d.h);
    write_u32le(out, d.w);
    write_u32le(out, t.is_quantized() ? std::bit_cast<uint32_t>(float(t.quant()->scale)) : 0);
    write_u32le(out, 0); // zero_point is pinned to 0

    if (!t.is_quantized()) {
        out.reserve(out.size() + t.size() * 4);
        for (uint64_t i = 0; i < t.size(); ++i) {
            write_u32le(out, std::bit_cast<uint32_t>(float(t[i])));
        }
        return out;
    }
    const int code_bytes = t.quant()->bitwidth <= 8 ? 1 : 2;
    out.reserve(out.size() + t.size() * size_t(code_bytes));
    for (uint64_t i = 0; i < t.size(); ++i) {
        const int64_t code = std::llround(t[i]);
        out.push_back(uint8_t(code & 0xFF));
        if (code_bytes == 2) out.push_back(uint8_t((code >> 8) & 0xFF));
    }
    return out;
}

Tensor tensor_from_bytes(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes) {
        throw TruncationError("fmc: file shorter than the 32-byte header");
    }
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("fmc: bad magic at byte 0");
    }
    const uint8_t dtype = bytes[4];
    const uint8_t bitwidth = bytes[5];
    if (dtype > 2) {
        throw UnsupportedError("fmc: unknown dtype " + std::to_string(dtype));
    }
    if (bytes[6] != 0 || bytes[7] != 0) {
        throw FormatError("fmc: reserved bytes must be zero");
    }
    const Dims d{read_u32le(bytes, 8), read_u32le(bytes, 12), read_u32le(bytes, 16),
                 read_u32le(bytes, 20)};
    if (d.n == 0 || d.c == 0 || d.h == 0 || d.w == 0) {
        throw FormatError("fmc: zero dimension in header");
    }
    const uint32_t scale_bits = read_u32le(bytes, 24);
    if (read_u32le(bytes, 28) != 0) {
        throw FormatError("fmc: zero_point must be 0");
    }

    if (dtype == 0) {
        if (bitwidth != 32) {
            throw FormatError("fmc: float payloads use bitwidth 32");
        }
        if (scale_bits != 0) {
            throw FormatError("fmc: float payloads carry no quant scale");
        }
        const size_t expect = kHeaderBytes + size_t(d.count()) * 4;
        if (bytes.size() < expect) {
            throw TruncationError("fmc: payload is " + std::to_string(bytes.size()) +
                                  " bytes, expected " + std::to_string(expect));
        }
        if (bytes.size() > expect) {
            throw FormatError("fmc: " + std::to_string(bytes.size() - expect) +
                              " trailing bytes after the payload");
        }
        std::vector<double> vals(d.count());
        for (uint64_t i = 0; i < d.count(); ++i) {
            vals[i] = double(std::bit_cast<float>(read_u32le(bytes, kHeaderBytes + i * 4)));
        }
        return Tensor(d, std::move(vals));
    }

    QuantParams q;
    q.bitwidth = bitwidth;
    q.signedness = dtype == 2 ? Signedness::SignedSymmetric : Signedness::Unsigned;
    q.scale = double(std::bit_cast<float>(scale_bits));
    q.zero_point = 0;
    validate(q);

    const size_t code_bytes = bitwidth <= 8 ? 1 : 2;
    const size_t expect = kHeaderBytes + size_t(d.count()) * code_bytes;
    if (bytes.size() < expect) {
        throw TruncationError("fmc: payload is " + std::to_string(bytes.size()) +
                              " bytes, expected " + std::to_string(expect));
    }
    if (bytes.size() > expect) {
        throw FormatError("fmc: " + std::to_string(bytes.size() - expect) +
                          " trailing bytes after the payload");
    }
    std::vector<double> vals(d.count());
    for (uint64_t i = 0; i < d.count(); ++i) {
        const size_t off = kHeaderBytes + i * code_bytes;
        if (code_bytes == 1) {
            vals[i] = dtype == 2 ? double(int8_t(bytes[off])) : double(bytes[off]);
        } else {
            const uint16_t u = uint16_t(bytes[off]) | uint16_t(bytes[off + 1]) << 8;
            vals[i] = dtype == 2 ? double(int16_t(u)) : double(u);
        }
    }
    // The Tensor constructor rejects codes outside the quantized range.
    return Tensor(d, std::move(vals), q);
}

Tensor read_tensor(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    // Prefix the path while keeping the error subclass.
    try {
        return tensor_from_bytes(bytes);
    } catch (const TruncationError& e) {
        throw TruncationError(path.string() + ": " + e.what());
    } catch (const UnsupportedError& e) {
        throw UnsupportedError(path.string() + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_tensor(const Tensor& t, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    const std::vector<uint8_t> bytes = tensor_to_bytes(t);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) {
        throw std::runtime_error("short write to " + path.string());
    }
}

void SyntheticProfile::check() const {
    if (stage_shapes.empty()) {
        throw std::invalid_argument("synthetic: no stage shapes");
    }
    if (stage_sparsity.size() != stage_shapes.size()) {
        throw std::invalid_argument("synthetic: sparsity list must match the shape list");
    }
    for (double s : stage_sparsity) {
        if (!(s >= 0.0) || !(s < 1.0)) {
            throw std::invalid_argument("synthetic: sparsity outside [0, 1)");
        }
    }
    if (lowpass_k < 0 || lowpass_k > 8) {
        throw std::invalid_argument("synthetic: lowpass k outside 0..8");
    }
    for (const StageShape& s : stage_shapes) {
        if (s.c == 0 || s.h == 0 || s.w == 0) {
            throw std::invalid_argument("synthetic: zero dimension in a stage shape");
        }
        if (lowpass_k >= 1 && s.c % 8 != 0) {
            throw std::invalid_argument("synthetic: lowpass profiles need c % 8 == 0");
        }
    }
}

namespace {

// Fixed 53-bit construction so every platform draws the same values.
double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

double as_f32(double v) { return double(float(v)); }

// First `m` entries of a partial Fisher-Yates shuffle of 0..total-1.
std::vector<uint64_t> pick_indices(uint64_t total, uint64_t m, std::mt19937_64& rng) {
    std::vector<uint64_t> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    for (uint64_t i = 0; i < m; ++i) {
        const uint64_t j = i + rng() % (total - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    return idx;
}

Tensor synth_flat(const Dims& d, double sparsity, std::mt19937_64& rng) {
    const uint64_t total = d.count();
    const uint64_t zeros = uint64_t(std::llround(sparsity * double(total)));
    std::vector<uint64_t> zero_at = pick_indices(total, zeros, rng);
    std::vector<bool> is_zero(total, false);
    for (uint64_t i : zero_at) is_zero[i] = true;

    std::vector<double> vals(total, 0.0);
    for (uint64_t i = 0; i < total; ++i) {
        if (!is_zero[i]) vals[i] = as_f32(0.02 + 0.98 * u01(rng));
    }
    return Tensor(d, std::move(vals));
}

Tensor synth_lowpass(const Dims& d, double sparsity, int k, std::mt19937_64& rng) {
    constexpr int n = 8;
    const DctMatrix A(n);
    const uint64_t patches = uint64_t(d.c / n) * d.h * d.w;
    const uint64_t zero_patches = uint64_t(std::llround(sparsity * double(patches)));
    std::vector<uint64_t> zero_at = pick_indices(patches, zero_patches, rng);
    std::vector<bool> is_zero(patches, false);
    for (uint64_t i : zero_at) is_zero[i] = true;

    Tensor out(d);
    std::vector<double> freq(n), patch(n);
    for (uint32_t pb = 0; pb < d.c / n; ++pb) {
        for (uint32_t i = 0; i < d.h; ++i) {
            for (uint32_t j = 0; j < d.w; ++j) {
                const uint64_t pidx = (uint64_t(pb) * d.h + i) * d.w + j;
                if (is_zero[pidx]) continue;

                std::fill(freq.begin(), freq.end(), 0.0);
                double e_in = 0.0;
                for (int f = 1; f < k; ++f) {
                    freq[f] = u01(rng);
                    e_in += freq[f] * freq[f];
                }
                if (k < n) {
                    // A faint out-of-band component (0.09% of the in-band
                    // energy) keeps the signal from being exactly bandlimited.
                    const int hf = k + int(rng() % uint64_t(n - k));
                    const double sign = (rng() & 1) ? 1.0 : -1.0;
                    freq[hf] = sign * 0.03 * std::sqrt(e_in);
                }
                const double dc_extra = 0.05 + 0.25 * u01(rng);

                dct1d_inverse(freq, patch, A);
                double lo = patch[0];
                for (int cc = 1; cc < n; ++cc) lo = std::min(lo, patch[cc]);
                // Lifting by a constant only moves DCT coefficient 0, which
                // is in band for every k >= 1, and makes the patch positive.
                const double lift = std::max(0.0, -lo) + dc_extra;
                for (int cc = 0; cc < n; ++cc) {
                    out.at(0, pb * uint32_t(n) + uint32_t(cc), i, j) =
                        as_f32(patch[cc] + lift);
                }
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<int, Tensor>> generate_synthetic(const SyntheticProfile& p) {
    p.check();
    std::vector<std::pair<int, Tensor>> out;
    out.reserve(p.stage_shapes.size());
    for (size_t s = 0; s < p.stage_shapes.size(); ++s) {
        // Independent per-stage streams; stages can be regenerated alone.
        std::mt19937_64 rng(p.seed + 0x9E3779B97F4A7C15ull * (uint64_t(s) + 1));
        const SyntheticProfile::StageShape& sh = p.stage_shapes[s];
        const Dims d{1, sh.c, sh.h, sh.w};
        Tensor t = p.lowpass_k == 0 ? synth_flat(d, p.stage_sparsity[s], rng)
                                    : synth_lowpass(d, p.stage_sparsity[s], p.lowpass_k, rng);
        out.emplace_back(int(s), std::move(t));
    }
    return out;
}

} // namespace fmc
