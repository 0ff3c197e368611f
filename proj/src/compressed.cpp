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

#include "fmc/compressed.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

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

uint64_t round_up(uint64_t v, uint64_t m) { return (v + m - 1) / m * m; }

void check_shape_fields(Method method, uint8_t patch_len, uint8_t keep) {
    switch (method) {
    case Method::ZvcOnly:
    case Method::AspZvc:
        if (patch_len != 0 || keep != 0) {
            throw FormatError("dcm: patch fields must be zero for methods without patches");
        }
        break;
    case Method::DctCm:
        if (patch_len != 4 && patch_len != 8 && patch_len != 16) {
            throw FormatError("dcm: dct-cm patch length must be 4, 8 or 16");
        }
        if (keep < 1 || keep > patch_len) {
            throw FormatError("dcm: dct-cm keep count outside 1..patch_len");
        }
        break;
    case Method::Dct2d:
        if (patch_len != 8 || keep != 0) {
            throw FormatError("dcm: 2-d dct containers use patch_len 8 and keep 0");
        }
        break;
    }
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
    case Method::ZvcOnly: return "zvc";
    case Method::DctCm: return "dct-cm";
    case Method::Dct2d: return "dct-2d";
    case Method::AspZvc: return "asp+zvc";
    }
    return "unknown";
}

uint64_t CompressedActivation::padded_count() const {
    switch (method) {
    case Method::DctCm:
        return uint64_t(dims.n) * round_up(dims.c, patch_len) * dims.h * dims.w;
    case Method::Dct2d:
        return uint64_t(dims.n) * dims.c * round_up(dims.h, 8) * round_up(dims.w, 8);
    default:
        return dims.count();
    }
}

std::vector<uint8_t> CompressedActivation::to_bytes() const {
    std::vector<uint8_t> out;
    out.reserve(byte_size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(uint8_t(method));
    out.push_back(stage);
    out.push_back(patch_len);
    out.push_back(keep);
    out.push_back(quant.bitwidth);
    out.push_back(uint8_t(quant.signedness));
    const float scale = float(quant.scale);
    uint8_t scale_bytes[4];
    std::memcpy(scale_bytes, &scale, 4);
    out.insert(out.end(), scale_bytes, scale_bytes + 4);
    write_u32le(out, dims.n);
    write_u32le(out, dims.c);
    write_u32le(out, dims.h);
    write_u32le(out, dims.w);
    const std::vector<uint8_t> payload_bytes = payload.to_bytes();
    out.insert(out.end(), payload_bytes.begin(), payload_bytes.end());
    return out;
}

CompressedActivation CompressedActivation::from_bytes(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes) {
        throw TruncationError("dcm: container shorter than the 30-byte header");
    }
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("dcm: bad magic at byte 0");
    }
    CompressedActivation a;
    if (bytes[4] > uint8_t(Method::AspZvc)) {
        throw UnsupportedError("dcm: unknown method " + std::to_string(bytes[4]));
    }
    a.method = Method(bytes[4]);
    a.stage = bytes[5];
    a.patch_len = bytes[6];
    a.keep = bytes[7];
    check_shape_fields(a.method, a.patch_len, a.keep);

    a.quant.bitwidth = bytes[8];
    if (bytes[9] > 1) {
        throw FormatError("dcm: signedness byte must be 0 or 1");
    }
    a.quant.signedness = Signedness(bytes[9]);
    float scale = 0.0f;
    std::memcpy(&scale, bytes.data() + 10, 4);
    a.quant.scale = double(scale);
    a.quant.zero_point = 0;
    try {
        validate(a.quant);
    } catch (const std::invalid_argument& e) {
        // corrupt headers are data errors, not caller errors
        throw FormatError(std::string("dcm: ") + e.what());
    }

    a.dims = Dims{read_u32le(bytes, 14), read_u32le(bytes, 18), read_u32le(bytes, 22),
                  read_u32le(bytes, 26)};
    if (a.dims.n == 0 || a.dims.c == 0 || a.dims.h == 0 || a.dims.w == 0) {
        throw FormatError("dcm: zero dimension in header");
    }

    a.payload = ZvcStream::from_bytes(bytes.subspan(kHeaderBytes));
    if (a.payload.count != a.padded_count()) {
        throw FormatError("dcm: payload carries " + std::to_string(a.payload.count) +
                          " elements, expected " + std::to_string(a.padded_count()));
    }
    if (a.payload.value_bitwidth != a.quant.bitwidth ||
        a.payload.signed_values != (a.quant.signedness == Signedness::SignedSymmetric)) {
        throw FormatError("dcm: payload quantization disagrees with the container header");
    }
    return a;
}

void write_compressed(const CompressedActivation& a, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    const std::vector<uint8_t> bytes = a.to_bytes();
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) {
        throw std::runtime_error("short write to " + path.string());
    }
}

CompressedActivation read_compressed(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                               std::istreambuf_iterator<char>());
    // Prefix the path while keeping the error subclass.
    try {
        return CompressedActivation::from_bytes(bytes);
    } catch (const TruncationError& e) {
        throw TruncationError(path.string() + ": " + e.what());
    } catch (const UnsupportedError& e) {
        throw UnsupportedError(path.string() + ": " + e.what());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

double compression_ratio(const CompressedActivation& a, int raw_bitwidth) {
    if (raw_bitwidth < 1) {
        throw std::invalid_argument("compression_ratio: raw bitwidth must be >= 1");
    }
    return double(a.dims.count()) * raw_bitwidth / (8.0 * double(a.byte_size()));
}

} // namespace fmc
