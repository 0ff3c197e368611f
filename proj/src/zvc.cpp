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

#include "fmc/zvc.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "fmc/errors.hpp"

namespace fmc {

namespace {

constexpr uint8_t kFlagSigned = 0x01;

// LSB-first bit packer; widths up to 16 bits.
class BitWriter {
public:
    explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

    void put(uint32_t value, int bits) {
        acc_ |= uint64_t(value) << fill_;
        fill_ += bits;
        while (fill_ >= 8) {
            out_.push_back(uint8_t(acc_ & 0xFF));
            acc_ >>= 8;
            fill_ -= 8;
        }
    }

    void flush() {
        if (fill_ > 0) {
            out_.push_back(uint8_t(acc_ & 0xFF));
            acc_ = 0;
            fill_ = 0;
        }
    }

private:
    std::vector<uint8_t>& out_;
    uint64_t acc_ = 0;
    int fill_ = 0;
};

class BitReader {
public:
    explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint32_t get(int bits) {
        while (fill_ < bits) {
            acc_ |= uint64_t(bytes_[pos_++]) << fill_;
            fill_ += 8;
        }
        const uint32_t v = uint32_t(acc_ & ((uint64_t(1) << bits) - 1));
        acc_ >>= bits;
        fill_ -= bits;
        return v;
    }

    // Remaining buffered bits, which must all be padding.
    bool padding_clear() const { return acc_ == 0; }

private:
    std::span<const uint8_t> bytes_;
    uint64_t acc_ = 0;
    int fill_ = 0;
    size_t pos_ = 0;
};

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

uint64_t zvc_stream_bytes(uint64_t count, uint64_t nnz, int value_bitwidth) {
    return ZvcStream::kHeaderBytes + (count + 7) / 8 + (nnz * uint64_t(value_bitwidth) + 7) / 8;
}

std::vector<uint8_t> ZvcStream::to_bytes() const {
    std::vector<uint8_t> out;
    out.reserve(byte_size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(value_bitwidth);
    out.push_back(signed_values ? kFlagSigned : 0);
    write_u32le(out, count);
    out.insert(out.end(), bitmap.begin(), bitmap.end());
    out.insert(out.end(), packed_values.begin(), packed_values.end());
    return out;
}

ZvcStream ZvcStream::from_bytes(std::span<const uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes) {
        throw TruncationError("zvc: stream shorter than the 10-byte header");
    }
    if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw FormatError("zvc: bad magic at byte 0");
    }
    ZvcStream s;
    s.value_bitwidth = bytes[4];
    if (s.value_bitwidth < 1 || s.value_bitwidth > 16) {
        throw UnsupportedError("zvc: value bitwidth " + std::to_string(s.value_bitwidth) +
                               " outside 1..16");
    }
    if (bytes[5] & ~kFlagSigned) {
        throw FormatError("zvc: unknown flag bits at byte 5");
    }
    s.signed_values = (bytes[5] & kFlagSigned) != 0;
    s.count = read_u32le(bytes, 6);

    const size_t bitmap_bytes = (size_t(s.count) + 7) / 8;
    if (bytes.size() < kHeaderBytes + bitmap_bytes) {
        throw TruncationError("zvc: bitmap truncated at byte " + std::to_string(bytes.size()));
    }
    s.bitmap.assign(bytes.begin() + kHeaderBytes, bytes.begin() + kHeaderBytes + bitmap_bytes);

    uint64_t nnz = 0;
    for (uint8_t b : s.bitmap) nnz += std::popcount(b);
    // Padding bits past `count` must stay zero for canonical streams.
    if (s.count % 8 != 0 && !s.bitmap.empty()) {
        const uint8_t pad_mask = uint8_t(0xFF << (s.count % 8));
        if (s.bitmap.back() & pad_mask) {
            throw FormatError("zvc: nonzero bitmap padding past element count");
        }
    }
    s.nnz = uint32_t(nnz);

    const size_t value_bytes = size_t((nnz * s.value_bitwidth + 7) / 8);
    const size_t expect = kHeaderBytes + bitmap_bytes + value_bytes;
    if (bytes.size() < expect) {
        throw TruncationError("zvc: values truncated at byte " + std::to_string(bytes.size()) +
                              ", expected " + std::to_string(expect));
    }
    if (bytes.size() > expect) {
        throw FormatError("zvc: " + std::to_string(bytes.size() - expect) +
                          " trailing bytes after the values section");
    }
    s.packed_values.assign(bytes.begin() + kHeaderBytes + bitmap_bytes, bytes.end());
    return s;
}

ZvcStream zvc_encode(const Tensor& codes) {
    if (!codes.is_quantized()) {
        throw std::logic_error("zvc_encode: input is not quantized");
    }
    const QuantParams q = *codes.quant();
    if (q.bitwidth > 16) {
        throw UnsupportedError("zvc_encode: bitwidth > 16");
    }
    if (codes.size() > 0xFFFFFFFFull) {
        throw UnsupportedError("zvc_encode: more than 2^32-1 elements");
    }

    ZvcStream s;
    s.value_bitwidth = q.bitwidth;
    s.signed_values = q.signedness == Signedness::SignedSymmetric;
    s.count = uint32_t(codes.size());
    s.bitmap.assign((codes.size() + 7) / 8, 0);

    const uint32_t mask = uint32_t((uint64_t(1) << q.bitwidth) - 1);
    BitWriter writer(s.packed_values);
    uint32_t nnz = 0;
    for (uint64_t i = 0; i < codes.size(); ++i) {
        const int64_t v = std::llround(codes[i]);
        if (v == 0) continue;
        s.bitmap[i / 8] |= uint8_t(1u << (i % 8));
        writer.put(uint32_t(v) & mask, q.bitwidth);
        ++nnz;
    }
    writer.flush();
    s.nnz = nnz;
    return s;
}

Tensor zvc_decode(const ZvcStream& s, const Dims& dims, const QuantParams& quant) {
    validate(quant);
    if (dims.count() != s.count) {
        throw FormatError("zvc: element count " + std::to_string(s.count) +
                          " does not match dims (" + std::to_string(dims.count()) + ")");
    }
    if (quant.bitwidth != s.value_bitwidth) {
        throw FormatError("zvc: quant bitwidth " + std::to_string(quant.bitwidth) +
                          " does not match stream width " + std::to_string(s.value_bitwidth));
    }
    if ((quant.signedness == Signedness::SignedSymmetric) != s.signed_values) {
        throw FormatError("zvc: quant signedness does not match stream flags");
    }
    if (s.bitmap.size() != (size_t(s.count) + 7) / 8) {
        throw FormatError("zvc: bitmap size mismatch");
    }
    uint64_t nnz = 0;
    for (uint8_t b : s.bitmap) nnz += std::popcount(b);
    if (nnz != s.nnz || s.packed_values.size() != size_t((nnz * s.value_bitwidth + 7) / 8)) {
        throw FormatError("zvc: bitmap population does not match packed values");
    }

    std::vector<double> out(s.count, 0.0);
    BitReader reader(s.packed_values);
    const int b = s.value_bitwidth;
    for (uint64_t i = 0; i < s.count; ++i) {
        if (!(s.bitmap[i / 8] >> (i % 8) & 1)) continue;
        int64_t v = reader.get(b);
        if (s.signed_values && (v >> (b - 1)) & 1) {
            v -= int64_t(1) << b;
        }
        if (v == 0) {
            throw FormatError("zvc: packed zero code at element " + std::to_string(i));
        }
        if (v < quant.code_min() || v > quant.code_max()) {
            throw FormatError("zvc: code " + std::to_string(v) + " outside the quantized range");
        }
        out[i] = double(v);
    }
    if (!reader.padding_clear()) {
        throw FormatError("zvc: nonzero padding after the last packed value");
    }
    return Tensor(dims, std::move(out), quant);
}

double compression_ratio(uint64_t raw_elems, int raw_bitwidth, const ZvcStream& s) {
    if (raw_elems != s.count) {
        throw std::invalid_argument("compression_ratio: raw element count must equal the stream's");
    }
    return double(raw_elems) * raw_bitwidth / (8.0 * double(s.byte_size()));
}

} // namespace fmc
