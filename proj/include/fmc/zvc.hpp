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

#ifndef FMC_ZVC_HPP
#define FMC_ZVC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "fmc/quant.hpp"
#include "fmc/tensor.hpp"

namespace fmc {

// Zero-value compression stream. Byte layout (little-endian counts):
//
//   offset  size            field
//   0       4               magic "ZVC1"
//   4       1               value_bitwidth b (1..16)
//   5       1               flags (bit 0: values are signed two's complement)
//   6       4               element count
//   10      ceil(count/8)   bitmap; element i at byte i/8, bit i%8 (LSB first),
//                           1 = nonzero
//   ...     ceil(nnz*b/8)   nonzero codes, b bits each, LSB-first within each
//                           byte, zero-padded to a byte boundary
//
// The zero code never appears in the packed values, and encoding is
// canonical: equal tensors produce byte-identical streams.
struct ZvcStream {
    static constexpr char kMagic[4] = {'Z', 'V', 'C', '1'};
    static constexpr size_t kHeaderBytes = 10;

    uint8_t value_bitwidth = 8;
    bool signed_values = false;
    uint32_t count = 0;
    uint32_t nnz = 0;
    std::vector<uint8_t> bitmap;
    std::vector<uint8_t> packed_values;

    size_t byte_size() const {
        return kHeaderBytes + bitmap.size() + packed_values.size();
    }

    std::vector<uint8_t> to_bytes() const;

    // Parses and validates a complete stream; the span must contain exactly
    // one stream. Throws FormatError/TruncationError/UnsupportedError.
    static ZvcStream from_bytes(std::span<const uint8_t> bytes);
};

// Layout formula: 10 + ceil(count/8) + ceil(nnz*b/8) bytes. Valid for any
// value width, including widths the codec itself does not pack.
uint64_t zvc_stream_bytes(uint64_t count, uint64_t nnz, int value_bitwidth);

// Encodes a quantized tensor (zero_point 0). Throws UnsupportedError for
// bitwidth > 16 and std::logic_error for unquantized input.
ZvcStream zvc_encode(const Tensor& codes);

// Exact inverse of zvc_encode; returns codes carrying `quant`.
// dims.count() must equal s.count and quant must match the stream's width
// and signedness (FormatError otherwise).
Tensor zvc_decode(const ZvcStream& s, const Dims& dims, const QuantParams& quant);

// ratio = raw_elems * raw_bitwidth / (8 * stream bytes), header included.
double compression_ratio(uint64_t raw_elems, int raw_bitwidth, const ZvcStream& s);

} // namespace fmc

#endif // FMC_ZVC_HPP
