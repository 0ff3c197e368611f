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

#ifndef FMC_COMPRESSED_HPP
#define FMC_COMPRESSED_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fmc/quant.hpp"
#include "fmc/tensor.hpp"
#include "fmc/zvc.hpp"

namespace fmc {

enum class Method : uint8_t {
    ZvcOnly = 0, // quantize + ZVC
    DctCm   = 1, // channel 1-D DCT + stage mask + quantize + ZVC
    Dct2d   = 2, // spatial 8x8 2-D DCT + quantize + ZVC
    AspZvc  = 3, // ASP threshold + quantize + ZVC
};

const char* method_name(Method m);

// Self-describing compressed-activation container ("DCM1"). Byte layout:
//
//   offset  size  field
//   0       4     magic "DCM1"
//   4       1     method (0..3)
//   5       1     stage
//   6       1     patch_len (0 when the method has no patches)
//   7       1     keep      (coefficients kept per patch; 0 when unused)
//   8       1     quant bitwidth
//   9       1     quant signedness (0 unsigned, 1 signed-symmetric)
//   10      4     quant scale, IEEE-754 float32 little-endian
//   14      16    n, c, h, w as 32-bit little-endian unsigned (pre-padding)
//   30      ...   one ZVC stream
//
// dims always hold the original tensor shape. DCT-CM pads channels up to a
// multiple of patch_len and 2-D DCT pads h and w up to multiples of 8; the
// payload count reflects the padded shape, which the decoder re-derives.
struct CompressedActivation {
    static constexpr char kMagic[4] = {'D', 'C', 'M', '1'};
    static constexpr size_t kHeaderBytes = 30;

    Method method = Method::ZvcOnly;
    uint8_t stage = 0;
    uint8_t patch_len = 0;
    uint8_t keep = 0;
    QuantParams quant;
    Dims dims;
    ZvcStream payload;

    // Element count the payload must carry for this method and dims.
    uint64_t padded_count() const;

    size_t byte_size() const { return kHeaderBytes + payload.byte_size(); }
    std::vector<uint8_t> to_bytes() const;
    static CompressedActivation from_bytes(std::span<const uint8_t> bytes);
};

void write_compressed(const CompressedActivation& a, const std::filesystem::path& path);
CompressedActivation read_compressed(const std::filesystem::path& path);

// Container-level accounting: original elements at raw_bitwidth versus the
// full serialized container, header included.
double compression_ratio(const CompressedActivation& a, int raw_bitwidth);

} // namespace fmc

#endif // FMC_COMPRESSED_HPP
