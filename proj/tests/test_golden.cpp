// Pins the serialized formats to fixtures generated from first principles
// by golden/make_golden.py. Every file must decode to the stated values and
// re-encode byte-identically.
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "fmc/codec.hpp"
#include "fmc/tensor_io.hpp"
#include "fmc/zvc.hpp"

using namespace fmc;

namespace {

std::filesystem::path golden(const char* name) {
    return std::filesystem::path(GOLDEN_DIR) / name;
}

std::vector<uint8_t> slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(bool(f));
    return std::vector<uint8_t>((std::istreambuf_iterator<char>(f)),
                                std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("golden float tensor file") {
    const auto bytes = slurp(golden("float_8.fmc"));
    REQUIRE(bytes.size() == 64);
    const Tensor t = tensor_from_bytes(bytes);
    CHECK(t.dims() == Dims{1, 8, 1, 1});
    CHECK(!t.is_quantized());
    const std::vector<double> want{0.0, 0.5, -1.25, 3.75, 0.0, 2.0, -0.125, 100.0};
    CHECK(t.data() == want); // all values are exact in float32
    CHECK(tensor_to_bytes(t) == bytes);
}

TEST_CASE("golden quantized tensor file") {
    const auto bytes = slurp(golden("codes_u8.fmc"));
    REQUIRE(bytes.size() == 34);
    const Tensor t = tensor_from_bytes(bytes);
    REQUIRE(t.is_quantized());
    CHECK(t.quant()->bitwidth == 8);
    CHECK(t.quant()->signedness == Signedness::Unsigned);
    CHECK(t.quant()->scale == 0.5);
    CHECK(t.data() == std::vector<double>{0.0, 255.0});
    CHECK(dequantize(t).data() == std::vector<double>{0.0, 127.5});
    CHECK(tensor_to_bytes(t) == bytes);
}

TEST_CASE("golden bare ZVC stream") {
    const auto bytes = slurp(golden("zvc_example.bin"));
    REQUIRE(bytes.size() == 14);
    const ZvcStream s = ZvcStream::from_bytes(bytes);
    CHECK(s.count == 8);
    CHECK(s.value_bitwidth == 8);
    CHECK(!s.signed_values);
    CHECK(s.nnz == 3);
    CHECK(s.bitmap == std::vector<uint8_t>{0x92});
    CHECK(s.packed_values == std::vector<uint8_t>{0x05, 0x07, 0x03});
    CHECK(s.to_bytes() == bytes);

    const QuantParams q{8, Signedness::Unsigned, 1.0, 0};
    const Tensor t = zvc_decode(s, Dims{1, 8, 1, 1}, q);
    CHECK(t.data() == std::vector<double>{0, 5, 0, 0, 7, 0, 0, 3});
    CHECK(zvc_encode(t).to_bytes() == bytes);
}

TEST_CASE("golden zvc activation container") {
    const auto bytes = slurp(golden("container_zvc.dcm"));
    REQUIRE(bytes.size() == 44);
    const CompressedActivation a = CompressedActivation::from_bytes(bytes);
    CHECK(a.method == Method::ZvcOnly);
    CHECK(a.stage == 0);
    CHECK(a.quant.scale == 0.5);
    CHECK(a.dims == Dims{1, 8, 1, 1});
    CHECK(a.to_bytes() == bytes);

    const Tensor codes = decompress(a);
    CHECK(codes.data() == std::vector<double>{0, 5, 0, 0, 7, 0, 0, 3});

    // recompressing the decoded codes reproduces the container bit for bit
    MethodSpec spec;
    spec.method = Method::ZvcOnly;
    spec.bits = 8;
    CHECK(compress(codes, spec).to_bytes() == bytes);
}

TEST_CASE("golden channel-DCT container") {
    const auto bytes = slurp(golden("container_dctcm.dcm"));
    REQUIRE(bytes.size() == 42);
    const CompressedActivation a = CompressedActivation::from_bytes(bytes);
    CHECK(a.method == Method::DctCm);
    CHECK(a.patch_len == 8);
    CHECK(a.keep == 1);
    CHECK(a.quant.signedness == Signedness::SignedSymmetric);
    CHECK(a.payload.nnz == 1);
    CHECK(a.to_bytes() == bytes);

    // constant 2.0 across 8 channels: one DC coefficient 4*sqrt(2) at code
    // 127, so the reconstruction is constant 2.0 up to float32 scale rounding
    const Tensor back = decompress(a);
    CHECK(back.dims() == Dims{1, 8, 1, 1});
    for (uint64_t i = 0; i < back.size(); ++i) {
        CHECK(std::abs(back[i] - 2.0) <= 1e-6);
    }

    MethodSpec spec = MethodSpec::parse("dct-cm(1/8,8)");
    CHECK(compress(back, spec).to_bytes() == bytes);
}
