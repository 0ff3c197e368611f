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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fmc/asp.hpp"
#include "fmc/codec.hpp"
#include "fmc/compressed.hpp"
#include "fmc/dct.hpp"
#include "fmc/dctcm.hpp"
#include "fmc/errors.hpp"
#include "fmc/quant.hpp"
#include "fmc/tensor.hpp"
#include "fmc/tensor_io.hpp"
#include "fmc/zvc.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using CodeArray = py::array_t<int64_t, py::array::c_style | py::array::forcecast>;

// Arrays with fewer than 4 axes are right-aligned into (n, c, h, w), so a
// (c, h, w) array becomes one batch and a flat vector becomes (1, 1, 1, w).
fmc::Dims dims_from_shape(const py::array& a) {
    if (a.ndim() < 1 || a.ndim() > 4) {
        throw std::invalid_argument("expected an array with 1 to 4 axes, got " +
                                    std::to_string(a.ndim()));
    }
    uint32_t s[4] = {1, 1, 1, 1};
    for (py::ssize_t i = 0; i < a.ndim(); ++i) {
        s[4 - a.ndim() + i] = static_cast<uint32_t>(a.shape(i));
    }
    return fmc::Dims{s[0], s[1], s[2], s[3]};
}

fmc::Tensor tensor_from(const DoubleArray& a) {
    const fmc::Dims d = dims_from_shape(a);
    return fmc::Tensor(d, std::vector<double>(a.data(), a.data() + a.size()));
}

py::array_t<double> array_from(const fmc::Tensor& t) {
    const fmc::Dims& d = t.dims();
    py::array_t<double> out({py::ssize_t(d.n), py::ssize_t(d.c), py::ssize_t(d.h),
                             py::ssize_t(d.w)});
    std::copy(t.data().begin(), t.data().end(), out.mutable_data());
    return out;
}

// Result keeps the input's shape so elementwise wrappers are shape-neutral.
py::array_t<double> array_like(const std::vector<double>& v, const py::array& like) {
    std::vector<py::ssize_t> shape(like.shape(), like.shape() + like.ndim());
    py::array_t<double> out(shape);
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::optional<fmc::QMatrix> qmatrix_from(const std::optional<DoubleArray>& a) {
    if (!a) {
        return {};
    }
    return fmc::QMatrix(a->data(), a->data() + a->size());
}

fmc::CompressedActivation container_from(const py::bytes& data) {
    const std::string raw = data;
    return fmc::CompressedActivation::from_bytes(
        {reinterpret_cast<const uint8_t*>(raw.data()), raw.size()});
}

fmc::DctMatrix matrix_for_length(py::ssize_t n) {
    return fmc::DctMatrix(static_cast<int>(n));
}

py::bytes compress_array(const DoubleArray& x, const std::string& method, int stage,
                         const std::optional<DoubleArray>& qmatrix) {
    fmc::MethodSpec spec = fmc::MethodSpec::parse(method);
    if (auto qm = qmatrix_from(qmatrix)) {
        spec.qmatrix = std::move(qm);
    }
    const std::vector<uint8_t> bytes = fmc::compress(tensor_from(x), spec, stage).to_bytes();
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

py::object decompress_bytes(const py::bytes& data, const std::optional<DoubleArray>& qmatrix,
                            bool dequantize) {
    const fmc::CompressedActivation a = container_from(data);
    fmc::Tensor t = fmc::decompress(a, qmatrix_from(qmatrix));
    if (t.is_quantized()) {
        if (!dequantize) {
            const fmc::Dims& d = t.dims();
            py::array_t<int64_t> codes({py::ssize_t(d.n), py::ssize_t(d.c),
                                        py::ssize_t(d.h), py::ssize_t(d.w)});
            int64_t* out = codes.mutable_data();
            for (uint64_t i = 0; i < t.size(); ++i) {
                out[i] = static_cast<int64_t>(t[i]);
            }
            return codes;
        }
        t = fmc::dequantize(t);
    }
    return array_from(t);
}

py::dict inspect_bytes(const py::bytes& data) {
    const fmc::CompressedActivation a = container_from(data);
    py::dict d;
    d["method"] = std::string(fmc::method_name(a.method));
    d["stage"] = int(a.stage);
    d["patch_len"] = int(a.patch_len);
    d["keep"] = int(a.keep);
    d["bits"] = int(a.quant.bitwidth);
    d["signed"] = a.quant.signedness == fmc::Signedness::SignedSymmetric;
    d["scale"] = a.quant.scale;
    d["shape"] = py::make_tuple(a.dims.n, a.dims.c, a.dims.h, a.dims.w);
    d["elements"] = a.padded_count();
    d["nnz"] = a.payload.nnz;
    d["sparsity"] = a.payload.count == 0
                        ? 0.0
                        : 1.0 - double(a.payload.nnz) / double(a.payload.count);
    d["byte_size"] = a.byte_size();
    return d;
}

py::tuple quantize_array(const DoubleArray& x, int bits, bool signed_values) {
    const fmc::Signedness s =
        signed_values ? fmc::Signedness::SignedSymmetric : fmc::Signedness::Unsigned;
    const fmc::Tensor t = tensor_from(x);
    const fmc::QuantParams q = fmc::calibrate_scale(t, bits, s);
    const fmc::Tensor codes = fmc::quantize(t, q);
    std::vector<py::ssize_t> shape(x.shape(), x.shape() + x.ndim());
    py::array_t<int64_t> out(shape);
    int64_t* p = out.mutable_data();
    for (uint64_t i = 0; i < codes.size(); ++i) {
        p[i] = static_cast<int64_t>(codes[i]);
    }
    return py::make_tuple(out, q.scale);
}

py::array_t<double> dequantize_array(const CodeArray& codes, double scale, int bits,
                                     bool signed_values) {
    if (bits < 1 || bits > 16) {
        throw std::invalid_argument("bits must be in 1..16");
    }
    const fmc::QuantParams q{uint8_t(bits),
                             signed_values ? fmc::Signedness::SignedSymmetric
                                           : fmc::Signedness::Unsigned,
                             scale, 0};
    fmc::validate(q);
    std::vector<double> vals(static_cast<size_t>(codes.size()));
    const int64_t* p = codes.data();
    for (size_t i = 0; i < vals.size(); ++i) {
        vals[i] = fmc::dequantize_value(p[i], q);
    }
    return array_like(vals, codes);
}

py::array_t<double> asp_array(const DoubleArray& x, double threshold) {
    const fmc::Tensor out = fmc::asp_apply(tensor_from(x), fmc::AspConfig{threshold});
    return array_like(out.data(), x);
}

py::array_t<double> dct1d_array(const DoubleArray& x, bool inverse) {
    if (x.ndim() != 1) {
        throw std::invalid_argument("expected a 1-d array");
    }
    const fmc::DctMatrix m = matrix_for_length(x.shape(0));
    const std::span<const double> in{x.data(), size_t(x.size())};
    return array_like(inverse ? fmc::dct1d_inverse(in, m) : fmc::dct1d_forward(in, m), x);
}

py::array_t<double> dct2d_array(const DoubleArray& x, bool inverse) {
    if (x.ndim() != 2 || x.shape(0) != x.shape(1)) {
        throw std::invalid_argument("expected a square 2-d array");
    }
    const fmc::DctMatrix m = matrix_for_length(x.shape(0));
    const std::span<const double> in{x.data(), size_t(x.size())};
    return array_like(inverse ? fmc::dct2d_inverse(in, m) : fmc::dct2d_forward(in, m), x);
}

py::array_t<double> dct_matrix_array(int n) {
    const fmc::DctMatrix m(n);
    py::array_t<double> out({py::ssize_t(n), py::ssize_t(n)});
    std::copy(m.coeffs().begin(), m.coeffs().end(), out.mutable_data());
    return out;
}

fmc::WeightBlock block_from(const DoubleArray& w) {
    if (w.ndim() != 2) {
        throw std::invalid_argument("expected a 2-d weight array (out_channels, n)");
    }
    return fmc::WeightBlock{static_cast<uint32_t>(w.shape(0)),
                            static_cast<uint32_t>(w.shape(1)),
                            std::vector<double>(w.data(), w.data() + w.size())};
}

py::array_t<double> fuse_weights_array(const DoubleArray& w) {
    const fmc::WeightBlock b = block_from(w);
    const fmc::WeightBlock fused = fmc::fuse_weights(b, fmc::DctMatrix(int(b.n)));
    py::array_t<double> out({py::ssize_t(b.out_channels), py::ssize_t(b.n)});
    std::copy(fused.w.begin(), fused.w.end(), out.mutable_data());
    return out;
}

py::array_t<double> apply_fused_array(const DoubleArray& wstar, const DoubleArray& y) {
    const fmc::WeightBlock b = block_from(wstar);
    if (y.ndim() != 1) {
        throw std::invalid_argument("expected a 1-d frequency vector");
    }
    const std::vector<double> out =
        fmc::apply_fused(b, std::span<const double>{y.data(), size_t(y.size())});
    py::array_t<double> res(py::ssize_t(out.size()));
    std::copy(out.begin(), out.end(), res.mutable_data());
    return res;
}

uint64_t macs_wrapper(uint32_t c, uint32_t h, uint32_t w, const std::string& mask,
                      int stage, bool zero_skip) {
    return fmc::count_transform_macs(c, h, w, fmc::MaskSchedule::parse(mask), stage,
                                     zero_skip);
}

py::list generate_wrapper(const std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>& shapes,
                          const std::vector<double>& sparsity, int lowpass_k,
                          uint64_t seed) {
    fmc::SyntheticProfile p;
    for (const auto& [c, h, w] : shapes) {
        p.stage_shapes.push_back({c, h, w});
    }
    p.stage_sparsity = sparsity;
    p.lowpass_k = lowpass_k;
    p.seed = seed;
    py::list out;
    for (const auto& [stage, t] : fmc::generate_synthetic(p)) {
        out.append(py::make_tuple(stage, array_from(t)));
    }
    return out;
}

py::array_t<double> read_tensor_wrapper(const std::string& path, bool dequantize) {
    fmc::Tensor t = fmc::read_tensor(path);
    if (dequantize && t.is_quantized()) {
        t = fmc::dequantize(t);
    }
    return array_from(t);
}

void write_tensor_wrapper(const std::string& path, const DoubleArray& x) {
    fmc::write_tensor(tensor_from(x), path);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of the fmcodec feature-map compression library";
    m.attr("__version__") = "0.1.0";

    py::register_exception<fmc::FormatError>(m, "FormatError", PyExc_ValueError);
    // Registered after the base so their translators run first.
    py::register_exception<fmc::TruncationError>(m, "TruncationError",
                                                 m.attr("FormatError"));
    py::register_exception<fmc::UnsupportedError>(m, "UnsupportedError",
                                                  m.attr("FormatError"));

    m.def("compress", &compress_array, py::arg("x"), py::arg("method"),
          py::arg("stage") = 0, py::arg("qmatrix") = py::none(),
          "Compress an activation array with a method spec like 'zvc(8)', "
          "'asp(0.25)+zvc(8)', 'dct-cm(m1,8)', or 'dct-2d(8)'. Returns the "
          "serialized container as bytes.");
    m.def("decompress", &decompress_bytes, py::arg("data"),
          py::arg("qmatrix") = py::none(), py::arg("dequantize") = true,
          "Decode a compressed container. Transform methods always return "
          "reals; with dequantize=False the ZVC and ASP paths return the raw "
          "integer codes instead. The result is a 4-d (n, c, h, w) array.");
    m.def("inspect", &inspect_bytes, py::arg("data"),
          "Header and payload summary of a compressed container as a dict.");
    m.def(
        "compression_ratio",
        [](const py::bytes& data, int raw_bits) {
            return fmc::compression_ratio(container_from(data), raw_bits);
        },
        py::arg("data"), py::arg("raw_bits") = 8,
        "Original bits over serialized bits, header included.");
    m.def(
        "canonical_method",
        [](const std::string& spec) { return fmc::MethodSpec::parse(spec).describe(); },
        py::arg("spec"), "Parse a method spec and return its canonical form.");

    m.def(
        "dct1d", [](const DoubleArray& x) { return dct1d_array(x, false); },
        py::arg("x"), "Orthonormal 1-d DCT-II of a length-4/8/16 vector.");
    m.def(
        "idct1d", [](const DoubleArray& y) { return dct1d_array(y, true); },
        py::arg("y"), "Exact inverse of dct1d.");
    m.def(
        "dct2d", [](const DoubleArray& x) { return dct2d_array(x, false); },
        py::arg("x"), "Orthonormal 2-d DCT-II of a square 4/8/16 block.");
    m.def(
        "idct2d", [](const DoubleArray& y) { return dct2d_array(y, true); },
        py::arg("y"), "Exact inverse of dct2d.");
    m.def("dct_matrix", &dct_matrix_array, py::arg("n"),
          "The orthonormal DCT-II basis as an (n, n) array; rows index frequency.");

    m.def("quantize", &quantize_array, py::arg("x"), py::arg("bits") = 8,
          py::arg("signed") = false,
          "Calibrate a per-tensor scale and quantize. Returns (codes, scale); "
          "0.0 always maps to code 0.");
    m.def("dequantize", &dequantize_array, py::arg("codes"), py::arg("scale"),
          py::arg("bits") = 8, py::arg("signed") = false,
          "value = code * scale, validated against the code range.");
    m.def("asp", &asp_array, py::arg("x"), py::arg("threshold"),
          "Zero every value with |x| < threshold; keep the rest unchanged.");

    m.def("fuse_weights", &fuse_weights_array, py::arg("w"),
          "W* = W A^T for a (out_channels, n) 1x1-conv weight block, n in "
          "{4, 8, 16}: folds the inverse DCT into the weights.");
    m.def("apply_fused", &apply_fused_array, py::arg("wstar"), py::arg("y_freq"),
          "W* y_freq; equals W @ idct1d(y_freq) when wstar = fuse_weights(W).");
    m.def("count_transform_macs", &macs_wrapper, py::arg("c"), py::arg("h"),
          py::arg("w"), py::arg("mask"), py::arg("stage") = 0,
          py::arg("zero_skip") = true,
          "Transform multiplies for one (c, h, w) activation under a mask "
          "schedule spec like 'm1' or '2/8'.");

    m.def("generate_synthetic", &generate_wrapper, py::arg("shapes"),
          py::arg("sparsity"), py::arg("lowpass_k") = 0, py::arg("seed") = 0,
          "Deterministic per-stage activation stand-ins. shapes is a list of "
          "(c, h, w) tuples; returns a list of (stage, array) pairs.");
    m.def("read_tensor", &read_tensor_wrapper, py::arg("path"),
          py::arg("dequantize") = true,
          "Read an .fmc tensor file as a 4-d float array.");
    m.def("write_tensor", &write_tensor_wrapper, py::arg("path"), py::arg("x"),
          "Write an array as a float32 .fmc tensor file.");
}
