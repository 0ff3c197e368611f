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

#ifndef FMC_TENSOR_HPP
#define FMC_TENSOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fmc/quant.hpp"

namespace fmc {

struct Dims {
    uint32_t n = 1;
    uint32_t c = 1;
    uint32_t h = 1;
    uint32_t w = 1;

    uint64_t count() const {
        return uint64_t(n) * c * h * w;
    }

    bool operator==(const Dims&) const = default;
};

inline uint64_t flat_index(const Dims& d, uint32_t n, uint32_t c, uint32_t h, uint32_t w) {
    return ((uint64_t(n) * d.c + c) * d.h + h) * d.w + w;
}

// 4-D activation/weight array, row-major in (n, c, h, w). Elements are kept
// as doubles; a quantized tensor holds integer codes plus their QuantParams.
class Tensor {
public:
    Tensor() = default;

    Tensor(Dims dims, double fill = 0.0)
        : dims_(dims), elems_(dims.count(), fill) {
        check_dims();
    }

    Tensor(Dims dims, std::vector<double> elems, std::optional<QuantParams> quant = {});

    const Dims& dims() const { return dims_; }
    uint64_t size() const { return elems_.size(); }

    double& operator[](uint64_t i) { return elems_[i]; }
    double operator[](uint64_t i) const { return elems_[i]; }

    double& at(uint32_t n, uint32_t c, uint32_t h, uint32_t w) {
        return elems_[flat_index(dims_, n, c, h, w)];
    }
    double at(uint32_t n, uint32_t c, uint32_t h, uint32_t w) const {
        return elems_[flat_index(dims_, n, c, h, w)];
    }

    std::vector<double>& data() { return elems_; }
    const std::vector<double>& data() const { return elems_; }

    const std::optional<QuantParams>& quant() const { return quant_; }
    void set_quant(std::optional<QuantParams> q) { quant_ = std::move(q); }
    bool is_quantized() const { return quant_.has_value(); }

    uint64_t nonzero_count() const;
    double zero_fraction() const;

    bool operator==(const Tensor&) const = default;

private:
    void check_dims() const;

    Dims dims_{};
    std::vector<double> elems_{1, 0.0};
    std::optional<QuantParams> quant_{};
};

} // namespace fmc

#endif // FMC_TENSOR_HPP
