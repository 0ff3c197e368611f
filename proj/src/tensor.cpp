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

#include "fmc/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fmc {

Tensor::Tensor(Dims dims, std::vector<double> elems, std::optional<QuantParams> quant)
    : dims_(dims), elems_(std::move(elems)), quant_(std::move(quant)) {
    check_dims();
    if (elems_.size() != dims_.count()) {
        throw std::invalid_argument("tensor: element count " + std::to_string(elems_.size()) +
                                    " does not match dims (" + std::to_string(dims_.count()) + ")");
    }
    if (quant_) {
        validate(*quant_);
        for (double v : elems_) {
            if (v != std::floor(v) || v < double(quant_->code_min()) ||
                v > double(quant_->code_max())) {
                throw std::invalid_argument("tensor: element " + std::to_string(v) +
                                            " is not a code in the quantized range");
            }
        }
    }
}

void Tensor::check_dims() const {
    if (dims_.n < 1 || dims_.c < 1 || dims_.h < 1 || dims_.w < 1) {
        throw std::invalid_argument("tensor: all dims must be >= 1");
    }
}

uint64_t Tensor::nonzero_count() const {
    uint64_t nnz = 0;
    for (double v : elems_) {
        if (v != 0.0) ++nnz;
    }
    return nnz;
}

double Tensor::zero_fraction() const {
    return 1.0 - double(nonzero_count()) / double(size());
}

} // namespace fmc
