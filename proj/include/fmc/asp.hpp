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

#ifndef FMC_ASP_HPP
#define FMC_ASP_HPP

#include "fmc/tensor.hpp"

namespace fmc {

// Approximate sparsity preprocessing: zero every value whose magnitude falls
// strictly below the threshold, keep everything else bit-identical.
struct AspConfig {
    double threshold = 0.0; // >= 0, in real (dequantized) activation units; 0 disables
};

// Elementwise: |x| < threshold -> 0, else x unchanged. Idempotent, and the
// comparison is on |x| so the map is safe on signed DCT coefficients as well
// as post-ReLU activations. Expects an unquantized tensor.
Tensor asp_apply(const Tensor& x, const AspConfig& cfg);

} // namespace fmc

#endif // FMC_ASP_HPP
