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

#include "fmc/asp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fmc {

Tensor asp_apply(const Tensor& x, const AspConfig& cfg) {
    if (cfg.threshold < 0.0 || !std::isfinite(cfg.threshold)) {
        throw std::invalid_argument("asp: threshold must be finite and >= 0");
    }
    std::vector<double> out(x.size());
    for (uint64_t i = 0; i < x.size(); ++i) {
        const double v = x[i];
        // Strict comparison: values equal to the threshold survive.
        out[i] = std::abs(v) < cfg.threshold ? 0.0 : v;
    }
    if (x.is_quantized()) {
        return Tensor(x.dims(), std::move(out), *x.quant());
    }
    return Tensor(x.dims(), std::move(out));
}

} // namespace fmc
