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

#include "fmc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace fmc {

namespace {

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

} // namespace

StatsReport build_stats(const std::vector<Tensor>& blocks,
                        const MethodSpec& spec,
                        int raw_bitwidth,
                        const std::vector<int>& stages,
                        const std::vector<Tensor>& refs) {
    if (blocks.empty()) {
        throw std::invalid_argument("stats: no blocks");
    }
    if (!stages.empty() && stages.size() != blocks.size()) {
        throw std::invalid_argument("stats: stage list must match the block list");
    }
    if (!refs.empty() && refs.size() != blocks.size()) {
        throw std::invalid_argument("stats: reference list must match the block list");
    }
    if (raw_bitwidth < 1) {
        throw std::invalid_argument("stats: raw bitwidth must be >= 1");
    }

    StatsReport report;
    report.method = spec.describe();

    uint64_t raw_total = 0;
    uint64_t compressed_total = 0;
    double sparsity_sum = 0.0;
    double err_num = 0.0; // sum of squared residuals over all elements
    double err_den = 0.0; // sum of squared reference values

    for (size_t i = 0; i < blocks.size(); ++i) {
        const int stage = stages.empty() ? int(i) : stages[i];
        const CompressedActivation a = compress(blocks[i], spec, stage);

        BlockStats row;
        row.block_id = int(i);
        row.stage = stage;
        row.elements = a.padded_count();
        row.nnz = a.payload.nnz;
        row.sparsity = 1.0 - double(row.nnz) / double(row.elements);
        row.raw_bits = blocks[i].dims().count() * uint64_t(raw_bitwidth);
        row.compressed_bits = uint64_t(a.byte_size()) * 8;
        row.ratio = double(row.raw_bits) / double(row.compressed_bits);

        if (!refs.empty()) {
            Tensor recon = decompress(a, spec.qmatrix);
            if (recon.is_quantized()) recon = dequantize(recon);
            const Tensor& ref =
                refs[i].is_quantized() ? dequantize(refs[i]) : refs[i];
            if (ref.dims() != recon.dims()) {
                throw std::invalid_argument("stats: reference shape mismatch on block " +
                                            std::to_string(i));
            }
            double max_abs = 0.0, num = 0.0, den = 0.0;
            for (uint64_t e = 0; e < recon.size(); ++e) {
                const double diff = recon[e] - ref[e];
                max_abs = std::max(max_abs, std::abs(diff));
                num += diff * diff;
                den += ref[e] * ref[e];
            }
            row.max_abs_err = max_abs;
            row.rel_l2_err = std::sqrt(safe_ratio(num, den));
            err_num += num;
            err_den += den;
            report.max_abs_err = std::max(report.max_abs_err.value_or(0.0), max_abs);
        }

        raw_total += row.raw_bits;
        compressed_total += row.compressed_bits;
        sparsity_sum += row.sparsity;
        report.rows.push_back(std::move(row));
    }

    report.aggregate_ratio = double(raw_total) / double(compressed_total);
    report.mean_sparsity = sparsity_sum / double(blocks.size());
    if (!refs.empty()) {
        report.rel_l2_err = std::sqrt(safe_ratio(err_num, err_den));
    }
    return report;
}

std::vector<MethodSpec> table1_preset() {
    const char* specs[] = {
        "zvc(8)",
        "zvc(5)",
        "dct-2d(8)",
        "asp(0.5)+dct-2d(8)",
        "asp(0.25)+zvc(8)",
        "asp(0.5)+zvc(8)",
        "dct-cm(m1,10)",
        "asp(0.125)+dct-cm(m1,10)",
        "dct-cm(m1,8)",
        "dct-cm(m2,6)",
    };
    std::vector<MethodSpec> out;
    out.reserve(std::size(specs));
    for (const char* s : specs) {
        out.push_back(MethodSpec::parse(s));
    }
    return out;
}

} // namespace fmc
