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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fmc/codec.hpp"
#include "fmc/errors.hpp"
#include "fmc/stats.hpp"
#include "fmc/strategy.hpp"
#include "fmc/tensor_io.hpp"

namespace {

struct GenOpts {
    std::string out_dir;
    int stages = 5;
    bool stages_given = false;
    std::vector<std::string> shapes;
    std::vector<double> sparsity;
    std::string spectrum = "lowpass:2";
    uint64_t seed = 0;
};

struct CompressOpts {
    std::string input;
    std::string output;
    std::string method = "zvc(8)";
    bool method_given = false;
    std::string strategy;
    std::string mask;
    std::string qmatrix;
    int stage = 0;
    int bits = 0;              // 0: take from the method spec
    double asp_threshold = -1; // <0: take from the method spec
    int raw_bits = 0;          // 0: input bitwidth (8 for float inputs)
};

struct DecompressOpts {
    std::string input;
    std::string output;
    std::string qmatrix;
    bool dequantize = false;
};

struct StatsOpts {
    std::vector<std::string> inputs;
    std::vector<std::string> methods;
    std::string preset;
    std::vector<std::string> refs;
    std::vector<int> stages;
    int raw_bits = 8;
};

struct FuseOpts {
    std::string input;
    std::string output;
    int probes = 8;
    uint64_t seed = 0;
};

double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

fmc::QMatrix load_qmatrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path);
    }
    fmc::QMatrix q;
    std::string line;
    while (std::getline(f, line)) {
        if (const size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        double v = 0.0;
        while (ss >> v) q.push_back(v);
        if (!ss.eof()) {
            throw std::invalid_argument("qmatrix: non-numeric token in " + path);
        }
    }
    if (q.size() != 64) {
        throw std::invalid_argument("qmatrix: " + path + " holds " + std::to_string(q.size()) +
                                    " values, need 64");
    }
    return q;
}

fmc::SyntheticProfile profile_from(const GenOpts& o) {
    static const fmc::SyntheticProfile::StageShape kDefaultShapes[] = {
        {8, 32, 32}, {32, 32, 32}, {64, 16, 16}, {128, 8, 8}, {256, 4, 4},
    };
    static const double kDefaultSparsity[] = {0.3, 0.4, 0.5, 0.6, 0.7};

    fmc::SyntheticProfile p;
    p.seed = o.seed;

    int stages = o.stages;
    if (!o.shapes.empty() && !o.stages_given) {
        stages = int(o.shapes.size());
    }
    if (stages < 1) {
        throw std::invalid_argument("gen: need at least one stage");
    }

    if (o.shapes.empty()) {
        if (stages > int(std::size(kDefaultShapes))) {
            throw std::invalid_argument("gen: more than " +
                                        std::to_string(std::size(kDefaultShapes)) +
                                        " stages need explicit --shape values");
        }
        p.stage_shapes.assign(kDefaultShapes, kDefaultShapes + stages);
    } else {
        if (int(o.shapes.size()) != stages) {
            throw std::invalid_argument("gen: got " + std::to_string(o.shapes.size()) +
                                        " shapes for " + std::to_string(stages) + " stages");
        }
        for (const std::string& s : o.shapes) {
            unsigned c = 0, h = 0, w = 0;
            char tail = 0;
            if (std::sscanf(s.c_str(), "%u,%u,%u%c", &c, &h, &w, &tail) != 3) {
                throw std::invalid_argument("gen: shape '" + s + "' is not c,h,w");
            }
            p.stage_shapes.push_back({c, h, w});
        }
    }

    if (o.sparsity.empty()) {
        if (stages > int(std::size(kDefaultSparsity))) {
            throw std::invalid_argument("gen: explicit --sparsity needed for that many stages");
        }
        p.stage_sparsity.assign(kDefaultSparsity, kDefaultSparsity + stages);
    } else {
        if (int(o.sparsity.size()) != stages) {
            throw std::invalid_argument("gen: got " + std::to_string(o.sparsity.size()) +
                                        " sparsity values for " + std::to_string(stages) +
                                        " stages");
        }
        p.stage_sparsity = o.sparsity;
    }

    if (o.spectrum == "flat") {
        p.lowpass_k = 0;
    } else if (o.spectrum.starts_with("lowpass:")) {
        p.lowpass_k = std::stoi(o.spectrum.substr(8));
        if (p.lowpass_k < 1 || p.lowpass_k > 8) {
            throw std::invalid_argument("gen: lowpass k outside 1..8");
        }
    } else {
        throw std::invalid_argument("gen: spectrum must be 'flat' or 'lowpass:<k>'");
    }
    return p;
}

int run_gen(const GenOpts& o) {
    const fmc::SyntheticProfile p = profile_from(o);
    std::filesystem::create_directories(o.out_dir);
    const auto stages = fmc::generate_synthetic(p);
    std::printf("stages=%zu spectrum=%s seed=%llu out_dir=%s\n", stages.size(),
                o.spectrum.c_str(), (unsigned long long)o.seed, o.out_dir.c_str());
    for (const auto& [stage, t] : stages) {
        const std::filesystem::path path =
            std::filesystem::path(o.out_dir) / ("stage" + std::to_string(stage) + ".fmc");
        fmc::write_tensor(t, path);
        const fmc::Dims d = t.dims();
        std::printf("stage=%d file=%s c=%u h=%u w=%u elements=%llu zero_fraction=%.4f\n",
                    stage, path.c_str(), d.c, d.h, d.w, (unsigned long long)t.size(),
                    t.zero_fraction());
    }
    return 0;
}

fmc::MethodSpec spec_from(const CompressOpts& o) {
    fmc::MethodSpec spec;
    if (!o.strategy.empty()) {
        if (o.method_given) {
            throw std::invalid_argument("pass either --method or --strategy, not both");
        }
        const fmc::StageStrategy s = fmc::StageStrategy::parse_file(o.strategy);
        if (size_t(o.stage) >= s.stages.size()) {
            throw std::invalid_argument("strategy file covers stages 0.." +
                                        std::to_string(s.stages.size() - 1) + ", got --stage " +
                                        std::to_string(o.stage));
        }
        spec = s.stages[size_t(o.stage)];
    } else {
        spec = fmc::MethodSpec::parse(o.method);
    }
    if (!o.mask.empty()) {
        if (spec.method != fmc::Method::DctCm) {
            throw std::invalid_argument("--mask only applies to dct-cm");
        }
        spec.mask = fmc::MaskSchedule::parse(o.mask);
    }
    if (!o.qmatrix.empty()) {
        if (spec.method != fmc::Method::Dct2d) {
            throw std::invalid_argument("--qmatrix only applies to dct-2d");
        }
        spec.qmatrix = load_qmatrix(o.qmatrix);
    }
    if (o.bits != 0) spec.bits = o.bits;
    if (o.asp_threshold >= 0) {
        spec.asp_threshold = o.asp_threshold;
        if (spec.method == fmc::Method::ZvcOnly && spec.asp_threshold > 0) {
            spec.method = fmc::Method::AspZvc;
        }
        if (spec.method == fmc::Method::AspZvc && spec.asp_threshold == 0) {
            spec.method = fmc::Method::ZvcOnly;
        }
    }
    return spec;
}

int run_compress(const CompressOpts& o) {
    const fmc::Tensor x = fmc::read_tensor(o.input);
    const fmc::MethodSpec spec = spec_from(o);
    const fmc::CompressedActivation a = fmc::compress(x, spec, o.stage);
    fmc::write_compressed(a, o.output);

    const int raw_bits =
        o.raw_bits != 0 ? o.raw_bits : (x.is_quantized() ? x.quant()->bitwidth : 8);
    const uint64_t elements = a.padded_count();
    std::printf("file=%s method=%s stage=%d elements=%llu nnz=%u sparsity=%.4f "
                "raw_bits=%llu compressed_bytes=%zu ratio=%.4f\n",
                o.output.c_str(), spec.describe().c_str(), o.stage,
                (unsigned long long)elements, a.payload.nnz,
                1.0 - double(a.payload.nnz) / double(elements),
                (unsigned long long)(x.dims().count() * uint64_t(raw_bits)), a.byte_size(),
                fmc::compression_ratio(a, raw_bits));
    return 0;
}

int run_decompress(const DecompressOpts& o) {
    const fmc::CompressedActivation a = fmc::read_compressed(o.input);
    std::optional<fmc::QMatrix> qm;
    if (!o.qmatrix.empty()) qm = load_qmatrix(o.qmatrix);
    fmc::Tensor t = fmc::decompress(a, qm);
    if (o.dequantize && t.is_quantized()) {
        t = fmc::dequantize(t);
    }
    fmc::write_tensor(t, o.output);
    const fmc::Dims d = t.dims();
    std::printf("file=%s method=%s stage=%u dims=%u,%u,%u,%u dtype=%s\n", o.output.c_str(),
                fmc::method_name(a.method), a.stage, d.n, d.c, d.h, d.w,
                t.is_quantized() ? "codes" : "float32");
    return 0;
}

int run_stats(const StatsOpts& o) {
    std::vector<fmc::MethodSpec> specs;
    if (!o.preset.empty()) {
        if (!o.methods.empty()) {
            throw std::invalid_argument("stats: pass either --preset or --method, not both");
        }
        if (o.preset != "table1") {
            throw std::invalid_argument("stats: unknown preset '" + o.preset + "'");
        }
        specs = fmc::table1_preset();
    } else {
        for (const std::string& m : o.methods) {
            specs.push_back(fmc::MethodSpec::parse(m));
        }
    }
    if (specs.empty()) {
        throw std::invalid_argument("stats: no methods; pass --method or --preset");
    }
    if (!o.refs.empty() && o.refs.size() != o.inputs.size()) {
        throw std::invalid_argument("stats: --ref count must match the input count");
    }
    if (!o.stages.empty() && o.stages.size() != o.inputs.size()) {
        throw std::invalid_argument("stats: --stages count must match the input count");
    }

    std::vector<fmc::Tensor> blocks, refs;
    for (const std::string& path : o.inputs) blocks.push_back(fmc::read_tensor(path));
    for (const std::string& path : o.refs) refs.push_back(fmc::read_tensor(path));

    for (const fmc::MethodSpec& spec : specs) {
        const fmc::StatsReport r =
            fmc::build_stats(blocks, spec, o.raw_bits, o.stages, refs);
        std::printf("method %s\n", r.method.c_str());
        std::printf("  %5s %5s %9s %9s %9s %7s", "block", "stage", "elements", "nnz",
                    "sparsity", "ratio");
        if (r.max_abs_err) std::printf(" %11s %10s", "max_abs_err", "rel_l2");
        std::printf("\n");
        for (const fmc::BlockStats& row : r.rows) {
            std::printf("  %5d %5d %9llu %9llu %9.4f %7.3f", row.block_id, row.stage,
                        (unsigned long long)row.elements, (unsigned long long)row.nnz,
                        row.sparsity, row.ratio);
            if (row.max_abs_err) std::printf(" %11.4g %10.4g", *row.max_abs_err,
                                             *row.rel_l2_err);
            std::printf("\n");
        }
        std::printf("  aggregate ratio=%.3f mean_sparsity=%.4f", r.aggregate_ratio,
                    r.mean_sparsity);
        if (r.rel_l2_err) std::printf(" max_abs_err=%.4g rel_l2=%.4g", *r.max_abs_err,
                                      *r.rel_l2_err);
        std::printf("\n");

        for (const fmc::BlockStats& row : r.rows) {
            std::printf("method=%s block=%d stage=%d elements=%llu nnz=%llu sparsity=%.6f "
                        "raw_bits=%llu compressed_bits=%llu ratio=%.6f",
                        r.method.c_str(), row.block_id, row.stage,
                        (unsigned long long)row.elements, (unsigned long long)row.nnz,
                        row.sparsity, (unsigned long long)row.raw_bits,
                        (unsigned long long)row.compressed_bits, row.ratio);
            if (row.max_abs_err) {
                std::printf(" max_abs_err=%.6g rel_l2_err=%.6g", *row.max_abs_err,
                            *row.rel_l2_err);
            }
            std::printf("\n");
        }
        std::printf("method=%s aggregate_ratio=%.6f mean_sparsity=%.6f", r.method.c_str(),
                    r.aggregate_ratio, r.mean_sparsity);
        if (r.rel_l2_err) {
            std::printf(" max_abs_err=%.6g rel_l2_err=%.6g", *r.max_abs_err, *r.rel_l2_err);
        }
        std::printf("\n");
    }
    return 0;
}

int run_fuse(const FuseOpts& o) {
    if (o.probes < 1) {
        throw std::invalid_argument("fuse-weights: probes must be >= 1");
    }
    fmc::Tensor t = fmc::read_tensor(o.input);
    if (t.is_quantized()) t = fmc::dequantize(t);
    const fmc::Dims d = t.dims();
    if (d.h != 1 || d.w != 1 || (d.c != 4 && d.c != 8 && d.c != 16)) {
        throw std::domain_error("fuse-weights: input must be (c_out, n, 1, 1) with n in "
                                "{4, 8, 16}, got (" +
                                std::to_string(d.n) + ", " + std::to_string(d.c) + ", " +
                                std::to_string(d.h) + ", " + std::to_string(d.w) + ")");
    }
    const int n = int(d.c);
    const fmc::DctMatrix A(n);

    fmc::WeightBlock w;
    w.out_channels = d.n;
    w.n = uint32_t(n);
    w.w = t.data();
    const fmc::WeightBlock wstar = fmc::fuse_weights(w, A);
    fmc::write_tensor(fmc::Tensor(d, wstar.w), o.output);

    std::mt19937_64 rng(o.seed);
    double max_residual = 0.0;
    std::vector<double> y(static_cast<size_t>(n)), x(static_cast<size_t>(n));
    for (int p = 0; p < o.probes; ++p) {
        for (double& v : y) v = 2.0 * u01(rng) - 1.0;
        fmc::dct1d_inverse(y, x, A);
        const std::vector<double> fused = fmc::apply_fused(wstar, y);
        for (uint32_t r = 0; r < w.out_channels; ++r) {
            double direct = 0.0;
            for (int k = 0; k < n; ++k) direct += w.at(r, uint32_t(k)) * x[size_t(k)];
            max_residual = std::max(max_residual, std::abs(direct - fused[r]));
        }
    }
    std::printf("file=%s n=%d out_channels=%u probes=%d max_residual=%.3g\n",
                o.output.c_str(), n, w.out_channels, o.probes, max_residual);
    std::printf("fused weights match conv-after-inverse-transform to %.3g\n", max_residual);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"transform-based compression codec for CNN feature maps"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "fmc 0.1.0");

    GenOpts gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate synthetic per-stage activations");
    gen_cmd->add_option("--out-dir", gen.out_dir, "output directory")->required();
    CLI::Option* stages_opt = gen_cmd->add_option("--stages", gen.stages, "number of stages");
    gen_cmd->add_option("--shape", gen.shapes, "per-stage shape c,h,w (repeatable)");
    gen_cmd->add_option("--sparsity", gen.sparsity, "per-stage zero fractions, comma separated")
        ->delimiter(',');
    gen_cmd->add_option("--spectrum", gen.spectrum, "flat or lowpass:<k> (default lowpass:2)");
    gen_cmd->add_option("--seed", gen.seed, "rng seed");

    CompressOpts comp;
    CLI::App* comp_cmd = app.add_subcommand("compress", "compress one activation tensor");
    comp_cmd->add_option("input", comp.input, "input .fmc tensor")->required();
    comp_cmd->add_option("-o,--out", comp.output, "output .dcm file")->required();
    CLI::Option* method_opt =
        comp_cmd->add_option("--method", comp.method, "method spec, e.g. dct-cm(m1,8)");
    comp_cmd->add_option("--strategy", comp.strategy,
                         "strategy file; picks the method for --stage");
    comp_cmd->add_option("--mask", comp.mask, "mask schedule override for dct-cm");
    comp_cmd->add_option("--stage", comp.stage, "network stage of this tensor");
    comp_cmd->add_option("--bits", comp.bits, "coefficient bit width override");
    comp_cmd->add_option("--asp-threshold", comp.asp_threshold, "ASP threshold override");
    comp_cmd->add_option("--qmatrix", comp.qmatrix, "8x8 quantization matrix file for dct-2d");
    comp_cmd->add_option("--raw-bits", comp.raw_bits, "reference width for the ratio");

    DecompressOpts dec;
    CLI::App* dec_cmd = app.add_subcommand("decompress", "reconstruct a compressed tensor");
    dec_cmd->add_option("input", dec.input, "input .dcm file")->required();
    dec_cmd->add_option("-o,--out", dec.output, "output .fmc tensor")->required();
    dec_cmd->add_option("--qmatrix", dec.qmatrix, "matrix used at encode time (dct-2d)");
    dec_cmd->add_flag("--dequantize", dec.dequantize, "write float32 instead of codes");

    StatsOpts st;
    CLI::App* st_cmd = app.add_subcommand("stats", "per-block compression statistics");
    st_cmd->add_option("inputs", st.inputs, "input .fmc tensors")->required();
    st_cmd->add_option("--method", st.methods, "method spec (repeatable)");
    st_cmd->add_option("--preset", st.preset, "method sweep preset (table1)");
    st_cmd->add_option("--ref", st.refs, "reference tensor per input (repeatable)");
    st_cmd->add_option("--stages", st.stages, "stage ids per input, comma separated")
        ->delimiter(',');
    st_cmd->add_option("--raw-bits", st.raw_bits, "reference width for ratios");

    FuseOpts fuse;
    CLI::App* fuse_cmd = app.add_subcommand(
        "fuse-weights", "fold the inverse transform into a (c_out, n, 1, 1) weight block");
    fuse_cmd->add_option("input", fuse.input, "input .fmc weight block")->required();
    fuse_cmd->add_option("-o,--out", fuse.output, "output .fmc fused block")->required();
    fuse_cmd->add_option("--probes", fuse.probes, "random probe count");
    fuse_cmd->add_option("--seed", fuse.seed, "rng seed");

    try {
        app.parse(argc, argv);
        gen.stages_given = stages_opt->count() > 0;
        comp.method_given = method_opt->count() > 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen_cmd->parsed()) return run_gen(gen);
        if (comp_cmd->parsed()) return run_compress(comp);
        if (dec_cmd->parsed()) return run_decompress(dec);
        if (st_cmd->parsed()) return run_stats(st);
        if (fuse_cmd->parsed()) return run_fuse(fuse);
    } catch (const fmc::FormatError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
