// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if anything fails. Random draws are seeded, so the run is reproducible.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmc/asp.hpp"
#include "fmc/codec.hpp"
#include "fmc/dct.hpp"
#include "fmc/dctcm.hpp"
#include "fmc/quant.hpp"
#include "fmc/tensor_io.hpp"
#include "fmc/zvc.hpp"

using namespace fmc;

namespace {

int failures = 0;

void report(bool ok, const std::string& what) {
    std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

double u01(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

Tensor random_real(const Dims& d, double sparsity, std::mt19937_64& rng,
                   bool nonnegative) {
    Tensor t(d);
    for (uint64_t i = 0; i < t.size(); ++i) {
        if (u01(rng) < sparsity) continue;
        const double v = 0.05 + 4.0 * u01(rng);
        t[i] = nonnegative ? v : (rng() & 1 ? v : -v);
    }
    return t;
}

Tensor random_codes(const Dims& d, const QuantParams& q, double sparsity,
                    std::mt19937_64& rng) {
    Tensor t(d);
    const int64_t lo = q.code_min();
    const int64_t hi = q.code_max();
    for (uint64_t i = 0; i < t.size(); ++i) {
        if (u01(rng) < sparsity) continue;
        if (lo == hi) continue; // 1-bit signed has only the zero code
        int64_t v = 0;
        while (v == 0) v = lo + int64_t(rng() % uint64_t(hi - lo + 1));
        t[i] = double(v);
    }
    t.set_quant(q);
    return t;
}

// ---- criterion 1 & 2: ZVC round trips + exact stream length ----------------

void zvc_round_trips() {
    std::mt19937_64 rng(1001);
    const auto t0 = std::chrono::steady_clock::now();
    bool exact = true;
    bool sized = true;
    for (int t = 0; t < 1000; ++t) {
        const Dims d{1 + uint32_t(rng() % 2), 1 + uint32_t(rng() % 32),
                     1 + uint32_t(rng() % 16), 1 + uint32_t(rng() % 16)};
        const int bits = 1 + int(rng() % 16);
        const Signedness s =
            (bits > 1 && (rng() & 1)) ? Signedness::SignedSymmetric : Signedness::Unsigned;
        const QuantParams q{uint8_t(bits), s, 0.5, 0};
        const double sparsity = double(t % 101) / 100.0; // sweeps 0..100%
        const Tensor codes = random_codes(d, q, sparsity, rng);

        const ZvcStream stream = zvc_encode(codes);
        const std::vector<uint8_t> bytes = stream.to_bytes();
        const Tensor back = zvc_decode(ZvcStream::from_bytes(bytes), d, q);
        if (!(back == codes)) exact = false;
        if (bytes.size() != zvc_stream_bytes(d.count(), stream.nnz, bits)) sized = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "1000 randomized ZVC round trips are bit-exact across sparsity 0..100%% "
                  "and widths 1..16 (%.2fs, limit 10s)",
                  secs);
    report(exact && secs < 10.0, buf);

    // layout-only ratio at 60% sparsity for 32-bit values; the idealized
    // figure without headers would be 2.5x
    const uint64_t n = 16384;
    const uint64_t nnz = n - (n * 60) / 100;
    const double ratio = double(n) * 32.0 / (8.0 * double(zvc_stream_bytes(n, nnz, 32)));
    std::snprintf(buf, sizeof buf,
                  "stream length always equals 10 + ceil(count/8) + ceil(nnz*b/8); "
                  "layout-derived ratio at 60%% sparsity, 32-bit values = %.3fx "
                  "(header overhead keeps it under the idealized 2.5x)",
                  ratio);
    report(sized && ratio >= 2.25 && ratio <= 2.40, buf);
}

// ---- criterion 3 & 4: orthonormal bases, transform round trips -------------

void transform_checks() {
    double worst_ortho = 0.0;
    for (int n : {4, 8, 16}) {
        const DctMatrix m(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += m.at(i, k) * m.at(j, k);
                worst_ortho = std::max(worst_ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "DCT bases are orthonormal for n in {4, 8, 16}: max |A A^T - I| = %.2e "
                  "(limit 1e-12)",
                  worst_ortho);
    report(worst_ortho <= 1e-12, buf);

    std::mt19937_64 rng(1004);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const int n = (t % 3 == 0) ? 4 : (t % 3 == 1) ? 8 : 16;
        const DctMatrix m(n);
        std::vector<double> x(static_cast<size_t>(n));
        for (double& v : x) v = 8.0 * u01(rng) - 4.0;
        const std::vector<double> back = dct1d_inverse(dct1d_forward(x, m), m);
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(back[size_t(i)] - x[size_t(i)]));

        if (n == 8) {
            std::vector<double> p(64);
            for (double& v : p) v = 8.0 * u01(rng) - 4.0;
            const std::vector<double> b2 = dct2d_inverse(dct2d_forward(p, m), m);
            for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(b2[size_t(i)] - p[size_t(i)]));
        }
    }
    std::snprintf(buf, sizeof buf,
                  "10000 random 1-D and 2-D patches round trip through the transforms: "
                  "max error %.2e (limit 1e-10)",
                  worst);
    report(worst <= 1e-10, buf);
}

// ---- criterion 5: weight fusion equals transform-then-multiply -------------

void fusion_check() {
    std::mt19937_64 rng(1005);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int n = (t % 3 == 0) ? 4 : (t % 3 == 1) ? 8 : 16;
        const DctMatrix m(n);
        const uint32_t rows = 1 + uint32_t(rng() % 12);
        WeightBlock w{rows, uint32_t(n), std::vector<double>(size_t(rows) * size_t(n))};
        for (double& v : w.w) v = 6.0 * u01(rng) - 3.0;
        std::vector<double> x(static_cast<size_t>(n));
        for (double& v : x) v = 6.0 * u01(rng) - 3.0;

        const std::vector<double> got = apply_fused(fuse_weights(w, m), dct1d_forward(x, m));
        for (uint32_t r = 0; r < rows; ++r) {
            double direct = 0.0;
            for (int k = 0; k < n; ++k) direct += w.at(r, uint32_t(k)) * x[size_t(k)];
            worst = std::max(worst, std::abs(got[r] - direct));
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000 random weight blocks applied to frequency inputs match the direct "
                  "product: max |difference| = %.2e (limit 1e-9)",
                  worst);
    report(worst <= 1e-9, buf);
}

// ---- criterion 6: MAC accounting ----------------------------------------

uint64_t instrumented_macs(uint32_t c, uint32_t h, uint32_t w, const MaskSchedule& mask,
                           int stage, bool zero_skip) {
    const int n = mask.patch_len;
    const int keep = mask.keep_for_stage(stage);
    uint64_t muls = 0;
    const uint64_t patches = (uint64_t(c) + uint64_t(n) - 1) / uint64_t(n) * h * w;
    for (uint64_t p = 0; p < patches; ++p) {
        for (int f = 0; f < n; ++f) {
            if (zero_skip && f >= keep) continue;
            muls += uint64_t(n);
        }
    }
    return muls;
}

void mac_check() {
    std::mt19937_64 rng(1006);
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
        MaskSchedule m;
        const int lens[3] = {4, 8, 16};
        m.patch_len = lens[rng() % 3];
        const int entries = 1 + int(rng() % 5);
        for (int i = 0; i < entries; ++i) m.keep.push_back(1 + int(rng() % m.patch_len));
        const uint32_t c = 1 + uint32_t(rng() % 128);
        const uint32_t h = 1 + uint32_t(rng() % 10);
        const uint32_t w = 1 + uint32_t(rng() % 10);
        const int stage = int(rng() % 8);
        const bool zero_skip = (rng() & 1) != 0;
        if (count_transform_macs(c, h, w, m, stage, zero_skip) !=
            instrumented_macs(c, h, w, m, stage, zero_skip)) {
            ok = false;
        }
    }

    // bottleneck-style block at 8x8 spatial: 1x1 1024->256, 3x3 256->256,
    // 1x1 256->1024
    const uint64_t conv = 1024ull * 256 * 8 * 8 + 9ull * 256 * 256 * 8 * 8 +
                          256ull * 1024 * 8 * 8;
    const MaskSchedule keep2{8, {2}};
    const uint64_t transform = count_transform_macs(1024, 8, 8, keep2, 0, true);
    const double pct = 100.0 * double(transform) / double(conv);

    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "mask-aware MAC counts match an instrumented multiply counter on 100 "
                  "random configs; bottleneck-block overhead %llu / %llu = %.2f%% "
                  "(limit 1%%)",
                  static_cast<unsigned long long>(transform),
                  static_cast<unsigned long long>(conv), pct);
    report(ok && transform == 131072 && conv == 71303168 && pct <= 1.0, buf);
}

// ---- criterion 7: ASP invariants ------------------------------------------

void asp_check() {
    std::mt19937_64 rng(1007);
    bool ok = true;
    for (int t = 0; t < 1000 && ok; ++t) {
        const Dims d{1, 1 + uint32_t(rng() % 16), 1 + uint32_t(rng() % 8),
                     1 + uint32_t(rng() % 8)};
        const Tensor x = random_real(d, 0.3, rng, (rng() & 1) != 0);
        const double tau = u01(rng);
        const Tensor y = asp_apply(x, AspConfig{tau});
        const Tensor y2 = asp_apply(y, AspConfig{tau});
        if (!(y2 == y)) ok = false; // idempotent
        for (uint64_t i = 0; i < x.size(); ++i) {
            const double want = std::abs(x[i]) < tau ? 0.0 : x[i];
            if (y[i] != want) ok = false; // exact survivors, exact zeros
        }
        const Tensor stricter = asp_apply(x, AspConfig{tau + 0.25});
        if (stricter.zero_fraction() < y.zero_fraction()) ok = false; // monotone
    }
    report(ok,
           "ASP invariants hold on 1000 random tensors: idempotent, survivors "
           "bit-identical, sub-threshold values zeroed, sparsity monotone in the "
           "threshold");
}

// ---- criterion 8: channel-DCT on lowpass data ------------------------------

void dctcm_corpus_check() {
    SyntheticProfile p;
    p.stage_shapes = {{8, 32, 32}, {32, 32, 32}, {64, 16, 16}, {128, 8, 8}, {256, 4, 4}};
    p.stage_sparsity = {0.3, 0.4, 0.5, 0.6, 0.7};
    p.lowpass_k = 2;
    p.seed = 1008;

    const MethodSpec dctcm = MethodSpec::parse("dct-cm(2/8,8)");
    const MethodSpec zvc = MethodSpec::parse("zvc(8)");

    bool bounded = true;
    double worst_rel = 0.0;
    uint64_t cm_bytes = 0, zvc_bytes = 0;
    for (const auto& [stage, x] : generate_synthetic(p)) {
        const CompressedActivation a = compress(x, dctcm, stage);
        const Tensor back = decompress(a);

        double num = 0.0, den = 0.0;
        for (uint64_t i = 0; i < x.size(); ++i) {
            num += (back[i] - x[i]) * (back[i] - x[i]);
            den += x[i] * x[i];
        }
        const double rel = std::sqrt(num / den);
        // the generator keeps >= 95% of each patch's energy in bins 0..1, so
        // truncation costs at most sqrt(0.05) in relative L2; quantization
        // adds at most scale/2 per kept slot
        const double kept = double(a.padded_count()) * 2.0 / 8.0;
        const double allowance = 0.05 + std::sqrt(kept) * a.quant.scale / 2.0 / std::sqrt(den);
        if (rel > allowance) bounded = false;
        worst_rel = std::max(worst_rel, rel);

        cm_bytes += a.byte_size();
        zvc_bytes += compress(x, zvc, stage).byte_size();
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "lowpass(2) corpus under a keep-2 mask: relative L2 error %.3f within the "
                  "truncation+quantization allowance, and channel-DCT containers are smaller "
                  "than plain ZVC (%llu vs %llu bytes)",
                  worst_rel, static_cast<unsigned long long>(cm_bytes),
                  static_cast<unsigned long long>(zvc_bytes));
    report(bounded && cm_bytes < zvc_bytes, buf);
}

// ---- criterion 9: quantizer error bound ------------------------------------

void quant_check() {
    std::mt19937_64 rng(1009);
    bool ok = true;
    double worst_frac = 0.0;
    for (int t = 0; t < 200000; ++t) {
        const int bits = 1 + int(rng() % 16);
        const Signedness s =
            (bits > 1 && (rng() & 1)) ? Signedness::SignedSymmetric : Signedness::Unsigned;
        const QuantParams q{uint8_t(bits), s, 0.001 + u01(rng), 0};
        const double top = double(q.code_max()) * q.scale;
        double x = top * u01(rng);
        if (s == Signedness::SignedSymmetric && (rng() & 1)) x = -x;
        const double err = std::abs(dequantize_value(quantize_value(x, q), q) - x);
        if (err > q.scale / 2.0 + 1e-12) ok = false;
        worst_frac = std::max(worst_frac, err / q.scale);
        if (quantize_value(0.0, q) != 0) ok = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "round-trip quantization error <= scale/2 for in-range values and 0 maps "
                  "to code 0 (200000 samples, worst error %.4f * scale)",
                  worst_frac);
    report(ok && worst_frac <= 0.5 + 1e-12, buf);
}

// ---- criterion 10: golden fixtures -----------------------------------------

std::vector<uint8_t> slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string());
    return std::vector<uint8_t>((std::istreambuf_iterator<char>(f)),
                                std::istreambuf_iterator<char>());
}

void golden_check() {
    const std::filesystem::path dir(GOLDEN_DIR);
    bool ok = true;
    std::string detail;
    try {
        const auto fb = slurp(dir / "float_8.fmc");
        const Tensor ft = tensor_from_bytes(fb);
        ok = ok && ft.data() == std::vector<double>{0.0, 0.5, -1.25, 3.75, 0.0, 2.0, -0.125, 100.0};
        ok = ok && tensor_to_bytes(ft) == fb;

        const auto cb = slurp(dir / "codes_u8.fmc");
        const Tensor ct = tensor_from_bytes(cb);
        ok = ok && ct.is_quantized() && ct.quant()->scale == 0.5 &&
             ct.data() == std::vector<double>{0.0, 255.0} && tensor_to_bytes(ct) == cb;

        const auto zb = slurp(dir / "zvc_example.bin");
        const ZvcStream zs = ZvcStream::from_bytes(zb);
        const QuantParams zq{8, Signedness::Unsigned, 1.0, 0};
        const Tensor zt = zvc_decode(zs, Dims{1, 8, 1, 1}, zq);
        ok = ok && zt.data() == std::vector<double>{0, 5, 0, 0, 7, 0, 0, 3};
        ok = ok && zvc_encode(zt).to_bytes() == zb;

        const auto db = slurp(dir / "container_zvc.dcm");
        const CompressedActivation da = CompressedActivation::from_bytes(db);
        ok = ok && da.method == Method::ZvcOnly && da.to_bytes() == db;
        ok = ok && decompress(da).data() == std::vector<double>{0, 5, 0, 0, 7, 0, 0, 3};

        const auto mb = slurp(dir / "container_dctcm.dcm");
        const CompressedActivation ma = CompressedActivation::from_bytes(mb);
        ok = ok && ma.method == Method::DctCm && ma.keep == 1 && ma.to_bytes() == mb;
        const Tensor back = decompress(ma);
        for (uint64_t i = 0; i < back.size(); ++i) {
            if (std::abs(back[i] - 2.0) > 1e-6) ok = false;
        }
        ok = ok && compress(back, MethodSpec::parse("dct-cm(1/8,8)")).to_bytes() == mb;
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string(" (") + e.what() + ")";
    }
    report(ok, "golden fixtures decode to their stated values and re-encode "
               "byte-identically" + detail);
}

} // namespace

int main() {
    zvc_round_trips();
    transform_checks();
    fusion_check();
    mac_check();
    asp_check();
    dctcm_corpus_check();
    quant_check();
    golden_check();

    if (failures) {
        std::printf("%d acceptance criterion(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
