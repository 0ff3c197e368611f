#ifndef FMC_TESTS_HELPERS_HPP
#define FMC_TESTS_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "fmc/quant.hpp"
#include "fmc/tensor.hpp"

namespace fmct {

inline double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * u01(rng);
}

// Real-valued tensor with roughly `sparsity` zeros, values in [-1, 1].
inline fmc::Tensor random_tensor(const fmc::Dims& d, double sparsity, std::mt19937_64& rng,
                                 bool nonnegative = false) {
    std::vector<double> vals(d.count());
    for (double& v : vals) {
        if (u01(rng) < sparsity) {
            v = 0.0;
        } else {
            v = nonnegative ? u01(rng) : uniform(rng, -1.0, 1.0);
        }
    }
    return fmc::Tensor(d, std::move(vals));
}

// Quantized tensor with uniformly random in-range codes, `sparsity` zeros.
inline fmc::Tensor random_codes(const fmc::Dims& d, const fmc::QuantParams& q, double sparsity,
                                std::mt19937_64& rng) {
    const int64_t lo = q.code_min();
    const int64_t hi = q.code_max();
    std::vector<double> vals(d.count());
    for (double& v : vals) {
        if (u01(rng) < sparsity || lo == hi) {
            v = 0.0;
        } else {
            const uint64_t span = uint64_t(hi - lo) + 1;
            v = double(lo + int64_t(rng() % span));
        }
    }
    return fmc::Tensor(d, std::move(vals), q);
}

inline double max_abs_diff(const fmc::Tensor& a, const fmc::Tensor& b) {
    double m = 0.0;
    for (uint64_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

inline double rel_l2(const fmc::Tensor& recon, const fmc::Tensor& ref) {
    double num = 0.0, den = 0.0;
    for (uint64_t i = 0; i < ref.size(); ++i) {
        const double diff = recon[i] - ref[i];
        num += diff * diff;
        den += ref[i] * ref[i];
    }
    return den == 0.0 ? (num == 0.0 ? 0.0 : 1.0) : std::sqrt(num / den);
}

} // namespace fmct

#endif // FMC_TESTS_HELPERS_HPP
