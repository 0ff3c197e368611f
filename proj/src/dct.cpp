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

#include "fmc/dct.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fmc {

namespace {

void check_patch_len(int n) {
    if (n != 4 && n != 8 && n != 16) {
        throw std::invalid_argument("dct: patch length " + std::to_string(n) +
                                    " not in {4, 8, 16}");
    }
}

void check_span(size_t got, size_t want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string("dct: ") + what + " length " +
                                    std::to_string(got) + ", expected " + std::to_string(want));
    }
}

} // namespace

DctMatrix::DctMatrix(int n) : n_(n), a_(size_t(n) * n) {
    check_patch_len(n);
    const double c0 = std::sqrt(1.0 / n);
    const double ci = std::sqrt(2.0 / n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double angle = (j + 0.5) * std::numbers::pi * i / n;
            a_[size_t(i) * n + j] = (i == 0 ? c0 : ci) * std::cos(angle);
        }
    }
}

DctMatrix dct_matrix(int n) {
    return DctMatrix(n);
}

void dct1d_forward(std::span<const double> x, std::span<double> y, const DctMatrix& m) {
    const int n = m.n();
    check_span(x.size(), size_t(n), "input");
    check_span(y.size(), size_t(n), "output");
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += m.at(i, j) * x[j];
        }
        y[i] = acc;
    }
}

std::vector<double> dct1d_forward(std::span<const double> x, const DctMatrix& m) {
    std::vector<double> y(m.n());
    dct1d_forward(x, y, m);
    return y;
}

void dct1d_inverse(std::span<const double> y, std::span<double> x, const DctMatrix& m) {
    const int n = m.n();
    check_span(y.size(), size_t(n), "input");
    check_span(x.size(), size_t(n), "output");
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            acc += m.at(i, j) * y[i];
        }
        x[j] = acc;
    }
}

std::vector<double> dct1d_inverse(std::span<const double> y, const DctMatrix& m) {
    std::vector<double> x(m.n());
    dct1d_inverse(y, x, m);
    return x;
}

namespace {

// out = A * in * A^T when rows_forward, A^T * in * A otherwise.
void dct2d_apply(std::span<const double> in, std::span<double> out, const DctMatrix& m,
                 bool forward) {
    const int n = m.n();
    std::vector<double> tmp(size_t(n) * n);
    // tmp = T * in, with T = A (forward) or A^T (inverse).
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double t = forward ? m.at(i, k) : m.at(k, i);
                acc += t * in[size_t(k) * n + j];
            }
            tmp[size_t(i) * n + j] = acc;
        }
    }
    // out = tmp * T^T
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) {
                const double t = forward ? m.at(j, k) : m.at(k, j);
                acc += tmp[size_t(i) * n + k] * t;
            }
            out[size_t(i) * n + j] = acc;
        }
    }
}

} // namespace

void dct2d_forward(std::span<const double> x, std::span<double> y, const DctMatrix& m) {
    const size_t nn = size_t(m.n()) * m.n();
    check_span(x.size(), nn, "input");
    check_span(y.size(), nn, "output");
    dct2d_apply(x, y, m, true);
}

std::vector<double> dct2d_forward(std::span<const double> x, const DctMatrix& m) {
    std::vector<double> y(size_t(m.n()) * m.n());
    dct2d_forward(x, y, m);
    return y;
}

void dct2d_inverse(std::span<const double> y, std::span<double> x, const DctMatrix& m) {
    const size_t nn = size_t(m.n()) * m.n();
    check_span(y.size(), nn, "input");
    check_span(x.size(), nn, "output");
    dct2d_apply(y, x, m, false);
}

std::vector<double> dct2d_inverse(std::span<const double> y, const DctMatrix& m) {
    std::vector<double> x(size_t(m.n()) * m.n());
    dct2d_inverse(y, x, m);
    return x;
}

} // namespace fmc
