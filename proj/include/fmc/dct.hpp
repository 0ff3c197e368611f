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

#ifndef FMC_DCT_HPP
#define FMC_DCT_HPP

#include <span>
#include <vector>

namespace fmc {

// Orthonormal DCT-II basis:
//
//   a[i][j] = c(i) * cos((j + 0.5) * pi * i / n),
//   c(0) = sqrt(1/n), c(i != 0) = sqrt(2/n)
//
// Rows index frequency, so row 0 is the constant sqrt(1/n) and A * A^T = I.
class DctMatrix {
public:
    explicit DctMatrix(int n); // n in {4, 8, 16}, else std::invalid_argument

    int n() const { return n_; }
    double at(int i, int j) const { return a_[size_t(i) * n_ + j]; }
    const std::vector<double>& coeffs() const { return a_; } // row-major n*n

private:
    int n_ = 0;
    std::vector<double> a_;
};

DctMatrix dct_matrix(int n);

// y = A x; |x| must equal m.n() (std::invalid_argument otherwise).
void dct1d_forward(std::span<const double> x, std::span<double> y, const DctMatrix& m);
std::vector<double> dct1d_forward(std::span<const double> x, const DctMatrix& m);

// x = A^T y, the exact inverse of dct1d_forward.
void dct1d_inverse(std::span<const double> y, std::span<double> x, const DctMatrix& m);
std::vector<double> dct1d_inverse(std::span<const double> y, const DctMatrix& m);

// Y = A X A^T on a row-major n*n block: the separable 2-D analogue of y = A x
// (1-D transform down every column, then along every row).
void dct2d_forward(std::span<const double> x, std::span<double> y, const DctMatrix& m);
std::vector<double> dct2d_forward(std::span<const double> x, const DctMatrix& m);

// X = A^T Y A, the exact inverse of dct2d_forward.
void dct2d_inverse(std::span<const double> y, std::span<double> x, const DctMatrix& m);
std::vector<double> dct2d_inverse(std::span<const double> y, const DctMatrix& m);

} // namespace fmc

#endif // FMC_DCT_HPP
