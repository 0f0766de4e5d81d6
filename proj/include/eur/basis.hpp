// Copyright 2026 The eurqrng Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "eur/errors.hpp"
#include "eur/rng.hpp"

namespace eur {

using cplx = std::complex<double>;

inline constexpr double kUnitarityTolerance = 1e-9;

/// Orthonormal basis of C^d stored as a d x d matrix whose column j is the
/// basis vector |b_j>. Column-major.
class Basis {
  public:
    /// Checked constructor: columns must be orthonormal within 1e-9.
    Basis(std::uint32_t d, std::vector<cplx> column_major) : d_(d), m_(std::move(column_major)) {
        detail::require(d_ >= 1, "Basis: dimension must be positive");
        detail::require(m_.size() == std::size_t{d_} * d_, "Basis: matrix size does not match dimension");
        detail::require(is_unitary(), "Basis: columns are not orthonormal");
    }

    /// No unitarity check; for fault injection and for validating external data.
    static Basis unchecked(std::uint32_t d, std::vector<cplx> column_major) {
        Basis b;
        b.d_ = d;
        b.m_ = std::move(column_major);
        detail::require(b.m_.size() == std::size_t{d} * d, "Basis: matrix size does not match dimension");
        return b;
    }

    static Basis computational(std::uint32_t d) {
        std::vector<cplx> m(std::size_t{d} * d, 0.0);
        for (std::uint32_t i = 0; i < d; ++i) {
            m[std::size_t{i} * d + i] = 1.0;
        }
        return Basis(d, std::move(m));
    }

    std::uint32_t dim() const { return d_; }

    /// Entry <row|b_col>.
    cplx operator()(std::uint32_t row, std::uint32_t col) const { return m_[std::size_t{col} * d_ + row]; }

    std::vector<cplx> column(std::uint32_t col) const {
        auto first = m_.begin() + static_cast<std::ptrdiff_t>(std::size_t{col} * d_);
        return {first, first + d_};
    }

    const std::vector<cplx> &data() const { return m_; }

    /// Largest entry of |B^dagger B - I|.
    double unitarity_defect() const {
        double worst = 0.0;
        for (std::uint32_t a = 0; a < d_; ++a) {
            for (std::uint32_t b = a; b < d_; ++b) {
                cplx dot = 0.0;
                for (std::uint32_t r = 0; r < d_; ++r) {
                    dot += std::conj((*this)(r, a)) * (*this)(r, b);
                }
                worst = std::max(worst, std::abs(dot - (a == b ? cplx{1.0} : cplx{0.0})));
            }
        }
        return worst;
    }

    bool is_unitary(double tol = kUnitarityTolerance) const { return unitarity_defect() <= tol; }

  private:
    Basis() = default;
    std::uint32_t d_ = 0;
    std::vector<cplx> m_;
};

/// Fourier basis: column b has entries omega^(a b) / sqrt(d), omega = e^(2 pi i / d).
inline Basis fourier_basis(std::uint32_t d) {
    detail::require(d >= 2, "fourier_basis: d must be >= 2");
    std::vector<cplx> m(std::size_t{d} * d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::uint32_t b = 0; b < d; ++b) {
        for (std::uint32_t a = 0; a < d; ++a) {
            // reduce a*b mod d first so the phase argument stays small
            const auto k = static_cast<double>((std::uint64_t{a} * b) % d);
            const double phase = 2.0 * std::numbers::pi * k / static_cast<double>(d);
            m[std::size_t{b} * d + a] = std::polar(norm, phase);
        }
    }
    return Basis(d, std::move(m));
}

/// Random orthonormal basis: Gram-Schmidt on a complex Gaussian matrix.
inline Basis random_basis(std::uint32_t d, Rng &rng) {
    detail::require(d >= 1, "random_basis: dimension must be positive");
    std::vector<cplx> m(std::size_t{d} * d);
    for (auto &z : m) {
        z = cplx(rng.normal(), rng.normal());
    }
    for (std::uint32_t j = 0; j < d; ++j) {
        cplx *col = &m[std::size_t{j} * d];
        // two passes of modified Gram-Schmidt for numerical orthogonality
        for (int pass = 0; pass < 2; ++pass) {
            for (std::uint32_t i = 0; i < j; ++i) {
                const cplx *prev = &m[std::size_t{i} * d];
                cplx dot = 0.0;
                for (std::uint32_t r = 0; r < d; ++r) {
                    dot += std::conj(prev[r]) * col[r];
                }
                for (std::uint32_t r = 0; r < d; ++r) {
                    col[r] -= dot * prev[r];
                }
            }
        }
        double norm = 0.0;
        for (std::uint32_t r = 0; r < d; ++r) {
            norm += std::norm(col[r]);
        }
        norm = std::sqrt(norm);
        for (std::uint32_t r = 0; r < d; ++r) {
            col[r] /= norm;
        }
    }
    return Basis(d, std::move(m));
}

/// Overlap parameter gamma = -log2 max_{a,b} |<z_a|x_b>|^2, in bits.
inline double gamma_overlap(const Basis &Z, const Basis &X) {
    detail::require(Z.dim() == X.dim(), "gamma_overlap: basis dimensions differ");
    detail::require(Z.is_unitary(), "gamma_overlap: first basis is not unitary");
    detail::require(X.is_unitary(), "gamma_overlap: second basis is not unitary");
    const std::uint32_t d = Z.dim();
    double best = 0.0;
    for (std::uint32_t a = 0; a < d; ++a) {
        for (std::uint32_t b = 0; b < d; ++b) {
            cplx dot = 0.0;
            for (std::uint32_t r = 0; r < d; ++r) {
                dot += std::conj(Z(r, a)) * X(r, b);
            }
            best = std::max(best, std::norm(dot));
        }
    }
    return 0.0 - std::log2(std::min(1.0, best));
}

}  // namespace eur
