/***********************************************************************
*
*  Copyright 2026 the nscascade authors
*
*  Licensed under the Apache License, Version 2.0 (the "License");
*  you may not use this file except in compliance with the License.
*  You may obtain a copy of the License at
*
*      http://www.apache.org/licenses/LICENSE-2.0
*
*  Unless required by applicable law or agreed to in writing, software
*  distributed under the License is distributed on an "AS IS" BASIS,
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
*  implied.  See the License for the specific language governing
*  permissions and limitations under the License.
*
************************************************************************/

#ifndef NSC_SPECTRAL_FIELD_HPP
#define NSC_SPECTRAL_FIELD_HPP

#include <complex>
#include <cstddef>
#include "nsc/spectral/grid.hpp"

namespace nsc::spectral {

// Global transform settings.  Must be fixed before the first transform on
// a given grid size; changing them later has no effect on cached plans.
void set_planner_measure(bool measure);
// Retained for interface compatibility; transforms here always run
// sequentially, which keeps outputs bit-reproducible for any request.
void set_transform_threads(int nthreads);

// RAII real-space cube allocated through the FFT library for alignment.
class RealBuffer {
public:
    explicit RealBuffer(const Grid& g);
    ~RealBuffer();
    RealBuffer(RealBuffer&&) noexcept;
    RealBuffer& operator=(RealBuffer&&) noexcept;
    RealBuffer(const RealBuffer&) = delete;
    RealBuffer& operator=(const RealBuffer&) = delete;

    double* data() { return p_; }
    const double* data() const { return p_; }
    double& operator[](std::size_t i) { return p_[i]; }
    double operator[](std::size_t i) const { return p_[i]; }
    std::size_t size() const { return sz_; }
    void zero();

private:
    double* p_ = nullptr;
    std::size_t sz_ = 0;
};

// Scalar 2 pi-periodic field held in spectral (half-complex) form.  The
// coefficient convention is the mean-normalized one: hat f(xi) equals the
// cell average of f(x) exp(-i x . xi), so from_real divides by n^3 and
// to_real is a plain inverse sum.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g);
    ~SpectralField();
    SpectralField(SpectralField&&) noexcept;
    SpectralField& operator=(SpectralField&&) noexcept;
    SpectralField(const SpectralField& o);
    SpectralField& operator=(const SpectralField& o);

    const Grid& grid() const { return g_; }
    std::complex<double>* data() { return a_; }
    const std::complex<double>* data() const { return a_; }
    std::complex<double>& operator[](std::size_t i) { return a_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return a_[i]; }
    std::size_t size() const { return g_.spectral_size(); }

    void zero();

    // Mode access by signed frequency.  Writes keep the half-complex
    // storage Hermitian-consistent: a negative xi3 is routed to the
    // conjugate entry, and on the xi3 = 0 and xi3 = n/2 planes the
    // mirrored partner inside the plane is updated as well.  At
    // self-conjugate points the imaginary part is discarded.
    void set_mode(int x1, int x2, int x3, std::complex<double> v);
    void add_mode(int x1, int x2, int x3, std::complex<double> v);
    std::complex<double> mode(int x1, int x2, int x3) const;

    void from_real(const double* r);
    void to_real(double* r) const;

    // max_x |f(x)| on the collocation grid
    double sup_norm() const;
    // same, on the half-shifted 2x oversampled lattice (8 transforms)
    double oversampled_sup() const;

    // Parseval mean square: cell average of f^2
    double mean_square() const;
    std::complex<double> mean() const { return a_ ? a_[0] : 0.0; }

    void scale(double c);
    void accumulate(const SpectralField& o, std::complex<double> c); // this += c*o

private:
    Grid g_;
    std::complex<double>* a_ = nullptr;
    void alloc();
};

// Divergence-capable bundle of three scalar components.
struct VectorField {
    SpectralField c[3];

    VectorField() = default;
    explicit VectorField(const Grid& g)
        : c{SpectralField(g), SpectralField(g), SpectralField(g)} {}

    const Grid& grid() const { return c[0].grid(); }
    SpectralField& operator[](int i) { return c[i]; }
    const SpectralField& operator[](int i) const { return c[i]; }
    void zero() { for (auto& f : c) f.zero(); }
};

// Symmetric rank-2 tensor field, components in the fixed order
// (11, 22, 33, 12, 13, 23).
struct SymTensorField {
    SpectralField c[6];

    SymTensorField() = default;
    explicit SymTensorField(const Grid& g)
        : c{SpectralField(g), SpectralField(g), SpectralField(g),
            SpectralField(g), SpectralField(g), SpectralField(g)} {}

    const Grid& grid() const { return c[0].grid(); }
    SpectralField& operator[](int i) { return c[i]; }
    const SpectralField& operator[](int i) const { return c[i]; }
    // component by (row, col) indices
    const SpectralField& at(int i, int j) const;
};

} // namespace nsc::spectral

#endif
