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

#include "nsc/spectral/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <numbers>
#include <stdexcept>

namespace nsc::spectral {

namespace {

bool g_measure = false;
int g_threads = 1; // recorded only; execution is sequential

// One cached plan pair per grid size, plus owned scratch cubes.  The c2r
// transform destroys its input, so callers' coefficients are first copied
// into the cache's complex scratch.
struct PlanEntry {
    Grid g;
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;

    explicit PlanEntry(const Grid& grid) : g(grid)
    {
        rbuf = fftw_alloc_real(g.real_size());
        cbuf = fftw_alloc_complex(g.spectral_size());
        const unsigned flags = g_measure ? FFTW_MEASURE : FFTW_ESTIMATE;
        r2c = fftw_plan_dft_r2c_3d(g.n, g.n, g.n, rbuf, cbuf, flags);
        c2r = fftw_plan_dft_c2r_3d(g.n, g.n, g.n, cbuf, rbuf, flags);
        if (!r2c || !c2r) throw std::runtime_error("fft planning failed");
    }
    ~PlanEntry()
    {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
        if (rbuf) fftw_free(rbuf);
        if (cbuf) fftw_free(cbuf);
    }
};

PlanEntry& plans(const Grid& g)
{
    static std::map<int, PlanEntry> cache;
    auto it = cache.find(g.n);
    if (it == cache.end())
        it = cache.try_emplace(g.n, g).first;
    return it->second;
}

} // namespace

void set_planner_measure(bool measure) { g_measure = measure; }
void set_transform_threads(int nthreads) { g_threads = nthreads; (void)g_threads; }

double Grid::dx() const { return 2.0 * std::numbers::pi / n; }

RealBuffer::RealBuffer(const Grid& g) : sz_(g.real_size())
{
    p_ = fftw_alloc_real(sz_);
    if (!p_) throw std::bad_alloc();
    zero();
}
RealBuffer::~RealBuffer() { if (p_) fftw_free(p_); }
RealBuffer::RealBuffer(RealBuffer&& o) noexcept : p_(o.p_), sz_(o.sz_)
{
    o.p_ = nullptr;
    o.sz_ = 0;
}
RealBuffer& RealBuffer::operator=(RealBuffer&& o) noexcept
{
    if (this != &o) {
        if (p_) fftw_free(p_);
        p_ = o.p_; sz_ = o.sz_;
        o.p_ = nullptr; o.sz_ = 0;
    }
    return *this;
}
void RealBuffer::zero() { std::memset(p_, 0, sz_ * sizeof(double)); }

void SpectralField::alloc()
{
    a_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(g_.spectral_size()));
    if (!a_) throw std::bad_alloc();
}

SpectralField::SpectralField(const Grid& g) : g_(g)
{
    alloc();
    zero();
}
SpectralField::~SpectralField()
{
    if (a_) fftw_free(reinterpret_cast<fftw_complex*>(a_));
}
SpectralField::SpectralField(SpectralField&& o) noexcept : g_(o.g_), a_(o.a_)
{
    o.a_ = nullptr;
    o.g_ = Grid();
}
SpectralField& SpectralField::operator=(SpectralField&& o) noexcept
{
    if (this != &o) {
        if (a_) fftw_free(reinterpret_cast<fftw_complex*>(a_));
        g_ = o.g_; a_ = o.a_;
        o.a_ = nullptr; o.g_ = Grid();
    }
    return *this;
}
SpectralField::SpectralField(const SpectralField& o) : g_(o.g_)
{
    if (o.a_) {
        alloc();
        std::memcpy(a_, o.a_, g_.spectral_size() * sizeof(std::complex<double>));
    }
}
SpectralField& SpectralField::operator=(const SpectralField& o)
{
    if (this != &o) {
        SpectralField tmp(o);
        *this = std::move(tmp);
    }
    return *this;
}

void SpectralField::zero()
{
    std::fill_n(a_, g_.spectral_size(), std::complex<double>(0.0, 0.0));
}

void SpectralField::set_mode(int x1, int x2, int x3, std::complex<double> v)
{
    const int n = g_.n;
    if (x3 < 0) {
        set_mode(-x1, -x2, -x3, std::conj(v));
        return;
    }
    const int i = g_.storage_index(x1), j = g_.storage_index(x2);
    const bool plane = (x3 == 0) || (2 * x3 == n);
    const bool self = plane && ((x1 % n + n) % n == ((-x1) % n + n) % n)
                            && ((x2 % n + n) % n == ((-x2) % n + n) % n);
    if (self) v = std::complex<double>(v.real(), 0.0);
    a_[g_.index(i, j, x3)] = v;
    if (plane && !self) {
        const int im = g_.storage_index(-x1), jm = g_.storage_index(-x2);
        a_[g_.index(im, jm, x3)] = std::conj(v);
    }
}

void SpectralField::add_mode(int x1, int x2, int x3, std::complex<double> v)
{
    const int n = g_.n;
    if (x3 < 0) {
        add_mode(-x1, -x2, -x3, std::conj(v));
        return;
    }
    const int i = g_.storage_index(x1), j = g_.storage_index(x2);
    const bool plane = (x3 == 0) || (2 * x3 == n);
    const bool self = plane && ((x1 % n + n) % n == ((-x1) % n + n) % n)
                            && ((x2 % n + n) % n == ((-x2) % n + n) % n);
    if (self) v = std::complex<double>(v.real(), 0.0);
    a_[g_.index(i, j, x3)] += v;
    if (plane && !self) {
        const int im = g_.storage_index(-x1), jm = g_.storage_index(-x2);
        a_[g_.index(im, jm, x3)] += std::conj(v);
    }
}

std::complex<double> SpectralField::mode(int x1, int x2, int x3) const
{
    if (x3 < 0)
        return std::conj(mode(-x1, -x2, -x3));
    return a_[g_.index(g_.storage_index(x1), g_.storage_index(x2), x3)];
}

void SpectralField::from_real(const double* r)
{
    auto& p = plans(g_);
    fftw_execute_dft_r2c(p.r2c, const_cast<double*>(r),
                         reinterpret_cast<fftw_complex*>(a_));
    const double inv = 1.0 / static_cast<double>(g_.real_size());
    const std::size_t m = g_.spectral_size();
    for (std::size_t i = 0; i < m; ++i) a_[i] *= inv;
}

void SpectralField::to_real(double* r) const
{
    auto& p = plans(g_);
    std::memcpy(p.cbuf, a_, g_.spectral_size() * sizeof(fftw_complex));
    fftw_execute_dft_c2r(p.c2r, p.cbuf, r);
}

double SpectralField::sup_norm() const
{
    auto& p = plans(g_);
    std::memcpy(p.cbuf, a_, g_.spectral_size() * sizeof(fftw_complex));
    fftw_execute_dft_c2r(p.c2r, p.cbuf, p.rbuf);
    double mx = 0.0;
    const std::size_t m = g_.real_size();
    for (std::size_t i = 0; i < m; ++i) mx = std::max(mx, std::abs(p.rbuf[i]));
    return mx;
}

double SpectralField::oversampled_sup() const
{
    auto& p = plans(g_);
    const int n = g_.n;
    const int nzc = g_.nz();
    const double h = 0.5 * g_.dx();
    double mx = 0.0;
    for (int shift = 0; shift < 8; ++shift) {
        const double s0 = (shift & 1) ? h : 0.0;
        const double s1 = (shift & 2) ? h : 0.0;
        const double s2 = (shift & 4) ? h : 0.0;
        if (shift == 0) {
            std::memcpy(p.cbuf, a_, g_.spectral_size() * sizeof(fftw_complex));
        } else {
            for (int i = 0; i < n; ++i) {
                const double w1 = g_.wavenumber(i) * s0;
                for (int j = 0; j < n; ++j) {
                    const double w2 = w1 + g_.wavenumber(j) * s1;
                    const std::size_t base = g_.index(i, j, 0);
                    for (int k = 0; k < nzc; ++k) {
                        const std::complex<double> tw =
                            std::polar(1.0, w2 + k * s2);
                        const std::complex<double> z = a_[base + k] * tw;
                        p.cbuf[base + k][0] = z.real();
                        p.cbuf[base + k][1] = z.imag();
                    }
                }
            }
        }
        fftw_execute_dft_c2r(p.c2r, p.cbuf, p.rbuf);
        const std::size_t m = g_.real_size();
        for (std::size_t i = 0; i < m; ++i)
            mx = std::max(mx, std::abs(p.rbuf[i]));
    }
    return mx;
}

double SpectralField::mean_square() const
{
    const int n = g_.n;
    const int nzc = g_.nz();
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::size_t base = g_.index(i, j, 0);
            for (int k = 0; k < nzc; ++k)
                acc += g_.parseval_weight(k) * std::norm(a_[base + k]);
        }
    return acc;
}

void SpectralField::scale(double cfac)
{
    const std::size_t m = g_.spectral_size();
    for (std::size_t i = 0; i < m; ++i) a_[i] *= cfac;
}

void SpectralField::accumulate(const SpectralField& o, std::complex<double> cfac)
{
    const std::size_t m = g_.spectral_size();
    for (std::size_t i = 0; i < m; ++i) a_[i] += cfac * o.a_[i];
}

const SpectralField& SymTensorField::at(int i, int j) const
{
    static constexpr int lut[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    return c[lut[i][j]];
}

} // namespace nsc::spectral
