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

#include "nsc/spectral/ops.hpp"

#include <cmath>
#include <cstring>

namespace nsc::spectral {

namespace {

// Iterate storage entries with their signed frequencies.
template <class F>
void for_each_mode(const Grid& g, F&& f)
{
    const int n = g.n, nzc = g.nz();
    for (int i = 0; i < n; ++i) {
        const int x1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int x2 = g.wavenumber(j);
            const std::size_t base = g.index(i, j, 0);
            for (int k = 0; k < nzc; ++k)
                f(base + k, x1, x2, k);
        }
    }
}

} // namespace

void leray_project(VectorField& u)
{
    const Grid& g = u.grid();
    auto* a0 = u[0].data();
    auto* a1 = u[1].data();
    auto* a2 = u[2].data();
    for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
        const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
        if (k2 == 0.0) return;
        const std::complex<double> dot =
            (a0[idx] * double(x1) + a1[idx] * double(x2) + a2[idx] * double(x3)) / k2;
        a0[idx] -= dot * double(x1);
        a1[idx] -= dot * double(x2);
        a2[idx] -= dot * double(x3);
    });
}

void heat_propagate(SpectralField& f, double t)
{
    auto* a = f.data();
    for_each_mode(f.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
        a[idx] *= std::exp(-k2 * t);
    });
}

void heat_propagate(VectorField& u, double t)
{
    for (int i = 0; i < 3; ++i) heat_propagate(u[i], t);
}

void mollify(SpectralField& f, double ell)
{
    auto* a = f.data();
    const double half_l2 = 0.5 * ell * ell;
    for_each_mode(f.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
        a[idx] *= std::exp(-k2 * half_l2);
    });
}

void mollify(VectorField& u, double ell)
{
    for (int i = 0; i < 3; ++i) mollify(u[i], ell);
}

void dealias(SpectralField& f)
{
    const int lim = f.grid().dealias_limit();
    auto* a = f.data();
    for_each_mode(f.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        if (std::abs(x1) > lim || std::abs(x2) > lim || x3 > lim)
            a[idx] = 0.0;
    });
}

void dealias(VectorField& u)
{
    for (int i = 0; i < 3; ++i) dealias(u[i]);
}

SpectralField divergence(const VectorField& u)
{
    SpectralField out(u.grid());
    auto* o = out.data();
    const auto* a0 = u[0].data();
    const auto* a1 = u[1].data();
    const auto* a2 = u[2].data();
    const std::complex<double> I(0.0, 1.0);
    for_each_mode(u.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        o[idx] = I * (a0[idx] * double(x1) + a1[idx] * double(x2) + a2[idx] * double(x3));
    });
    return out;
}

VectorField tensor_divergence(const SymTensorField& T)
{
    VectorField out(T.grid());
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
        auto* o = out[i].data();
        const auto* r0 = T.at(i, 0).data();
        const auto* r1 = T.at(i, 1).data();
        const auto* r2 = T.at(i, 2).data();
        for_each_mode(T.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
            o[idx] = I * (r0[idx] * double(x1) + r1[idx] * double(x2) + r2[idx] * double(x3));
        });
    }
    return out;
}

VectorField gradient(const SpectralField& f)
{
    VectorField out(f.grid());
    const auto* a = f.data();
    const std::complex<double> I(0.0, 1.0);
    auto* o0 = out[0].data();
    auto* o1 = out[1].data();
    auto* o2 = out[2].data();
    for_each_mode(f.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        o0[idx] = I * double(x1) * a[idx];
        o1[idx] = I * double(x2) * a[idx];
        o2[idx] = I * double(x3) * a[idx];
    });
    return out;
}

SymTensorField modified_sym_gradient(const VectorField& f)
{
    SymTensorField out(f.grid());
    const auto* a0 = f[0].data();
    const auto* a1 = f[1].data();
    const auto* a2 = f[2].data();
    const std::complex<double> I(0.0, 1.0);
    auto* t11 = out[0].data();
    auto* t22 = out[1].data();
    auto* t33 = out[2].data();
    auto* t12 = out[3].data();
    auto* t13 = out[4].data();
    auto* t23 = out[5].data();
    for_each_mode(f.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        const std::complex<double> u = a0[idx], v = a1[idx], w = a2[idx];
        const std::complex<double> div = I * (u * double(x1) + v * double(x2) + w * double(x3));
        t11[idx] = I * double(x1) * u - div;
        t22[idx] = I * double(x2) * v - div;
        t33[idx] = I * double(x3) * w - div;
        t12[idx] = 0.5 * I * (double(x2) * u + double(x1) * v);
        t13[idx] = 0.5 * I * (double(x3) * u + double(x1) * w);
        t23[idx] = 0.5 * I * (double(x3) * v + double(x2) * w);
    });
    return out;
}

SymTensorField anti_divergence(const VectorField& V)
{
    SymTensorField out(V.grid());
    const auto* a0 = V[0].data();
    const auto* a1 = V[1].data();
    const auto* a2 = V[2].data();
    const std::complex<double> I(0.0, 1.0);
    auto* t11 = out[0].data();
    auto* t22 = out[1].data();
    auto* t33 = out[2].data();
    auto* t12 = out[3].data();
    auto* t13 = out[4].data();
    auto* t23 = out[5].data();
    for_each_mode(V.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
        if (k2 == 0.0) {
            t11[idx] = t22[idx] = t33[idx] = t12[idx] = t13[idx] = t23[idx] = 0.0;
            return;
        }
        const std::complex<double> v0 = a0[idx], v1 = a1[idx], v2 = a2[idx];
        const std::complex<double> dot = v0 * double(x1) + v1 * double(x2) + v2 * double(x3);
        const double inv2 = 1.0 / k2;
        const double inv4 = inv2 * inv2;
        auto entry = [&](int xi, int xj, const std::complex<double>& vi,
                         const std::complex<double>& vj, bool diag) {
            std::complex<double> e = 0.5 * double(xi) * double(xj) * dot * inv4
                                   - (double(xi) * vj + double(xj) * vi) * inv2;
            if (diag) e += 0.5 * dot * inv2;
            return I * e;
        };
        t11[idx] = entry(x1, x1, v0, v0, true);
        t22[idx] = entry(x2, x2, v1, v1, true);
        t33[idx] = entry(x3, x3, v2, v2, true);
        t12[idx] = entry(x1, x2, v0, v1, false);
        t13[idx] = entry(x1, x3, v0, v2, false);
        t23[idx] = entry(x2, x3, v1, v2, false);
    });
    return out;
}

void laplacian(SpectralField& f)
{
    auto* a = f.data();
    for_each_mode(f.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
        a[idx] *= -k2;
    });
}

VectorField projected_laplacian(const VectorField& f)
{
    VectorField out(f.grid());
    for (int i = 0; i < 3; ++i) {
        out[i] = f[i];
        laplacian(out[i]);
    }
    leray_project(out);
    return out;
}

double sup_norm(const VectorField& u)
{
    const Grid& g = u.grid();
    RealBuffer r0(g), r1(g), r2(g);
    u[0].to_real(r0.data());
    u[1].to_real(r1.data());
    u[2].to_real(r2.data());
    double mx = 0.0;
    const std::size_t m = g.real_size();
    for (std::size_t i = 0; i < m; ++i) {
        const double v = r0[i] * r0[i] + r1[i] * r1[i] + r2[i] * r2[i];
        mx = std::max(mx, v);
    }
    return std::sqrt(mx);
}

namespace {

void half_shift(const SpectralField& f, int shift, SpectralField& out)
{
    const Grid& g = f.grid();
    const double h = 0.5 * g.dx();
    const double s0 = (shift & 1) ? h : 0.0;
    const double s1 = (shift & 2) ? h : 0.0;
    const double s2 = (shift & 4) ? h : 0.0;
    const auto* a = f.data();
    auto* o = out.data();
    const int n = g.n, nzc = g.nz();
    for (int i = 0; i < n; ++i) {
        const double w1 = g.wavenumber(i) * s0;
        for (int j = 0; j < n; ++j) {
            const double w2 = w1 + g.wavenumber(j) * s1;
            const std::size_t base = g.index(i, j, 0);
            for (int k = 0; k < nzc; ++k)
                o[base + k] = a[base + k] * std::polar(1.0, w2 + k * s2);
        }
    }
}

} // namespace

double oversampled_sup(const VectorField& u)
{
    const Grid& g = u.grid();
    RealBuffer r0(g), r1(g), r2(g);
    SpectralField tmp(g);
    double mx = 0.0;
    const std::size_t m = g.real_size();
    for (int shift = 0; shift < 8; ++shift) {
        half_shift(u[0], shift, tmp);
        tmp.to_real(r0.data());
        half_shift(u[1], shift, tmp);
        tmp.to_real(r1.data());
        half_shift(u[2], shift, tmp);
        tmp.to_real(r2.data());
        for (std::size_t i = 0; i < m; ++i) {
            const double v = r0[i] * r0[i] + r1[i] * r1[i] + r2[i] * r2[i];
            mx = std::max(mx, v);
        }
    }
    return std::sqrt(mx);
}

double oversampled_sup_maxentry(const SymTensorField& T)
{
    double mx = 0.0;
    for (int p = 0; p < 6; ++p)
        mx = std::max(mx, T[p].oversampled_sup());
    return mx;
}

VectorField convective_term(const VectorField& u, bool mask)
{
    const Grid& g = u.grid();
    RealBuffer r0(g), r1(g), r2(g);
    u[0].to_real(r0.data());
    u[1].to_real(r1.data());
    u[2].to_real(r2.data());
    const double* rc[3] = {r0.data(), r1.data(), r2.data()};

    VectorField out(g);
    out.zero();
    RealBuffer prod(g);
    SpectralField t(g);
    const std::size_t m = prod.size();
    const std::complex<double> I(0.0, 1.0);
    // The product u_a u_b feeds component b at weight i xi_a and, off the
    // diagonal, component a at weight i xi_b.
    static const int pa[6] = {0, 1, 2, 0, 0, 1};
    static const int pb[6] = {0, 1, 2, 1, 2, 2};
    for (int p = 0; p < 6; ++p) {
        const int a = pa[p], b = pb[p];
        const double* x = rc[a];
        const double* y = rc[b];
        for (std::size_t i = 0; i < m; ++i) prod[i] = x[i] * y[i];
        t.from_real(prod.data());
        const auto* src = t.data();
        auto* oa = out[a].data();
        auto* ob = out[b].data();
        for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
            const double xi[3] = {double(x1), double(x2), double(x3)};
            ob[idx] += I * xi[a] * src[idx];
            if (a != b) oa[idx] += I * xi[b] * src[idx];
        });
    }
    leray_project(out);
    if (mask) dealias(out);
    return out;
}

double mean_square(const VectorField& u)
{
    return u[0].mean_square() + u[1].mean_square() + u[2].mean_square();
}

double energy_fraction_above_cutoff(const VectorField& u)
{
    const Grid& g = u.grid();
    const int lim = g.dealias_limit();
    double above = 0.0, total = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto* a = u[c].data();
        for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
            const double e = g.parseval_weight(x3) * std::norm(a[idx]);
            total += e;
            if (std::abs(x1) > lim || std::abs(x2) > lim || x3 > lim) above += e;
        });
    }
    return total > 0.0 ? above / total : 0.0;
}

double mean_square_gradient(const VectorField& u)
{
    const Grid& g = u.grid();
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto* a = u[i].data();
        for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
            const double k2 = double(x1) * x1 + double(x2) * x2 + double(x3) * x3;
            acc += g.parseval_weight(x3) * k2 * std::norm(a[idx]);
        });
    }
    return acc;
}

double divergence_sup_spectral(const VectorField& u)
{
    const auto* a0 = u[0].data();
    const auto* a1 = u[1].data();
    const auto* a2 = u[2].data();
    double mx = 0.0;
    for_each_mode(u.grid(), [&](std::size_t idx, int x1, int x2, int x3) {
        const std::complex<double> dot =
            a0[idx] * double(x1) + a1[idx] * double(x2) + a2[idx] * double(x3);
        mx = std::max(mx, std::abs(dot));
    });
    return mx;
}

std::vector<double> derivative_sup_norms(const VectorField& u, int n_max)
{
    std::vector<double> out(static_cast<std::size_t>(std::max(n_max, 0)) + 1, 0.0);
    out[0] = sup_norm(u);
    const Grid& g = u.grid();
    const auto ipow = [](double b, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    for (int m = 1; m <= n_max; ++m) {
        // d^alpha multiplies mode xi by i^m xi^alpha; the multiplier at -xi
        // is the conjugate, so Hermitian storage is preserved.
        static const std::complex<double> phase[4] = {
            {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        const std::complex<double> im = phase[m % 4];
        double worst = 0.0;
        for (int c1 = 0; c1 <= m; ++c1) {
            for (int c2 = 0; c2 <= m - c1; ++c2) {
                const int c3 = m - c1 - c2;
                for (int c = 0; c < 3; ++c) {
                    SpectralField d = u[c];
                    auto* a = d.data();
                    for_each_mode(g, [&](std::size_t idx, int x1, int x2, int x3) {
                        a[idx] *= im * (ipow(x1, c1) * ipow(x2, c2) * ipow(x3, c3));
                    });
                    worst = std::max(worst, d.sup_norm());
                }
            }
        }
        out[m] = worst;
    }
    return out;
}

double rel_l2_error(const SpectralField& a, const SpectralField& b)
{
    double num = 0.0, den = 0.0;
    const auto* pa = a.data();
    const auto* pb = b.data();
    for_each_mode(a.grid(), [&](std::size_t idx, int, int, int x3) {
        const double w = a.grid().parseval_weight(x3);
        num += w * std::norm(pa[idx] - pb[idx]);
        den += w * std::norm(pb[idx]);
    });
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double rel_l2_error(const VectorField& a, const VectorField& b)
{
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto* pa = a[i].data();
        const auto* pb = b[i].data();
        for_each_mode(a.grid(), [&](std::size_t idx, int, int, int x3) {
            const double w = a.grid().parseval_weight(x3);
            num += w * std::norm(pa[idx] - pb[idx]);
            den += w * std::norm(pb[idx]);
        });
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace nsc::spectral
