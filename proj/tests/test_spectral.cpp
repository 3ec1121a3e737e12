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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "nsc/spectral/field.hpp"
#include "nsc/spectral/ops.hpp"
#include "nsc/spectral/lp.hpp"
#include "nsc/spectral/snapshot.hpp"

using namespace nsc::spectral;
namespace {

constexpr double kPi = std::numbers::pi;

// random zero-mean real scalar field via random dealiased modes
SpectralField random_scalar(const Grid& g, std::uint64_t seed, int maxfreq)
{
    SpectralField f(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> ki(-maxfreq, maxfreq);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    for (int m = 0; m < 200; ++m) {
        const int x1 = ki(rng), x2 = ki(rng), x3 = ki(rng);
        if (x1 == 0 && x2 == 0 && x3 == 0) continue;
        f.add_mode(x1, x2, x3, {amp(rng), amp(rng)});
    }
    return f;
}

VectorField random_vector(const Grid& g, std::uint64_t seed, int maxfreq)
{
    VectorField u(g);
    for (int i = 0; i < 3; ++i) u[i] = random_scalar(g, seed + 17 * i, maxfreq);
    return u;
}

} // namespace

TEST_CASE("transform round trip and mode conventions")
{
    const Grid g(32);
    SpectralField f(g);
    // f = 3 + 2 sin(x2) + cos(5 x1 - 3 x3)
    f.set_mode(0, 0, 0, 3.0);
    f.set_mode(0, 1, 0, {0.0, -1.0});   // sin: -i at +xi, +i at -xi
    f.set_mode(5, 0, -3, 0.5);          // cos: 1/2 at both conjugates
    RealBuffer r(g);
    f.to_real(r.data());
    // check against the analytic field at a few points
    const double h = g.dx();
    for (int t = 0; t < 5; ++t) {
        const int i = 3 + 5 * t, j = 2 + 3 * t, k = (7 * t) % 32;
        const double x = i * h, y = j * h, z = k * h;
        const double want = 3.0 + 2.0 * std::sin(y) + std::cos(5.0 * x - 3.0 * z);
        CHECK(r[(static_cast<std::size_t>(i) * 32 + j) * 32 + k]
              == doctest::Approx(want).epsilon(1e-12));
    }
    // round trip back to coefficients
    SpectralField f2(g);
    f2.from_real(r.data());
    CHECK(rel_l2_error(f2, f) <= 1e-13);
    CHECK(f2.mode(0, 1, 0).imag() == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(f2.mode(0, -1, 0).imag() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(f2.mode(-5, 0, 3).real() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("parseval identity against direct grid sum")
{
    const Grid g(24);
    SpectralField f = random_scalar(g, 99, 7);
    RealBuffer r(g);
    f.to_real(r.data());
    double direct = 0.0;
    for (std::size_t i = 0; i < g.real_size(); ++i) direct += r[i] * r[i];
    direct /= static_cast<double>(g.real_size());
    CHECK(f.mean_square() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("hermitian consistency on the xi3 = 0 plane")
{
    const Grid g(16);
    SpectralField f(g);
    f.set_mode(3, -2, 0, {0.7, 0.4});
    CHECK(f.mode(-3, 2, 0).real() == doctest::Approx(0.7));
    CHECK(f.mode(-3, 2, 0).imag() == doctest::Approx(-0.4));
    // a transformed real field stays real: imaginary part of c2r output is
    // implicit, so just verify round trip
    RealBuffer r(g);
    f.to_real(r.data());
    SpectralField f2(g);
    f2.from_real(r.data());
    CHECK(rel_l2_error(f2, f) <= 1e-13);
}

TEST_CASE("leray projection kills divergence and is idempotent")
{
    const Grid g(32);
    VectorField u = random_vector(g, 7, 9);
    CHECK(divergence_sup_spectral(u) > 1e-3); // random data starts divergent
    leray_project(u);
    CHECK(divergence_sup_spectral(u) <= 1e-14);
    VectorField v(g);
    for (int i = 0; i < 3; ++i) v[i] = u[i];
    leray_project(v);
    CHECK(rel_l2_error(v, u) <= 1e-14);
}

TEST_CASE("heat propagator matches the exact mode factor")
{
    const Grid g(16);
    SpectralField f(g);
    f.set_mode(2, -1, 3, {1.0, -0.5});
    heat_propagate(f, 0.07);
    const double k2 = 4.0 + 1.0 + 9.0;
    CHECK(std::abs(f.mode(2, -1, 3) - std::complex<double>(1.0, -0.5)
                   * std::exp(-k2 * 0.07)) <= 1e-15);
}

TEST_CASE("divergence of anti-divergence is the identity on zero-mean fields")
{
    const Grid g(64);
    for (int trial = 0; trial < 20; ++trial) {
        VectorField V = random_vector(g, 1000 + trial, 19);
        for (int i = 0; i < 3; ++i) V[i].set_mode(0, 0, 0, 0.0);
        const SymTensorField T = anti_divergence(V);
        const VectorField back = tensor_divergence(T);
        CHECK(rel_l2_error(back, V) <= 1e-10);
    }
}

TEST_CASE("anti-divergence output is symmetric by construction and finite")
{
    const Grid g(32);
    VectorField V = random_vector(g, 5, 9);
    for (int i = 0; i < 3; ++i) V[i].set_mode(0, 0, 0, 0.0);
    const SymTensorField T = anti_divergence(V);
    for (int p = 0; p < 6; ++p)
        CHECK(std::isfinite(T[p].mean_square()));
}

TEST_CASE("divergence of the modified symmetric gradient is half the projected laplacian")
{
    const Grid g(64);
    VectorField f = random_vector(g, 31, 19);
    const SymTensorField D = modified_sym_gradient(f);
    const VectorField lhs = tensor_divergence(D);
    VectorField rhs = projected_laplacian(f);
    for (int i = 0; i < 3; ++i) rhs[i].scale(0.5);
    CHECK(rel_l2_error(lhs, rhs) <= 1e-10);
}

TEST_CASE("dealias zeroes exactly the modes beyond the two-thirds cutoff")
{
    const Grid g(12); // cutoff 4
    SpectralField f(g);
    f.set_mode(4, 0, 0, 1.0);
    f.set_mode(5, 0, 0, 1.0);
    f.set_mode(0, 3, 4, 1.0);
    f.set_mode(1, -5, 2, 1.0);
    dealias(f);
    CHECK(std::abs(f.mode(4, 0, 0)) == 1.0);
    CHECK(std::abs(f.mode(5, 0, 0)) == 0.0);
    CHECK(std::abs(f.mode(0, 3, 4)) == 1.0);
    CHECK(std::abs(f.mode(1, -5, 2)) == 0.0);
}

TEST_CASE("low-pass symbol endpoints and band telescoping")
{
    CHECK(lowpass_symbol(0.0) == 1.0);
    CHECK(lowpass_symbol(2.0 / 3.0) == 1.0);
    CHECK(lowpass_symbol(3.0 / 4.0) == 0.0);
    CHECK(lowpass_symbol(2.0) == 0.0);
    CHECK(band_symbol(1.0) == 1.0);
    CHECK(band_symbol(2.0 / 3.0) == 0.0);
    CHECK(band_symbol(1.5) == 0.0);
    // exact telescoping at sampled radii: lowpass(r) + sum_j band(r/2^j) = 1
    for (double r : {0.01, 0.5, 0.7, 0.73, 1.0, 1.4, 2.0, 3.7, 11.0, 100.0, 140.5}) {
        double total = lowpass_symbol(r);
        for (int j = 0; j < 12; ++j) total += band_symbol(r / std::pow(2.0, j));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("partition of unity on a 64-cube field")
{
    const Grid g(64);
    VectorField u = random_vector(g, 2024, 21);
    VectorField sum(g);
    for (double N : dyadic_frequencies(g)) {
        VectorField b(g);
        for (int i = 0; i < 3; ++i) b[i] = u[i];
        project_band(b, N);
        for (int i = 0; i < 3; ++i) sum[i].accumulate(b[i], 1.0);
    }
    // add the mean block (the low-pass symbol vanishes at every nonzero
    // lattice frequency, so only the zero mode is below the bands)
    for (int i = 0; i < 3; ++i) sum[i].add_mode(0, 0, 0, u[i].mean());
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t m = g.spectral_size();
        for (std::size_t p = 0; p < m; ++p)
            worst = std::max(worst, std::abs(sum[i][p] - u[i][p]));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("besov norm of a single shear mode")
{
    const Grid g(32);
    VectorField u(g);
    // u = 8 sin(4 x3) e1: band N = 4 only, sup 8
    u[0].set_mode(0, 0, 4, {0.0, -4.0});
    const double binf = besov_norm_sup(u, -1.0, 0);
    const double b1 = besov_norm_sup(u, -1.0, 1);
    CHECK(binf == doctest::Approx(8.0 / 4.0).epsilon(1e-12));
    CHECK(b1 == doctest::Approx(8.0 / 4.0).epsilon(1e-12));
    const double l2 = besov_norm_l2(u, -1.0, 2);
    // mean square of the mode is 2 * 16 = 32, L2 norm sqrt(32)
    CHECK(l2 == doctest::Approx(std::sqrt(32.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("besov monotonicity between summation indices")
{
    const Grid g(32);
    VectorField u = random_vector(g, 77, 9);
    const double binf = besov_norm_sup(u, -1.0, 0);
    const double b2 = besov_norm_sup(u, -1.0, 2);
    const double b1 = besov_norm_sup(u, -1.0, 1);
    CHECK(binf <= b2 * (1.0 + 1e-12));
    CHECK(b2 <= b1 * (1.0 + 1e-12));
}

TEST_CASE("shell annulus projector keeps only the annulus")
{
    const Grid g(32);
    SpectralField f(g);
    f.set_mode(0, 0, 2, 1.0);   // |xi| = 2
    f.set_mode(0, 3, 0, 1.0);   // |xi| = 3
    f.set_mode(5, 0, 0, 1.0);   // |xi| = 5
    project_shell_annulus(f, 3.0); // annulus (2.12, 4.24]
    CHECK(std::abs(f.mode(0, 0, 2)) == 0.0);
    CHECK(std::abs(f.mode(0, 3, 0)) == 1.0);
    CHECK(std::abs(f.mode(5, 0, 0)) == 0.0);
}

TEST_CASE("oversampled sup catches peaks between collocation points")
{
    const Grid g(16);
    // f(x) = cos(4 x1 - pi/4): its peak sits exactly halfway between
    // collocation points, so the plain grid reads cos(pi/4) while the
    // half-shifted lattice hits the peak value 1.
    SpectralField f(g);
    f.set_mode(4, 0, 0, 0.5 * std::polar(1.0, -kPi / 4.0));
    const double plain = f.sup_norm();
    const double over = f.oversampled_sup();
    CHECK(plain == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(over == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vector sup norms: plain and oversampled agree on smooth data")
{
    const Grid g(48);
    VectorField u = random_vector(g, 4321, 5); // well resolved
    const double plain = sup_norm(u);
    const double over = oversampled_sup(u);
    CHECK(over >= plain - 1e-12);
    CHECK(over <= plain * 1.05); // low-frequency field: refinement adds little
}

TEST_CASE("snapshot round trip preserves coefficients and time")
{
    const Grid g(16);
    VectorField u = random_vector(g, 55, 5);
    const std::string path = "/tmp/nsc_test_snapshot.bin";
    write_snapshot(path, 0.375, u);
    const Snapshot s = read_snapshot(path);
    CHECK(s.time == 0.375);
    CHECK(s.comps.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(rel_l2_error(s.comps[i], u[i]) <= 1e-15);
    std::remove(path.c_str());
}

TEST_CASE("snapshot rejects corrupted headers")
{
    const std::string path = "/tmp/nsc_test_snapshot_bad.bin";
    {
        std::FILE* fp = std::fopen(path.c_str(), "wb");
        const char junk[64] = "not a snapshot";
        std::fwrite(junk, 1, 64, fp);
        std::fclose(fp);
    }
    CHECK_THROWS(read_snapshot(path));
    std::remove(path.c_str());
}
