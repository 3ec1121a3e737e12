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
#include <complex>
#include <string>

#include "nsc/construction/principal.hpp"
#include "nsc/construction/scales.hpp"
#include "nsc/spectral/ops.hpp"

using namespace nsc::construction;
using nsc::spectral::Grid;
using nsc::spectral::VectorField;

namespace {

TargetSpec mini_target()
{
    TargetSpec t;
    t.theta_star = {4.0, 0.0, 0.0};
    t.eta_star = {0, 0, 1};
    return t;
}

TargetSpec reference_target()
{
    TargetSpec t;
    t.theta_star = {32.0, 0.0, 0.0};
    t.eta_star = {0, 0, 2};
    return t;
}

ScaleTable mini_scales()
{
    return build_scales(mini_target(), 1.5, 0.85, 6.0, 2, 0.5, 64);
}

// Built once; the table is immutable and several suites read it.
const CoefficientTable& mini_table()
{
    static const CoefficientTable table = build_coefficients(mini_scales());
    return table;
}

template <class E, class F>
std::string message_of(F&& f)
{
    try {
        f();
    } catch (const E& e) {
        return e.what();
    } catch (...) {
    }
    return {};
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("scale ladder matches worked examples")
{
    // |eta| = 4 growing with base 10
    TargetSpec t4;
    t4.theta_star = {4.0, 0.0, 0.0};
    t4.eta_star = {0, 0, 4};
    const ScaleTable s10 = build_scales(t4, 1.5, 0.85, 10.0, 2, 0.5, 288);
    REQUIRE(s10.N.size() == 3);
    CHECK(s10.N[0] == 4);
    CHECK(s10.N[1] == 13);
    CHECK(s10.N[2] == 72);

    const ScaleTable ref = build_scales(reference_target(), 1.5, 0.85, 16.0, 2, 0.5, 256);
    CHECK(ref.N[0] == 2);
    CHECK(ref.N[1] == 8);
    CHECK(ref.N[2] == 64);
    CHECK(ref.M[1] == 5);
    CHECK(ref.M[2] == 26);
    CHECK(ref.C[0] == doctest::Approx(32.0).epsilon(1e-13));
    CHECK(ref.C[1] == doctest::Approx(32.0).epsilon(1e-13));
    CHECK(ref.C[2] == doctest::Approx(128.0).epsilon(1e-13));
    // amplitude ratio 16 puts the top coefficient at twice the top frequency
    CHECK(ref.C[2] == doctest::Approx(2.0 * ref.N[2]).epsilon(1e-13));
    CHECK(ref.ell[1] == doctest::Approx(std::pow(2.0, -15.0 / 4.0)).epsilon(1e-13));
    CHECK(ref.recursion_defect() <= 1e-12);

    const ScaleTable mini = mini_scales();
    CHECK(mini.N[0] == 1);
    CHECK(mini.N[1] == 3);
    CHECK(mini.N[2] == 10);
    CHECK(mini.M[1] == 2);
    CHECK(mini.M[2] == 6);
    CHECK(mini.C[0] == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(mini.C[1] == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(mini.C[2] == doctest::Approx(14.142135623730951).epsilon(1e-13));
    CHECK(mini.recursion_defect() <= 1e-12);
}

TEST_CASE("automatic stage count")
{
    CHECK(choose_kstar(16.0) == 9);
    CHECK(choose_kstar(4.0) == 8);
    CHECK(choose_kstar(1.0) == 1);
    CHECK(choose_kstar(1.01) == 1);
    CHECK(contains(message_of<ConfigurationError>([] { choose_kstar(0.5); }),
                   "|theta_star|/|eta_star| >= 1"));
}

TEST_CASE("configuration rejection names the violated constraint")
{
    const TargetSpec t = mini_target();
    auto scales = [&](double b, double gamma, double A, int ks, double e0, int n) {
        return [=] { build_scales(t, b, gamma, A, ks, e0, n); };
    };
    CHECK(contains(message_of<ConfigurationError>(scales(2.5, 0.85, 6, 2, 0.5, 64)),
                   "1 < b < 2"));
    CHECK(contains(message_of<ConfigurationError>(scales(1.5, 0.80, 6, 2, 0.5, 64)),
                   "gamma > (b+1)/(2b)"));
    CHECK(contains(message_of<ConfigurationError>(scales(1.5, 0.95, 6, 2, 0.5, 64)),
                   "gamma < (5-b)/4"));
    CHECK(contains(message_of<ConfigurationError>(scales(1.5, 0.85, 0.5, 2, 0.5, 64)),
                   "A > 1"));
    CHECK(contains(message_of<ConfigurationError>(scales(1.5, 0.85, 6, 2, 1.5, 64)),
                   "0 < epsilon0 < 1"));
    CHECK(contains(message_of<ConfigurationError>(scales(1.5, 0.85, 6, 2, 0.5, 63)),
                   "n >= 4 and n even"));

    TargetSpec bad = t;
    bad.theta_star = {4.0, 0.0, 1.0};
    CHECK(contains(message_of<ConfigurationError>([&] {
                       build_scales(bad, 1.5, 0.85, 6.0, 2, 0.5, 64);
                   }),
                   "theta_star . eta_star = 0"));

    // undersized grid for the top stage
    const std::string res = message_of<ResolutionError>(scales(1.5, 0.85, 6, 2, 0.5, 32));
    CHECK(contains(res, "n >= 4 N_{k_star}"));
    CHECK(contains(res, "N_2 = 10"));

    // the automatic stage count for ratio 16 is far beyond any grid; the
    // failure must still report which ladder was attempted
    const std::string autores = message_of<ResolutionError>([&] {
        build_scales(reference_target(), 1.5, 0.85, 16.0, 0, 0.5, 64);
    });
    CHECK(contains(autores, "k_star = 9"));
}

TEST_CASE("wave synthesis keeps the frequency ring and the cutoff cube")
{
    const Grid g(64);
    const auto frame = nsc::geometry::make_nash_frame();
    const auto lines = nsc::geometry::make_mikado_lines();
    const auto profile = nsc::geometry::make_tube_profile(1.0 / 15.0, 0.5);
    const std::complex<double> phi0 =
        nsc::geometry::tube_fourier_coefficient(profile, lines, 0, {0, 0, 0});
    REQUIRE(std::abs(phi0) > 0.0);

    // widely separated carrier and localization: only the plain carrier fits
    std::size_t kept = 0;
    auto w = synthesize_wave(g, frame, lines, profile, 0, 10, 6, &kept);
    CHECK(kept == 1);
    CHECK(w.mean_square() == doctest::Approx(0.5 * std::norm(phi0)).epsilon(1e-12));
    CHECK(w.sup_norm() == doctest::Approx(std::abs(phi0)).epsilon(1e-10));

    // close scales: the ring admits sidebands; count enumerated by hand from
    // 2025 <= (4p +- 60)^2 + 400 q^2 <= 6400
    const Grid g256(256);
    kept = 0;
    synthesize_wave(g256, frame, lines, profile, 0, 60, 4, &kept);
    CHECK(kept == 35);

    // cutoff cube smaller than the ring radius leaves nothing
    const Grid g128(128);
    kept = 99;
    synthesize_wave(g128, frame, lines, profile, 0, 60, 4, &kept);
    CHECK(kept == 0);
}

TEST_CASE("first potential and its deformation are exact")
{
    const CoefficientTable& tb = mini_table();
    CHECK(tb.c_star == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tb.a0 == doctest::Approx(-1.0).epsilon(1e-14));
    // |D psi_0| peaks at c_star / N_0
    CHECK(tb.dpsi_sup[0] == doctest::Approx(0.5).epsilon(1e-12));

    // the stage-0 flow component is the unit shear profile
    const VectorField v0 = flow_component(tb, 0);
    CHECK(nsc::spectral::sup_norm(v0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto m = v0[0].mode(0, 0, 1);
    CHECK(m.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(m.imag() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(v0[1].mode(0, 0, 1)) <= 1e-14);
    CHECK(std::abs(v0[2].mode(0, 0, 1)) <= 1e-14);

    // activation and decay of the assembled component
    const double t = 0.03;
    const VectorField vt = assemble_v_single(tb, 0, t);
    const double expected = 4.0 * (-std::expm1(-2.0 * 9.0 * t)) * std::exp(-t);
    CHECK(nsc::spectral::sup_norm(vt) == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("stage identities hold at collocation points")
{
    const CoefficientTable& tb = mini_table();
    REQUIRE(tb.stages.size() == 2);
    const std::complex<double> phi0 = nsc::geometry::tube_fourier_coefficient(
        tb.profile, tb.lines, 0, {0, 0, 0});
    for (const auto& st : tb.stages) {
        for (int j = 0; j < 6; ++j) {
            CHECK(st.modes[j] == 1);
            CHECK(st.B[j] == doctest::Approx(0.5 * std::norm(phi0)).epsilon(1e-12));
        }
        CHECK(st.identity_residual <= 1e-10);
        const double n_prev = double(tb.scales.N[st.k - 1]);
        CHECK(st.p == doctest::Approx(28.0 * n_prev * st.S).epsilon(1e-9));
        CHECK(st.eps_max <= 1.0 / 7.0 + 1e-12);
        CHECK(st.a_min >= 1.0);
        CHECK(st.a_max <= 32000.0);
    }

    // stage 1 rides a single cosine, so the coefficient extremes follow in
    // closed form from the frame data
    const StageDiagnostics& s1 = tb.stages[0];
    const double alpha = std::sqrt(28.0 * 1.0 * s1.S / s1.B[0]);
    const double spread = (25.0 / 24.0) / 7.0;
    CHECK(s1.a_min == doctest::Approx(alpha * std::sqrt(0.5 - spread)).epsilon(1e-9));
    CHECK(s1.a_max == doctest::Approx(alpha * std::sqrt(0.5 + spread)).epsilon(1e-9));
}

TEST_CASE("slow stress layer cancels against the designed transfer")
{
    const CoefficientTable& tb = mini_table();
    const CancellationReport r0 = verify_key_cancellation(tb, 0, 0.0);
    CHECK(r0.rhs_sup > 0.0);
    CHECK(r0.residual <= 1e-10);
    const CancellationReport r1 = verify_key_cancellation(tb, 1, 0.0);
    CHECK(r1.rhs_sup > 0.0);
    CHECK(r1.residual <= 1e-10);

    // the time dependence is a common scalar factor on both sides
    const double t = 0.01;
    const CancellationReport r0t = verify_key_cancellation(tb, 0, t);
    CHECK(r0t.residual <= 1e-10);
    const double n1 = double(tb.scales.N[1]);
    CHECK(r0t.rhs_sup / r0.rhs_sup ==
          doctest::Approx(std::exp(-2.0 * n1 * n1 * t)).epsilon(1e-12));

    CHECK_THROWS_AS((void)verify_key_cancellation(tb, 2, 0.0), std::out_of_range);
    CHECK_THROWS_AS((void)verify_key_cancellation(tb, -1, 0.0), std::out_of_range);
}

TEST_CASE("flow split separates the principal layer")
{
    const CoefficientTable& tb = mini_table();

    // before activation the whole component is error
    const FlowSplit at0 = split_component(tb, 1, 0.0);
    CHECK(nsc::spectral::sup_norm(assemble_v_single(tb, 1, 0.0)) <= 1e-12);
    const double p0 = nsc::spectral::sup_norm(at0.principal);
    CHECK(p0 > 0.0);
    CHECK(nsc::spectral::sup_norm(at0.error) == doctest::Approx(p0).epsilon(1e-10));

    // the stage-0 error is the activation deficit in closed form
    const double t = 0.05;
    const FlowSplit s0 = split_component(tb, 0, t);
    const double deficit = 4.0 * std::exp(-2.0 * 9.0 * t) * std::exp(-t);
    CHECK(nsc::spectral::sup_norm(s0.error) == doctest::Approx(deficit).epsilon(1e-10));
    CHECK(nsc::spectral::sup_norm(s0.principal) ==
          doctest::Approx(4.0 * std::exp(-t)).epsilon(1e-11));

    // reconstruction: principal + error reproduces the component exactly
    VectorField rec = s0.principal;
    for (int c = 0; c < 3; ++c) rec[c].accumulate(s0.error[c], 1.0);
    const VectorField direct = assemble_v_single(tb, 0, t);
    for (int c = 0; c < 3; ++c) rec[c].accumulate(direct[c], -1.0);
    CHECK(nsc::spectral::sup_norm(rec) <= 1e-12);

    CHECK_THROWS_AS((void)split_component(tb, 0, -1.0), std::range_error);
}

TEST_CASE("initial data report")
{
    const CoefficientTable& tb = mini_table();
    const InitialData data = assemble_u0(tb);
    CHECK(data.norms.mean_abs == 0.0);
    CHECK(data.norms.sup > 0.0);
    CHECK(std::isfinite(data.norms.besov));
    CHECK(data.norms.besov < 1e5);
    CHECK(data.norms.peak_band == doctest::Approx(8.0));
    CHECK(data.norms.leakage < 0.1);

    // all mass below the dealias cutoff
    CHECK(nsc::spectral::energy_fraction_above_cutoff(data.u0) <= 1e-12);

    CHECK_THROWS_AS((void)assemble_v(tb, -0.5), std::range_error);
}

TEST_CASE("force residual on the assembled flow")
{
    const CoefficientTable& tb = mini_table();
    const double alpha = default_force_exponent(tb.scales.b, tb.scales.gamma);
    CHECK(alpha == doctest::Approx(std::min(0.5 / 16.0, (0.85 * 1.5 - 1.0) / 4.0)));

    const ForceSample s = force_residual(tb, 0.05, alpha, alpha);
    CHECK(s.t == 0.05);
    CHECK(s.g_sup > 0.0);
    CHECK(s.transport_sup > 0.0);
    CHECK(s.ratio == doctest::Approx(s.g_sup / s.transport_sup));
    CHECK(std::isfinite(s.bound_shape));
    CHECK_THROWS_AS((void)force_residual(tb, 0.0, alpha, alpha), std::range_error);

    const auto profile = force_profile(tb, 0.01, 0.1, 4, alpha, alpha);
    REQUIRE(profile.size() == 5);
    CHECK(profile.front().t == doctest::Approx(0.01));
    CHECK(profile.back().t == doctest::Approx(0.1));
    for (std::size_t i = 1; i < profile.size(); ++i)
        CHECK(profile[i].t > profile[i - 1].t);
}

TEST_CASE("pure shear solves the unforced equations")
{
    const ForceSample s = shear_force_check(mini_target(), Grid(64), 0.1);
    CHECK(s.transport_sup <= 1e-12);
    CHECK(s.g_sup <= 1e-12);
}

TEST_CASE("table summary serializes")
{
    const std::string j = table_summary_json(mini_table());
    CHECK(contains(j, "\"k_star\": 2"));
    CHECK(contains(j, "\"identity_residual\""));
    CHECK(contains(j, "\"a_range\""));
    CHECK(contains(j, "\"recursion_defect\""));
}
