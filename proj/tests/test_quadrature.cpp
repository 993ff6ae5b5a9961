#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polylab/analytic.hpp"
#include "polylab/quadrature.hpp"
#include "polylab/samplers.hpp"

using namespace polylab;
using namespace polylab::quad;
using polylab::analytic::AnalyticContext;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

std::function<double(double)> samplers_density_probe(int dof) {
    auto law = samplers::chi_squared_radius_density(dof);
    return [law](double r) { return law.density ? law.density(r) : 0.0; };
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("adaptive kernel on elementary integrals") {
    const auto r1 = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(std::fabs(r1.value - 1.0 / 3.0) <= std::max(r1.error_bound, 1e-14));

    const auto r2 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(std::fabs(r2.value - 2.0) <= std::max(r2.error_bound, 1e-13));

    // integrable sqrt singularity at the left endpoint
    const auto r3 = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(std::fabs(r3.value - 2.0) <= std::max(r3.error_bound, 1e-10));
}

TEST_CASE("interval budget exhaustion raises with the best estimate attached") {
    QuadratureSpec tight;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 1e-300;
    tight.max_intervals = 4;
    try {
        integrate_adaptive([](double x) { return 1.0 / std::sqrt(1e-12 + x); }, 0.0, 1.0,
                           tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("halving tolerances moves a converged result by less than its bound") {
    AnalyticContext ctx(8);
    QuadratureSpec spec;
    const auto a = integrate_pairwise_normalization(ctx, spec);
    QuadratureSpec half = spec;
    half.rel_tol /= 2.0;
    half.abs_tol /= 2.0;
    const auto b = integrate_pairwise_normalization(ctx, half);
    CHECK(std::fabs(a.value - b.value) <= a.error_bound + b.error_bound);

    const auto t1 = expected_turning_angle_numeric(ctx, spec);
    const auto t2 = expected_turning_angle_numeric(ctx, half);
    CHECK(std::fabs(t1.value - t2.value) <= t1.error_bound + t2.error_bound);
}

TEST_CASE("pairwise normalization equals 1") {
    for (int n : {4, 6, 10, 50}) {
        const auto r = integrate_pairwise_normalization(AnalyticContext(n), {});
        CHECK(std::fabs(r.value - 1.0) < 1e-11);
    }
}

TEST_CASE("z truncation: pushing the cutoff out 10 units changes nothing visible") {
    AnalyticContext ctx(6);
    QuadratureSpec spec;
    auto f = [&ctx](double z) {
        if (z <= 0.0) return 0.0;
        return std::exp(ctx.ln_pair_z_part(z) + std::log(z) - 0.5 * z);
    };
    const double upper = find_upper_cutoff(f, spec);
    const auto a = integrate_adaptive(f, 0.0, upper, spec);
    const auto b = integrate_adaptive(f, 0.0, upper + 10.0, spec);
    CHECK(std::fabs(a.value - b.value) < spec.abs_tol);
}

TEST_CASE("turning angle quadrature reproduces the closed form to >= 9 digits") {
    for (int n : {4, 5, 6, 12, 25}) {
        const auto r = expected_turning_angle_numeric(AnalyticContext(n), {});
        const double exact = analytic::exact_expected_turning_angle(n);
        CHECK(rel_err(r.value, exact) < 1e-9);
    }
}

TEST_CASE("inner x-integral agrees with the K_1 integral-representation identity") {
    // int_{z/2}^inf e^{-x} (pi z + pi sqrt(4x^2-z^2) - 2 pi x) dx
    //   route A: substitution x = z/2 + s^2 (the production path)
    //   route B: pi ( z K_1(z/2) - 2 e^{-z/2} ) with z K_1(z/2) from the
    //            Bessel integral representation (z^2/2) int_1^inf e^{-tz/2} sqrt(t^2-1) dt,
    //            itself regularized by t = 1 + u^2.
    QuadratureSpec spec;
    spec.rel_tol = 1e-12;
    for (double z : {0.5, 2.0, 5.0}) {
        const auto route_a = integrate_adaptive(
            [z](double s) {
                return 4.0 * kPi * std::exp(-0.5 * z - s * s) * s * s *
                       (std::sqrt(z + s * s) - s);
            },
            0.0, 12.0, spec);
        const auto bessel_part = integrate_adaptive(
            [z](double u) {
                const double t = 1.0 + u * u;
                return std::exp(-0.5 * t * z) * u * std::sqrt(u * u + 2.0) * 2.0 * u;
            },
            0.0, std::sqrt(80.0 / z), spec);
        const double route_b =
            kPi * (0.5 * z * z * bessel_part.value - 2.0 * std::exp(-0.5 * z));
        CHECK(rel_err(route_a.value, route_b) < 1e-9);
    }
}

TEST_CASE("sqrt endpoint handling is honest: raw x-integral vs regularized route") {
    // The pre-substitution integrand has a sqrt singularity at x = z/2; the
    // adaptive error bound must still cover the true value (known from the
    // smooth s-substitution route), and a forced split near the endpoint
    // must not move the result by more than the reported bounds.
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-12;
    spec.max_intervals = 20000;
    for (double z : {1.0, 3.0}) {
        auto raw = [z](double x) {
            const double arg = std::max(0.0, 4.0 * x * x - z * z);
            return std::exp(-x) * (kPi * z + kPi * std::sqrt(arg) - 2.0 * kPi * x);
        };
        const auto smooth = integrate_adaptive(
            [z](double s) {
                return 4.0 * kPi * std::exp(-0.5 * z - s * s) * s * s *
                       (std::sqrt(z + s * s) - s);
            },
            0.0, 12.0, spec);
        const auto direct = integrate_adaptive(raw, 0.5 * z, 40.0, spec);
        CHECK(std::fabs(direct.value - smooth.value) <=
              direct.error_bound + smooth.error_bound + 1e-12);

        const auto head = integrate_adaptive(raw, 0.5 * z, 0.5 * z + 0.01, spec);
        const auto tail = integrate_adaptive(raw, 0.5 * z + 0.01, 40.0, spec);
        CHECK(std::fabs(head.value + tail.value - direct.value) <=
              head.error_bound + tail.error_bound + direct.error_bound + 1e-12);
    }
}

TEST_CASE("radial law densities integrate to 1 when provided") {
    const auto chi4 = samplers_density_probe(4);
    const auto r = integrate_adaptive(chi4, 0.0, 300.0, {});
    CHECK(std::fabs(r.value - 1.0) < 1e-11);
    const auto chi2 = samplers_density_probe(2);
    const auto r2 = integrate_adaptive(chi2, 0.0, 300.0, {});
    CHECK(std::fabs(r2.value - 1.0) < 1e-11);
}

TEST_CASE("radial density integrals") {
    // G_5 normalizes
    const auto g5 = integrate_radial_density(
        [](double r) { return analytic::green_function(5, r); }, RadialWeight::solid3d, {});
    CHECK(std::fabs(g5.value - 1.0) < 1e-10);

    // second moment of the n = 6 single-edge pdf is 90/7
    AnalyticContext ctx(6);
    const auto m2 = integrate_radial_density(
        [&ctx](double r) { return r * r * ctx.single_edge_pdf(r); }, RadialWeight::solid3d,
        {});
    CHECK(std::fabs(m2.value - 90.0 / 7.0) < 1e-9);

    // the generating pdf e^{-r/2} / (16 pi r) integrates to 1
    const auto gen = integrate_radial_density(
        [](double r) { return std::exp(-0.5 * r) / (16.0 * kPi * r); },
        RadialWeight::solid3d, {});
    CHECK(std::fabs(gen.value - 1.0) < 1e-12);

    // planar weighting: the d = 2 edge law e^{-r/2} / (4 pi r)
    const auto gen2 = integrate_radial_density(
        [](double r) { return std::exp(-0.5 * r) / (4.0 * kPi * r); },
        RadialWeight::planar2d, {});
    CHECK(std::fabs(gen2.value - 1.0) < 1e-12);
}

TEST_CASE("single edge pdf normalization via radial quadrature") {
    for (int n : {4, 6, 10, 50}) {
        AnalyticContext ctx(n);
        const auto r = integrate_radial_density(
            [&ctx](double x) { return ctx.single_edge_pdf(x); }, RadialWeight::solid3d, {});
        CHECK(std::fabs(r.value - 1.0) < 1e-10);
    }
}

TEST_CASE("green function normalization for k in {2,3,5,10}") {
    for (int k : {2, 3, 5, 10}) {
        const auto r = integrate_radial_density(
            [k](double x) { return analytic::green_function(k, x); }, RadialWeight::solid3d,
            {});
        CHECK(std::fabs(r.value - 1.0) < 1e-10);
    }
}

TEST_CASE("projection pdf normalization and variance on the line") {
    QuadratureSpec spec;
    for (int k : {1, 2, 5}) {
        const auto norm = integrate_adaptive(
            [k](double y) { return 2.0 * analytic::projection_pdf(k, y); }, 0.0,
            find_upper_cutoff([k](double y) { return 2.0 * analytic::projection_pdf(k, y); },
                              spec),
            spec);
        CHECK(std::fabs(norm.value - 1.0) < 1e-10);
    }
    // Var of a chi2_2 difference: 2 * Var(chi2_2) = 8
    const auto var = integrate_adaptive(
        [](double y) { return 2.0 * y * y * analytic::projection_pdf(1, y); }, 0.0, 200.0,
        spec);
    CHECK(std::fabs(var.value - 8.0) < 1e-8);
}

TEST_CASE("full pairwise integral in (r1, r2, theta) coordinates") {
    // Independent of the reduced z-route: nested quadrature straight against
    // Prop-4.9-style coordinates.
    QuadratureSpec outer_spec;
    outer_spec.rel_tol = 1e-9;
    outer_spec.abs_tol = 1e-11;
    QuadratureSpec inner_spec;
    inner_spec.rel_tol = 1e-10;
    inner_spec.abs_tol = 1e-12;

    for (int n : {4, 6, 10}) {
        AnalyticContext ctx(n);
        const double r_hi = 12.0 + 4.0 * n;
        auto over_theta = [&](double r1, double r2) {
            return integrate_adaptive(
                       [&](double th) { return ctx.pairwise_pdf({r1, r2, th}); }, 0.0, kPi,
                       inner_spec)
                .value;
        };
        auto over_r2 = [&](double r1) {
            return integrate_adaptive([&](double r2) { return over_theta(r1, r2); }, 0.0,
                                      r_hi, inner_spec)
                .value;
        };
        const auto total = integrate_adaptive(over_r2, 0.0, r_hi, outer_spec);
        CHECK(std::fabs(total.value - 1.0) < 1e-9);
    }
}

TEST_CASE("pairwise marginal over (r2, theta) reproduces the single edge pdf") {
    AnalyticContext ctx(6);
    QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    spec.abs_tol = 1e-13;
    for (double r1 : {0.5, 1.0, 2.0}) {
        auto over_theta = [&](double r2) {
            return integrate_adaptive(
                       [&](double th) { return ctx.pairwise_pdf({r1, r2, th}); }, 0.0, kPi,
                       spec)
                .value;
        };
        const auto marginal = integrate_adaptive(over_theta, 0.0, 60.0, spec);
        const double expected = 4.0 * kPi * r1 * r1 * ctx.single_edge_pdf(r1);
        CHECK(std::fabs(marginal.value - expected) < 1e-6);
    }
}

}  // TEST_SUITE
