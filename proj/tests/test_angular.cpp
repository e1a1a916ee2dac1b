#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/angular.hpp"
#include "spectra/oracle.hpp"

using namespace spectra;

TEST_CASE("theta_to_z is ln tan(theta/2) and inverts z_to_theta") {
    CHECK(theta_to_z(0.5 * kPi) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(theta_to_z(z_to_theta(1.5)) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(theta_to_z(0.01) < -5.0);  // monotone divergence toward the pole
    CHECK_THROWS_AS(theta_to_z(0.0), std::domain_error);
    CHECK_THROWS_AS(theta_to_z(kPi), std::domain_error);
    CHECK_THROWS_AS(theta_to_z(-0.5), std::domain_error);
}

TEST_CASE("round trip z_to_theta(theta_to_z(theta)) is the identity to 1e-12") {
    for (int i = 0; i <= 100; ++i) {
        const double theta = 0.05 + (kPi - 0.10) * i / 100.0;
        CHECK(std::abs(z_to_theta(theta_to_z(theta)) - theta) <= 1e-12);
    }
}

TEST_CASE("z_identities return (sech z, -tanh z) matching the mapped angle") {
    {
        const auto [s, c] = z_identities(0.0);
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(c == doctest::Approx(0.0).epsilon(1e-14));
    }
    {
        const auto [s, c] = z_identities(3.0);
        CHECK(s == doctest::Approx(0.0993279274).epsilon(1e-8));
        CHECK(c == doctest::Approx(-0.9950547537).epsilon(1e-8));
    }
    {
        const auto [sp, cp] = z_identities(3.0);
        const auto [sm, cm] = z_identities(-3.0);
        CHECK(sm == doctest::Approx(sp).epsilon(1e-14));
        CHECK(cm == doctest::Approx(-cp).epsilon(1e-14));
    }
    // both components agree with sin/cos of 2 arctan(e^z) to 1e-12
    for (double z : {-4.0, -1.3, 0.0, 0.7, 2.9}) {
        const double theta = z_to_theta(z);
        const auto [s, c] = z_identities(z);
        CHECK(std::abs(s - std::sin(theta)) <= 1e-12);
        CHECK(std::abs(c - std::cos(theta)) <= 1e-12);
    }
}

TEST_CASE("transform_U2 maps the catalog theta-forms to their z-space shapes") {
    // ring_trig beta=2, gamma=1 -> (-tanh z, shift 2)
    {
        const TransformedU2 t = transform_U2(make_ring_family(2.0, 1.0));
        CHECK(t.constant_shift == doctest::Approx(2.0));
        CHECK(t.domain == GridKind::full_line);
        for (double z : {-2.0, 0.3, 1.7})
            CHECK(t.delta_V(z) == doctest::Approx(-std::tanh(z)).epsilon(1e-14));
    }
    // double_trig delta=1, c=2 -> (2 csch^2 z, shift 1), half line
    {
        const TransformedU2 t = transform_U2(make_double_family(1.0, 2.0));
        CHECK(t.constant_shift == doctest::Approx(1.0));
        CHECK(t.domain == GridKind::half_line);
        for (double z : {0.4, 1.0, 2.5}) {
            const double cs = csch(z);
            CHECK(t.delta_V(z) == doctest::Approx(2.0 * cs * cs).epsilon(1e-12));
        }
    }
    // ring_trig beta=0, gamma=0 -> (0, 0)
    {
        const TransformedU2 t = transform_U2(make_ring_family(0.0, 0.0));
        CHECK(t.constant_shift == 0.0);
        CHECK(t.delta_V(1.0) == 0.0);
    }
    // custom theta form follows U2(z) = sech^2 z * U2(theta(z))
    {
        const int n = 4001;
        const Grid1D tg = make_grid(GridKind::angular, 0.01, kPi - 0.01, n);
        Vector samples(n);
        const AngularFamily ref = make_ring_family(1.0, 0.5);
        for (int i = 0; i < n; ++i) samples(i) = ref.evaluate_theta(tg.point(i));
        AngularFamily fam;
        fam.tag = AngularFamilyTag::custom_theta;
        fam.theta_grid = tg;
        fam.theta_samples = samples;
        const TransformedU2 t = transform_U2(fam);
        CHECK(t.constant_shift == 0.0);
        for (double z : {-1.0, 0.2, 1.4}) {
            const double s = sech(z);
            const double expected = s * s * ref.evaluate_theta(z_to_theta(z));
            CHECK(t.delta_V(z) == doctest::Approx(expected).epsilon(1e-6));
        }
    }
}

TEST_CASE("reconstruct_U2_theta inverts transform_U2 on catalog parameters to 1e-12") {
    {
        const AngularFamily back = reconstruct_U2_theta(transform_U2(make_ring_family(2.0, 1.0)));
        CHECK(back.tag == AngularFamilyTag::ring_trig);
        CHECK(std::abs(back.beta - 2.0) <= 1e-12);
        CHECK(std::abs(back.gamma - 1.0) <= 1e-12);
    }
    {
        const AngularFamily back = reconstruct_U2_theta(transform_U2(make_double_family(1.0, 2.0)));
        CHECK(back.tag == AngularFamilyTag::double_trig);
        CHECK(std::abs(back.delta - 1.0) <= 1e-12);
        CHECK(std::abs(back.c - 2.0) <= 1e-12);
    }
    {
        const AngularFamily back = reconstruct_U2_theta(transform_U2(AngularFamily{}));
        CHECK(back.tag == AngularFamilyTag::zero);
    }
    // negative-gamma ring and zero-delta double also round trip
    {
        const AngularFamily back = reconstruct_U2_theta(transform_U2(make_ring_family(0.7, -1.3)));
        CHECK(std::abs(back.beta - 0.7) <= 1e-12);
        CHECK(std::abs(back.gamma + 1.3) <= 1e-12);
    }
}

TEST_CASE("build_angular_equation assembles the z-space problem") {
    // ell=2, m=1, U2=0: pure Poschl-Teller; target eigenvalue -1 sits at n=1
    {
        const AngularProblem p = build_angular_equation(2.0, 1, AngularFamily{});
        CHECK(p.target_eigenvalue() == doctest::Approx(-1.0));
        const Grid1D g = default_full_line_grid(20.0, 0.01);
        const auto oracle = eigen_solve([&p](double z) { return angular_problem_potential(p, z); },
                                        g, 2);
        REQUIRE(oracle.levels.size() == 2);
        CHECK(std::abs(oracle.levels[1].energy - p.target_eigenvalue()) <= 1e-6);
    }
    // ell=3, m=0, ring beta=0 gamma=1: a Rosen-Morse II problem in z
    {
        const AngularProblem p = build_angular_equation(3.0, 0, make_ring_family(0.0, 1.0));
        const auto rm2 = make_family(FamilyTag::rosen_morse_II, {{"ell", 3.0}, {"gamma", 1.0}});
        for (double z : {-1.5, 0.0, 0.8})
            CHECK(angular_problem_potential(p, z) ==
                  doctest::Approx(evaluate_potential(rm2, z)).epsilon(1e-12));
    }
    // ell=6, m=1, double delta=0 c=2: half-line combined problem
    {
        const AngularProblem p = build_angular_equation(6.0, 1, make_double_family(0.0, 2.0));
        CHECK(p.domain == GridKind::half_line);
        const auto pt2 = make_family(FamilyTag::poschl_teller_II, {{"ell", 6.0}, {"alpha", 2.0}});
        for (double z : {0.3, 1.0, 2.2})
            CHECK(angular_problem_potential(p, z) ==
                  doctest::Approx(evaluate_potential(pt2, z)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(build_angular_equation(-1.0, 0, AngularFamily{}), std::invalid_argument);
}

TEST_CASE("Legendre relation: z-space levels at integer ell reproduce -m^2 with m = ell - n") {
    const Grid1D g = default_full_line_grid(20.0, 0.01);
    for (double ell : {2.0, 3.0, 4.0}) {
        const AngularProblem p = build_angular_equation(ell, 0, AngularFamily{});
        const auto oracle = eigen_solve([&p](double z) { return angular_problem_potential(p, z); },
                                        g, static_cast<int>(ell));
        REQUIRE(static_cast<double>(oracle.levels.size()) == ell);
        for (std::size_t n = 0; n < oracle.levels.size(); ++n) {
            const double m = ell - static_cast<double>(n);
            INFO("ell ", ell, " n ", n);
            CHECK(std::abs(oracle.levels[n].energy - (-m * m)) <= 1e-6);
        }
    }
}
