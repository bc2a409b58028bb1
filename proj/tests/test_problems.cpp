#include "doctest.h"

#include "mpdec/mpdec.hpp"
#include "mpdec/problems.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace mpdec;

TEST_CASE("registry") {
    const auto names = problem_names();
    REQUIRE(names.size() == 3);
    for (const auto& name : names) {
        const auto p = find_problem(name);
        REQUIRE(p);
        CHECK(p->system.name == name);
        CHECK(p->c0.size() == p->system.dimension);
        CHECK_FALSE(p->description.empty());
    }
    CHECK_FALSE(find_problem("brusselator"));
}

TEST_CASE("initial totals") {
    CHECK(linear_problem().conserved_total() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nonlinear_problem().conserved_total() == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(robertson_problem().conserved_total() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("built-in systems are conservative") {
    std::mt19937_64 rng(41);
    for (const auto& name : problem_names()) {
        const auto p = *find_problem(name);
        std::vector<StateVector> samples;
        for (int k = 0; k < 200; ++k) samples.push_back(testing::random_state(rng, p.system.dimension));
        samples.push_back(p.c0);
        const auto report = check_conservative_structure(p.system, samples, 0.0);
        CHECK_MESSAGE(report.passed, name);
    }
}

TEST_CASE("linear closed form") {
    const auto p = linear_problem();
    REQUIRE(p.system.analytic_solution);
    const auto at0 = p.system.analytic_solution(0.0);
    CHECK(at0[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(at0[1] == doctest::Approx(0.1).epsilon(1e-15));

    SUBCASE("satisfies the ODE") {
        const double h = 1e-5;
        for (double t : {0.0, 0.1, 0.5, 1.0, 1.75}) {
            const auto c = p.system.analytic_solution(t);
            const auto plus = p.system.analytic_solution(t + h);
            const auto minus = p.system.analytic_solution(t - h);
            const auto e = testing::rhs(p.system, c);
            for (std::size_t i = 0; i < 2; ++i) {
                const double derivative = (plus[i] - minus[i]) / (2.0 * h);
                CHECK(std::abs(derivative - e[i]) <= 1e-8);
            }
            CHECK(c[0] + c[1] == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
    SUBCASE("long-time limit") {
        const auto c = linear_exact(50.0, 0.9, 0.1);
        CHECK(c[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
        CHECK(c[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    }
    SUBCASE("other initial states") {
        const auto c = linear_exact(0.0, 0.3, 2.0);
        CHECK(c[0] == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("problem configuration") {
    const auto lin = linear_problem();
    CHECK(lin.t0 == 0.0);
    CHECK(lin.t_end == 1.75);
    CHECK(lin.default_schedule().size() == 7);
    CHECK_FALSE(lin.reference);

    const auto algal = nonlinear_problem();
    CHECK(algal.t_end == 30.0);
    CHECK_FALSE(algal.system.analytic_solution);
    REQUIRE(algal.reference);
    CHECK(algal.reference->scheme == ReferenceRecipe::Scheme::SSPRK104);
    CHECK(algal.reference->resolution == 1e-3);

    const auto rob = robertson_problem();
    CHECK(rob.schedule_kind == StepSchedule::Kind::Geometric);
    CHECK(rob.c0[1] == kPositivityFloor);
    CHECK(rob.c0[0] + rob.c0[1] + rob.c0[2] == doctest::Approx(1.0).epsilon(1e-15));
    const auto s = rob.default_schedule();
    CHECK(s.size() == 54);
    CHECK(s.t0() == 1e-6);
    CHECK(s.t_final() >= 1e10);
    CHECK(s.steps()[0] == 1e-6);
    CHECK(s.steps()[53] == std::ldexp(1e-6, 53));
    REQUIRE(rob.reference);
    CHECK(rob.reference->scheme == ReferenceRecipe::Scheme::FineMPDeC);
    CHECK(rob.reference->order == 5);
}

TEST_CASE("robertson rates") {
    const auto sys = robertson_problem().system;
    const StateVector c{0.5, 1e-5, 0.5};
    const auto e = testing::rhs(sys, c);
    CHECK(e[0] == doctest::Approx(-0.04 * 0.5 + 1e4 * 1e-5 * 0.5).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(3e7 * 1e-10).epsilon(1e-14));
    CHECK(e[0] + e[1] + e[2] == doctest::Approx(0.0).epsilon(1e-14));
}
