#include "doctest.h"

#include "mpdec/errors.hpp"
#include "mpdec/harness.hpp"
#include "mpdec/problems.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mpdec;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

BenchmarkProblem inert_problem() {
    BenchmarkProblem p;
    p.system.name = "inert";
    p.system.dimension = 2;
    p.system.rates = [](std::span<const double>, RateMatrices&) {};
    p.c0 = {0.4, 0.6};
    p.t_end = 1.0;
    p.default_dt = 0.25;
    return p;
}

} // namespace

TEST_CASE("discrete L2 error") {
    Trajectory t;
    t.times = {0.0, 1.0};
    t.states = {{1.0}, {1.2}};
    SUBCASE("single step, one component") {
        const double e = discrete_l2_error(t, [](double) { return StateVector{1.0}; });
        CHECK(e == doctest::Approx(0.2).epsilon(1e-15));
    }
    SUBCASE("identical to exact") {
        CHECK(discrete_l2_error(t, [&](double s) { return s == 0.0 ? t.states[0] : t.states[1]; }) ==
              0.0);
    }
    SUBCASE("1/I inside the root, 1/N outside") {
        Trajectory u;
        u.times = {0.0, 0.5, 1.0};
        u.states = {{0.0, 0.0}, {3.0, 4.0}, {0.0, 0.0}};
        const double e = discrete_l2_error(u, [](double) { return StateVector{0.0, 0.0}; });
        CHECK(e == doctest::Approx(std::sqrt(12.5) / 2.0).epsilon(1e-15));
    }
    SUBCASE("initial state only") {
        Trajectory u;
        u.times = {0.0};
        u.states = {{5.0}};
        CHECK(discrete_l2_error(u, [](double) { return StateVector{0.0}; }) == 0.0);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS((void)discrete_l2_error(Trajectory{}, [](double) { return StateVector{}; }),
                        ValidationError);
        CHECK_THROWS_AS((void)discrete_l2_error(t, [](double) { return StateVector{1.0, 2.0}; }),
                        ValidationError);
    }
    SUBCASE("final-time max error") {
        CHECK(final_time_max_error(t, [](double) { return StateVector{1.5}; }) ==
              doctest::Approx(0.3).epsilon(1e-15));
    }
}

TEST_CASE("successive refinement error") {
    SUBCASE("N=1") {
        Trajectory coarse{{0.0, 1.0}, {{1.0, 1.0}, {2.0, 3.0}}};
        Trajectory fine{{0.0, 0.5, 1.0}, {{1.0, 1.0}, {7.0, 7.0}, {2.0, 1.0}}};
        // only the final coarse level is compared, against fine level 2
        CHECK(successive_refinement_error(coarse, fine) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
    SUBCASE("zero-rate system") {
        const auto p = inert_problem();
        const auto a = run_scheme(SchemeSpec::mpdec_order(3), p.system, p.c0,
                                  StepSchedule::fixed(0.0, 1.0, 0.25));
        const auto b = run_scheme(SchemeSpec::mpdec_order(3), p.system, p.c0,
                                  StepSchedule::fixed(0.0, 1.0, 0.125));
        CHECK(successive_refinement_error(a, b) == 0.0);
    }
    SUBCASE("misaligned inputs") {
        Trajectory coarse{{0.0, 1.0}, {{1.0}, {2.0}}};
        Trajectory wrong_count{{0.0, 1.0}, {{1.0}, {2.0}}};
        CHECK_THROWS_AS((void)successive_refinement_error(coarse, wrong_count), ValidationError);
        Trajectory shifted{{0.0, 0.5, 1.1}, {{1.0}, {1.5}, {2.0}}};
        CHECK_THROWS_AS((void)successive_refinement_error(coarse, shifted), ValidationError);
    }
}

TEST_CASE("convergence studies") {
    SUBCASE("second order on the linear model") {
        // dt = 0.25 is far from asymptotic for a decay rate of 6
        const auto report = convergence_study(linear_problem(), SchemeSpec::mpdec_order(2),
                                              halving_refinements(1.0 / 64, 2));
        REQUIRE(report.rows.size() == 2);
        CHECK_FALSE(report.successive);
        CHECK(report.rows[0].error / report.rows[1].error == doctest::Approx(4.0).epsilon(0.15));
        CHECK_FALSE(report.rows[0].slope);
        REQUIRE(report.rows[1].slope);
    }
    SUBCASE("third order on the algal model by successive refinement") {
        const auto report = convergence_study(nonlinear_problem(), SchemeSpec::mpdec_order(3),
                                              halving_refinements(0.5, 4));
        CHECK(report.successive);
        REQUIRE(report.terminal_slope());
        CHECK(*report.terminal_slope() == doctest::Approx(3.0).epsilon(0.1));
    }
    SUBCASE("zero-rate problem") {
        const auto report = convergence_study(inert_problem(), SchemeSpec::mpdec_order(4),
                                              halving_refinements(0.25, 3));
        for (const auto& row : report.rows) {
            CHECK(row.error == 0.0);
            CHECK_FALSE(row.slope);
            CHECK(row.saturated);
        }
        CHECK_FALSE(report.terminal_slope());
    }
    SUBCASE("saturation flags rows under the precision floor") {
        const auto report = convergence_study(linear_problem(), SchemeSpec::mpdec_order(6),
                                              halving_refinements(0.25, 8));
        CHECK(report.rows.back().saturated);
        CHECK_FALSE(report.rows.front().saturated);
        REQUIRE(report.terminal_slope());
    }
    SUBCASE("even M gains one order at the step endpoint") {
        // equispaced nodes with even M integrate degree M+1 exactly over the step
        const auto steps = halving_refinements(1.0 / 16, 6);
        const auto even = convergence_study(linear_problem(), SchemeSpec::mpdec_mk(2, 8), steps);
        const auto odd = convergence_study(linear_problem(), SchemeSpec::mpdec_mk(1, 8), steps);
        REQUIRE(even.terminal_slope());
        REQUIRE(odd.terminal_slope());
        CHECK(*even.terminal_slope() == doctest::Approx(4.0).epsilon(0.05));
        CHECK(*odd.terminal_slope() == doctest::Approx(2.0).epsilon(0.05));
    }
    SUBCASE("step sizes must decrease") {
        const std::vector<double> bad{0.1, 0.2};
        CHECK_THROWS_AS((void)convergence_study(linear_problem(), SchemeSpec::mpdec_order(2), bad),
                        ValidationError);
    }
    SUBCASE("deterministic output") {
        const auto steps = halving_refinements(0.25, 5);
        std::ostringstream a, b;
        emit_csv(convergence_study(linear_problem(), SchemeSpec::mpdec_order(4), steps), a);
        emit_csv(convergence_study(linear_problem(), SchemeSpec::mpdec_order(4), steps), b);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("scheme labels and orders") {
    CHECK(SchemeSpec::mpdec_order(5).nominal_order() == 5);
    CHECK(SchemeSpec::mpdec_mk(4, 3).nominal_order() == 3);
    CHECK(SchemeSpec::mpdec_mk(2, 5).nominal_order() == 3);
    CHECK(SchemeSpec::mpdec_order(3).label() == "mPDeC(M=2,K=3)");
    CHECK_THROWS_AS((void)SchemeSpec::mpdec_mk(0, 3), ValidationError);
}

TEST_CASE("csv") {
    const auto p = linear_problem();
    const auto traj = run_scheme(SchemeSpec::mpdec_order(2), p.system, p.c0, p.default_schedule());

    SUBCASE("trajectory layout") {
        std::ostringstream out;
        emit_csv(traj, out);
        const auto text = out.str();
        const auto lines = lines_of(text);
        CHECK(lines.front() == "t,c_1,c_2,sum");
        CHECK(lines.size() == 1 + traj.size());
        CHECK(lines.size() == 9);
        CHECK(lines[1] == "0,0.90000000000000002,0.10000000000000001,1");
        CHECK(text.find('\r') == std::string::npos);
        CHECK(text.back() == '\n');
        for (const auto& line : lines) CHECK(line.back() != ',');
    }
    SUBCASE("round trip") {
        std::stringstream io;
        emit_csv(traj, io);
        CHECK(parse_trajectory_csv(io) == traj);
    }
    SUBCASE("round trip of awkward values") {
        Trajectory t{{0.0, 1e-300}, {{5e-324, 1.0 / 3.0}, {1e300, 0.1}}};
        std::stringstream io;
        emit_csv(t, io);
        CHECK(parse_trajectory_csv(io) == t);
    }
    SUBCASE("error report layout") {
        const auto report = convergence_study(p, SchemeSpec::mpdec_order(3), halving_refinements(0.25, 3));
        std::ostringstream out;
        emit_csv(report, out);
        const auto lines = lines_of(out.str());
        REQUIRE(lines.size() == 4);
        CHECK(lines[0] == "dt,error,slope");
        CHECK(lines[1].rfind("0.25,", 0) == 0);
        CHECK(lines[1].back() == ',');
        CHECK(lines[2].back() != ',');
    }
    SUBCASE("empty report is header only") {
        std::ostringstream out;
        emit_csv(ErrorReport{}, out);
        CHECK(out.str() == "dt,error,slope\n");
    }
    SUBCASE("file destination") {
        const auto path = std::filesystem::temp_directory_path() / "mpdec_test_harness.csv";
        emit_csv(traj, path);
        std::ifstream in(path);
        CHECK(parse_trajectory_csv(in) == traj);
        std::filesystem::remove(path);
        CHECK_THROWS((emit_csv(traj, std::filesystem::path("/nonexistent-dir/x.csv"))));
    }
    SUBCASE("malformed input") {
        std::istringstream bad_header("time,c_1,sum\n");
        CHECK_THROWS_AS((void)parse_trajectory_csv(bad_header), ValidationError);
        std::istringstream bad_number("t,c_1,sum\n0,abc,1\n");
        CHECK_THROWS_AS((void)parse_trajectory_csv(bad_number), ValidationError);
        std::istringstream short_row("t,c_1,sum\n0,1\n");
        CHECK_THROWS_AS((void)parse_trajectory_csv(short_row), ValidationError);
    }
}
