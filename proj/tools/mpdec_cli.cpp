// mpdec: run benchmark problems and convergence studies, writing CSV.
#include "mpdec/dec_tables.hpp"
#include "mpdec/errors.hpp"
#include "mpdec/harness.hpp"
#include "mpdec/problems.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using mpdec::ValidationError;

struct OrderOptions {
    std::optional<std::size_t> order;
    std::optional<std::size_t> subintervals;
    std::optional<std::size_t> corrections;
};

void add_order_overrides(CLI::App& cmd, OrderOptions& o) {
    cmd.add_option("--M", o.subintervals, "Subintervals per step (overrides --order)");
    cmd.add_option("--K", o.corrections, "Correction sweeps (overrides --order)");
}

mpdec::MPDeCConfig resolve_config(const OrderOptions& o) {
    mpdec::MPDeCConfig cfg;
    if (o.order) {
        if (*o.order < 2 || *o.order > 10) throw ValidationError("--order must be in 2..10");
        cfg = mpdec::MPDeCConfig::for_order(*o.order);
    } else if (!o.subintervals || !o.corrections) {
        throw ValidationError("give --order, or both --M and --K");
    }
    if (o.subintervals) cfg.subintervals = *o.subintervals;
    if (o.corrections) cfg.corrections = *o.corrections;
    cfg.validate();
    return cfg;
}

mpdec::BenchmarkProblem lookup(const std::string& name) {
    auto p = mpdec::find_problem(name);
    if (!p) throw ValidationError("unknown problem '" + name + "'; see list-problems");
    return *p;
}

const std::map<std::string, mpdec::SchemeSpec::Kind> kSchemes{
    {"mpdec", mpdec::SchemeSpec::Kind::MPDeC},
    {"dec", mpdec::SchemeSpec::Kind::ClassicalDeC},
    {"ssprk104", mpdec::SchemeSpec::Kind::SSPRK104},
    {"mpe", mpdec::SchemeSpec::Kind::ModifiedPatankarEuler},
    {"pe", mpdec::SchemeSpec::Kind::PatankarEuler},
    {"euler", mpdec::SchemeSpec::Kind::ExplicitEuler},
};

std::filesystem::path order_path(const std::filesystem::path& base, std::size_t order) {
    auto name = base.stem().string() + "_p" + std::to_string(order) + base.extension().string();
    return base.parent_path() / name;
}

struct SolveArgs {
    std::string problem;
    std::string scheme = "mpdec";
    OrderOptions order;
    std::optional<double> dt;
    std::optional<std::string> schedule;
    std::optional<double> dt0;
    std::optional<double> t_end;
    std::optional<std::string> out;
};

int run_solve(const SolveArgs& a) {
    const auto problem = lookup(a.problem);
    mpdec::SchemeSpec scheme;
    scheme.kind = kSchemes.at(a.scheme);
    const bool deferred = scheme.kind == mpdec::SchemeSpec::Kind::MPDeC ||
                          scheme.kind == mpdec::SchemeSpec::Kind::ClassicalDeC;
    if (deferred) scheme.dec = resolve_config(a.order);

    const double t_end = a.t_end.value_or(problem.t_end);
    const bool geometric =
        a.schedule ? *a.schedule == "geometric"
                   : (!a.dt && problem.schedule_kind == mpdec::StepSchedule::Kind::Geometric);
    if (a.dt && geometric) throw ValidationError("--dt conflicts with --schedule geometric");
    if (a.dt0 && !geometric) throw ValidationError("--dt0 needs --schedule geometric");

    const auto schedule =
        geometric ? mpdec::StepSchedule::geometric(problem.t0, a.dt0.value_or(problem.default_dt), t_end)
                  : mpdec::StepSchedule::fixed(problem.t0, t_end, a.dt.value_or(problem.default_dt));
    const auto traj = mpdec::run_scheme(scheme, problem.system, problem.c0, schedule);
    if (a.out) {
        mpdec::emit_csv(traj, std::filesystem::path(*a.out));
    } else {
        mpdec::emit_csv(traj, std::cout);
    }
    return 0;
}

struct ConvergenceArgs {
    std::string problem;
    std::vector<std::size_t> orders;
    OrderOptions order;
    std::size_t refinements = 5;
    std::optional<double> dt;
    std::optional<std::string> out;
};

int run_convergence(const ConvergenceArgs& a) {
    const auto problem = lookup(a.problem);
    if (problem.schedule_kind != mpdec::StepSchedule::Kind::Fixed) {
        throw ValidationError("problem '" + a.problem + "' uses a geometric schedule; "
                              "convergence studies need fixed steps");
    }
    if (a.refinements < 2) throw ValidationError("--refinements must be at least 2");
    const auto steps = mpdec::halving_refinements(a.dt.value_or(problem.default_dt), a.refinements);

    std::vector<mpdec::SchemeSpec> schemes;
    if (a.order.subintervals || a.order.corrections) {
        if (!a.orders.empty()) throw ValidationError("--orders conflicts with --M/--K");
        schemes.push_back(mpdec::SchemeSpec{mpdec::SchemeSpec::Kind::MPDeC, resolve_config(a.order)});
    } else {
        if (a.orders.empty()) throw ValidationError("give --orders, or both --M and --K");
        for (std::size_t p : a.orders) {
            OrderOptions o;
            o.order = p;
            schemes.push_back(mpdec::SchemeSpec{mpdec::SchemeSpec::Kind::MPDeC, resolve_config(o)});
        }
    }

    for (const auto& scheme : schemes) {
        const auto report = mpdec::convergence_study(problem, scheme, steps);
        if (!a.out) {
            std::cout << "# " << report.scheme << " order " << report.nominal_order << '\n';
            mpdec::emit_csv(report, std::cout);
        } else if (schemes.size() == 1) {
            mpdec::emit_csv(report, std::filesystem::path(*a.out));
        } else {
            mpdec::emit_csv(report, order_path(*a.out, report.nominal_order));
        }
        if (const auto slope = report.terminal_slope()) {
            std::cerr << report.scheme << ": terminal slope " << mpdec::format_real(*slope) << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positive, conservative deferred-correction integrators for production-destruction systems"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Integrate a benchmark problem and write its trajectory");
    solve_cmd->add_option("--problem", solve.problem, "Problem name")->required();
    solve_cmd->add_option("--scheme", solve.scheme, "Integrator")
        ->check(CLI::IsMember({"mpdec", "dec", "ssprk104", "mpe", "pe", "euler"}));
    solve_cmd->add_option("--order", solve.order.order, "Order p: M = p-1, K = p");
    add_order_overrides(*solve_cmd, solve.order);
    solve_cmd->add_option("--dt", solve.dt, "Fixed step size");
    solve_cmd->add_option("--schedule", solve.schedule, "Step schedule")
        ->check(CLI::IsMember({"fixed", "geometric"}));
    solve_cmd->add_option("--dt0", solve.dt0, "First step of a geometric schedule");
    solve_cmd->add_option("--t-end", solve.t_end, "Final time");
    solve_cmd->add_option("--out", solve.out, "CSV destination (default stdout)");

    ConvergenceArgs conv;
    auto* conv_cmd = app.add_subcommand("convergence", "Error table and slopes under step halving");
    conv_cmd->add_option("--problem", conv.problem, "Problem name")->required();
    conv_cmd->add_option("--orders", conv.orders, "Comma-separated orders")->delimiter(',');
    add_order_overrides(*conv_cmd, conv.order);
    conv_cmd->add_option("--refinements", conv.refinements, "Number of step sizes, halving each time");
    conv_cmd->add_option("--dt", conv.dt, "Coarsest step size (default: the problem's)");
    conv_cmd->add_option("--out", conv.out,
                         "CSV destination; several orders go to <stem>_p<order><ext>");

    auto* list_cmd = app.add_subcommand("list-problems", "Show the built-in problems");

    std::size_t table_m = 2;
    std::optional<std::string> table_out;
    auto* tables_cmd = app.add_subcommand("tables", "Print the quadrature weights for M subintervals");
    tables_cmd->add_option("--M", table_m, "Subintervals")->required();
    tables_cmd->add_option("--out", table_out, "CSV destination (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*conv_cmd) return run_convergence(conv);
        if (*list_cmd) {
            for (const auto& name : mpdec::problem_names()) {
                const auto p = *mpdec::find_problem(name);
                std::cout << name << '\t' << p.description << '\n';
            }
            return 0;
        }
        if (*tables_cmd) {
            const auto t = mpdec::build_tables(table_m);
            if (table_out) {
                std::ofstream file(*table_out);
                if (!file) throw std::runtime_error("cannot open '" + *table_out + "' for writing");
                mpdec::write_tables_csv(t, file);
            } else {
                mpdec::write_tables_csv(t, std::cout);
            }
            return 0;
        }
    } catch (const mpdec::ValidationError& e) {
        std::cerr << "mpdec: " << e.what() << '\n';
        return 1;
    } catch (const mpdec::NumericalError& e) {
        std::cerr << "mpdec: numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mpdec: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
