#pragma once

#include "mpdec/pds.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mpdec {

/// Ordered timestep sizes covering [t0, t_end].
class StepSchedule {
public:
    enum class Kind { Fixed, Geometric };

    /// Constant dt; the last step is shortened so the schedule ends exactly on
    /// t_end. t_end == t0 yields an empty schedule.
    static StepSchedule fixed(double t0, double t_end, double dt);
    /// Exactly n steps of size dt.
    static StepSchedule fixed_steps(double t0, double dt, std::size_t n);
    /// dt_n = ratio^(n-1) dt0 until the cumulative time reaches t_end. The last
    /// step is not truncated, so the final time may overshoot t_end.
    static StepSchedule geometric(double t0, double dt0, double t_end, double ratio = 2.0);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double t0() const noexcept { return times_.front(); }
    [[nodiscard]] double t_final() const noexcept { return times_.back(); }
    [[nodiscard]] std::size_t size() const noexcept { return steps_.size(); }
    [[nodiscard]] std::span<const double> steps() const noexcept { return steps_; }
    /// size() + 1 time levels, starting at t0.
    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }

private:
    StepSchedule() = default;
    Kind kind_ = Kind::Fixed;
    std::vector<double> steps_;
    std::vector<double> times_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
    [[nodiscard]] const StateVector& back() const { return states.back(); }
    bool operator==(const Trajectory&) const = default;
};

using StepFunction = std::function<StateVector(std::span<const double> c, double dt)>;

/// Applies `step` along the schedule, recording every time level.
[[nodiscard]] Trajectory march(std::span<const double> c0, const StepSchedule& schedule,
                               const StepFunction& step);

} // namespace mpdec
