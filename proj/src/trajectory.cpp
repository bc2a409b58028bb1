#include "mpdec/trajectory.hpp"

#include "mpdec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpdec {

namespace {

void require_positive_finite(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string("step schedule: ") + what + " must be positive and finite");
    }
}

} // namespace

StepSchedule StepSchedule::fixed(double t0, double t_end, double dt) {
    require_positive_finite(dt, "dt");
    if (!std::isfinite(t0) || !std::isfinite(t_end) || t_end < t0) {
        throw ValidationError("step schedule: need finite t0 <= t_end");
    }
    const double span = t_end - t0;
    const double ratio = span / dt;
    const double nearest = std::round(ratio);
    std::size_t n = 0;
    const bool whole = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio);
    if (whole) {
        n = static_cast<std::size_t>(nearest);
    } else {
        n = static_cast<std::size_t>(std::ceil(ratio));
    }

    StepSchedule s;
    s.kind_ = Kind::Fixed;
    s.times_.reserve(n + 1);
    s.steps_.reserve(n);
    s.times_.push_back(t0);
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = (k == n) ? t_end : t0 + static_cast<double>(k) * dt;
        s.steps_.push_back(t - s.times_.back());
        s.times_.push_back(t);
    }
    // Spans that divide evenly keep every step identical to dt.
    if (whole) {
        for (double& h : s.steps_) h = dt;
    }
    return s;
}

StepSchedule StepSchedule::fixed_steps(double t0, double dt, std::size_t n) {
    require_positive_finite(dt, "dt");
    if (!std::isfinite(t0)) throw ValidationError("step schedule: t0 must be finite");
    StepSchedule s;
    s.kind_ = Kind::Fixed;
    s.times_.push_back(t0);
    for (std::size_t k = 1; k <= n; ++k) {
        s.steps_.push_back(dt);
        s.times_.push_back(t0 + static_cast<double>(k) * dt);
    }
    return s;
}

StepSchedule StepSchedule::geometric(double t0, double dt0, double t_end, double ratio) {
    require_positive_finite(dt0, "dt0");
    if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
        throw ValidationError("step schedule: geometric ratio must be >= 1");
    }
    if (!std::isfinite(t0) || !std::isfinite(t_end) || t_end < t0) {
        throw ValidationError("step schedule: need finite t0 <= t_end");
    }
    StepSchedule s;
    s.kind_ = Kind::Geometric;
    s.times_.push_back(t0);
    double dt = dt0;
    while (s.times_.back() < t_end) {
        s.steps_.push_back(dt);
        s.times_.push_back(s.times_.back() + dt);
        dt *= ratio;
        if (s.steps_.size() > 100000) {
            throw ValidationError("step schedule: geometric schedule does not reach t_end");
        }
    }
    return s;
}

Trajectory march(std::span<const double> c0, const StepSchedule& schedule,
                 const StepFunction& step) {
    Trajectory traj;
    traj.times.assign(schedule.times().begin(), schedule.times().end());
    traj.states.reserve(traj.times.size());
    traj.states.emplace_back(c0.begin(), c0.end());
    for (double dt : schedule.steps()) {
        traj.states.push_back(step(traj.states.back(), dt));
    }
    return traj;
}

} // namespace mpdec
