#pragma once

#include "slcm/net/trace.hpp"

#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <vector>

namespace slcm::net {

/// Discrete-event loop. Events fire in (time, insertion sequence) order.
class Engine {
public:
    using Action = std::function<void()>;

    double now() const noexcept { return now_; }
    std::size_t pending() const noexcept { return queue_.size(); }

    /// Schedules at absolute time `at`; times in the past fire at `now()`.
    void schedule(double at, Action action);
    void schedule_in(double delay, Action action) { schedule(now_ + delay, std::move(action)); }

    /// Processes every event with time <= until, then sets now() to until.
    /// Returns the trace records appended meanwhile.
    std::span<const TraceRecord> advance(double until);

    /// Runs until the queue is empty.
    void run();

    Trace& trace() noexcept { return trace_; }
    const Trace& trace() const noexcept { return trace_; }
    void record(TraceRecord r);

private:
    struct Entry {
        double time;
        std::uint64_t seq;
        Action action;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const
        {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    void pop_and_run();

    std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
    std::uint64_t seq_{0};
    double now_{0.0};
    Trace trace_;
};

} // namespace slcm::net
