#include "slcm/net/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace slcm::net {

void Engine::schedule(double at, Action action)
{
    queue_.push(Entry{std::max(at, now_), seq_++, std::move(action)});
}

void Engine::pop_and_run()
{
    // priority_queue::top is const; move the action out before popping.
    auto action = std::move(const_cast<Entry&>(queue_.top()).action);
    now_ = queue_.top().time;
    queue_.pop();
    action();
}

std::span<const TraceRecord> Engine::advance(double until)
{
    if (until < now_) {
        throw std::invalid_argument("cannot advance backwards");
    }
    const auto first = trace_.size();
    while (!queue_.empty() && queue_.top().time <= until) {
        pop_and_run();
    }
    now_ = until;
    return std::span<const TraceRecord>(trace_.records()).subspan(first);
}

void Engine::run()
{
    while (!queue_.empty()) {
        pop_and_run();
    }
}

void Engine::record(TraceRecord r)
{
    trace_.append(std::move(r));
}

} // namespace slcm::net
