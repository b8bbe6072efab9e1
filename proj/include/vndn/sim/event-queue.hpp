#pragma once

#include "vndn/common.hpp"

#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace vndn::sim {

/// Discrete-event scheduler; events run in (time, scheduling order).
class EventQueue
{
public:
  using Action = std::function<void()>;

  Time
  now() const noexcept
  {
    return m_now;
  }

  void
  schedule(Time at, Action action)
  {
    if (at < m_now)
      throw std::logic_error("EventQueue: cannot schedule into the past");
    m_heap.push(Event{at, m_next_seq++, std::move(action)});
  }

  void
  schedule_in(Time delay, Action action)
  {
    schedule(m_now + delay, std::move(action));
  }

  bool
  empty() const noexcept
  {
    return m_heap.empty();
  }

  std::size_t
  pending() const noexcept
  {
    return m_heap.size();
  }

  std::uint64_t
  executed() const noexcept
  {
    return m_executed;
  }

  /// Runs a single event. Returns false when the queue is empty.
  bool
  step()
  {
    if (m_heap.empty())
      return false;
    // priority_queue::top() is const; the action is moved out before pop
    Event ev = std::move(const_cast<Event&>(m_heap.top()));
    m_heap.pop();
    m_now = ev.time;
    ++m_executed;
    ev.action();
    return true;
  }

  /// Runs until no events remain.
  void
  run()
  {
    while (step()) {
    }
  }

  /// Runs every event scheduled at or before @p end; later events stay queued.
  void
  run_until(Time end)
  {
    while (!m_heap.empty() && m_heap.top().time <= end)
      step();
  }

private:
  struct Event
  {
    Time time;
    std::uint64_t seq;
    Action action;
  };

  struct Later
  {
    bool
    operator()(const Event& a, const Event& b) const noexcept
    {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  Time m_now{0};
  std::uint64_t m_next_seq = 0;
  std::uint64_t m_executed = 0;
  std::priority_queue<Event, std::vector<Event>, Later> m_heap;
};

/// Point-to-point link, one instance per direction. FIFO serialization then propagation delay.
class WiredLink
{
public:
  WiredLink(double rate_bps = 1e9, Time delay = std::chrono::microseconds(500))
    : m_rate(rate_bps)
    , m_delay(delay)
  {
  }

  double rate() const noexcept { return m_rate; }
  Time delay() const noexcept { return m_delay; }

  /// Arrival time of a packet of @p bytes handed to the link at @p now.
  Time
  send(std::size_t bytes, Time now)
  {
    Time start = std::max(now, m_busy_until);
    Time tx = from_seconds(static_cast<double>(bytes) * 8.0 / m_rate);
    m_busy_until = start + tx;
    return m_busy_until + m_delay;
  }

private:
  double m_rate;
  Time m_delay;
  Time m_busy_until{0};
};

} // namespace vndn::sim
