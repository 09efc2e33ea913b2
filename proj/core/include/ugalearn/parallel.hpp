#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ugalearn {

/// Runs work(0) .. work(count-1) on `jobs` worker threads and hands each
/// result to consume(i, result) on the calling thread, strictly in index
/// order. A bounded reorder window keeps memory flat when workers run ahead
/// of the consumer. With jobs <= 1 everything happens inline.
template <typename T, typename Work, typename Consume>
void parallel_for_ordered(std::uint64_t count, unsigned jobs, Work&& work, Consume&& consume) {
  if (count == 0) return;
  if (jobs <= 1 || count == 1) {
    for (std::uint64_t i = 0; i < count; ++i) consume(i, work(i));
    return;
  }

  const std::uint64_t window = std::max<std::uint64_t>(4 * jobs, 16);
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(std::min<std::uint64_t>(count, window)));
  std::mutex mu;
  std::condition_variable produced;
  std::condition_variable space;
  std::uint64_t next = 0;
  std::uint64_t consumed = 0;

  auto worker = [&] {
    for (;;) {
      std::uint64_t i;
      {
        std::unique_lock lock(mu);
        if (next >= count) return;
        i = next++;
        space.wait(lock, [&] { return i < consumed + window; });
      }
      T value = work(i);
      {
        std::lock_guard lock(mu);
        slots[i % window] = std::move(value);
      }
      produced.notify_all();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);

  for (std::uint64_t i = 0; i < count; ++i) {
    T value = [&] {
      std::unique_lock lock(mu);
      produced.wait(lock, [&] { return slots[i % window].has_value(); });
      T v = std::move(*slots[i % window]);
      slots[i % window].reset();
      consumed = i + 1;
      return v;
    }();
    space.notify_all();
    consume(i, std::move(value));
  }
  for (auto& t : threads) t.join();
}

}  // namespace ugalearn
