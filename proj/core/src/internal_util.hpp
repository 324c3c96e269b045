// Shared private helpers: number <-> text via charconv (locale free, shortest
// round-trip form for doubles) and a minimal index-based parallel loop.
#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace ease::detail {

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

inline std::string format_u64(std::uint64_t v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_u64 failed");
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("bad floating point value: '" + std::string(s) + "'");
  return v;
}

inline std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("bad integer value: '" + std::string(s) + "'");
  return v;
}

// Runs fn(i) for i in [0, n). jobs <= 1 stays on the calling thread. Work is
// handed out through an atomic counter; fn must make results order independent.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (jobs <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::mutex error_mu;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace ease::detail
