#include "ainf/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ainf {

int thread_count() {
  const char* env = std::getenv("AINF_THREADS");
  if (!env || !*env) return 1;
  try {
    return std::clamp(std::stoi(env), 1, 64);
  } catch (const std::exception&) {
    return 1;
  }
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  const size_t threads = std::min(static_cast<size_t>(thread_count()), n);
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (size_t i = t; i < n; i += threads) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ainf
