#pragma once

// Interpretation recurses once per nested binder through several std::function
// frames. Deep terms (thousands of binders) need more than a default 8 MiB
// main-thread stack, so entry points that accept untrusted input run their
// work on a thread with an explicitly sized stack.

#include <pthread.h>

#include <cstddef>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace hoas {

inline constexpr std::size_t default_stack_bytes = std::size_t{1} << 29;

/// Runs `fn` to completion on a fresh thread with `stack_bytes` of stack and
/// returns its result; exceptions thrown by `fn` are rethrown here.
template <class F>
std::invoke_result_t<F&> with_stack(std::size_t stack_bytes, F&& fn) {
  using R = std::invoke_result_t<F&>;
  struct Job {
    F& fn;
    std::conditional_t<std::is_void_v<R>, bool, std::optional<R>> result{};
    std::exception_ptr error;
  } job{fn, {}, nullptr};

  auto trampoline = [](void* p) -> void* {
    auto& j = *static_cast<Job*>(p);
    try {
      if constexpr (std::is_void_v<R>) {
        j.fn();
      } else {
        j.result.emplace(j.fn());
      }
    } catch (...) {
      j.error = std::current_exception();
    }
    return nullptr;
  };

  pthread_attr_t attr;
  if (pthread_attr_init(&attr) != 0) {
    throw std::runtime_error("pthread_attr_init failed");
  }
  pthread_attr_setstacksize(&attr, stack_bytes);
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    throw std::runtime_error("pthread_create failed with code " +
                             std::to_string(rc));
  }
  pthread_join(thread, nullptr);

  if (job.error) std::rethrow_exception(job.error);
  if constexpr (!std::is_void_v<R>) return std::move(*job.result);
}

template <class F>
std::invoke_result_t<F&> with_large_stack(F&& fn) {
  return with_stack(default_stack_bytes, std::forward<F>(fn));
}

}  // namespace hoas
