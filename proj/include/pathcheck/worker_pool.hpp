#pragma once

#include <barrier>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace pathcheck {

/*!
  Fixed set of threads that execute one batch of independent tasks at a time.

  run() hands tasks 0..count-1 to the workers (task i goes to worker
  i mod workers) and returns once every task of the batch has finished; the
  calling thread acts as worker 0. Two barrier phases bracket each batch, so
  consecutive batches never overlap. With one worker everything runs inline.
*/
class StagedPool {
public:
  explicit StagedPool(std::size_t workers)
      : workers_(workers == 0 ? 1 : workers), start_(static_cast<std::ptrdiff_t>(workers_)),
        done_(static_cast<std::ptrdiff_t>(workers_)), errors_(workers_) {
    for (std::size_t w = 1; w < workers_; ++w)
      threads_.emplace_back([this, w] { loop(w); });
  }

  StagedPool(const StagedPool &) = delete;
  StagedPool &operator=(const StagedPool &) = delete;

  ~StagedPool() {
    if (threads_.empty())
      return;
    stop_ = true;
    start_.arrive_and_wait();
    for (auto &t : threads_)
      t.join();
  }

  std::size_t workers() const noexcept { return workers_; }

  /// Runs task(i) for i in [0, count). Rethrows the exception of the
  /// lowest-numbered failing worker after the whole batch has stopped.
  void run(std::size_t count, const std::function<void(std::size_t)> &task) {
    if (workers_ == 1 || count <= 1) {
      for (std::size_t i = 0; i < count; ++i)
        task(i);
      return;
    }
    task_ = &task;
    count_ = count;
    start_.arrive_and_wait();
    work(0);
    done_.arrive_and_wait();
    task_ = nullptr;
    for (auto &e : errors_) {
      if (e) {
        auto first = e;
        for (auto &x : errors_)
          x = nullptr;
        std::rethrow_exception(first);
      }
    }
  }

private:
  void loop(std::size_t w) {
    for (;;) {
      start_.arrive_and_wait();
      if (stop_)
        return;
      work(w);
      done_.arrive_and_wait();
    }
  }

  void work(std::size_t w) {
    try {
      for (std::size_t i = w; i < count_; i += workers_)
        (*task_)(i);
    } catch (...) {
      errors_[w] = std::current_exception();
    }
  }

  std::size_t workers_;
  std::barrier<> start_;
  std::barrier<> done_;
  std::vector<std::exception_ptr> errors_;
  std::vector<std::thread> threads_;
  const std::function<void(std::size_t)> *task_ = nullptr;
  std::size_t count_ = 0;
  bool stop_ = false;
};

} // namespace pathcheck
