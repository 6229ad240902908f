#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

#include "ruinsim/errors.hpp"
#include "ruinsim/estimators.hpp"

namespace ruinsim {

void run_replications(const RunOptions& opts, const ReplicateFn& fn, std::vector<double>* y,
                      std::vector<double>* z) {
  if (opts.reps < 1) throw InsufficientSampleError("need at least one replication");
  const auto reps = static_cast<std::size_t>(opts.reps);
  y->assign(reps, 0.0);
  if (z) z->assign(reps, 0.0);

  const auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng = rng_substream(opts.seed, i);
      const auto [yi, zi] = fn(rng);
      (*y)[i] = yi;
      if (z) (*z)[i] = zi;
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(opts.workers, 1)), 1, reps);
  if (workers == 1) {
    work(0, reps);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = reps / workers;
  const std::size_t extra = reps % workers;
  std::size_t lo = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t hi = lo + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&, lo, hi] {
      try {
        work(lo, hi);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
    lo = hi;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ruinsim
