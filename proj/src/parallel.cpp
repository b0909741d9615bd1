#include "circlechain/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace circlechain {

namespace {

std::atomic<int> override_count{0};

int from_environment() {
  static const int value = [] {
    const char* env = std::getenv("CIRCLECHAIN_THREADS");
    if (env == nullptr) return 0;
    const int n = std::atoi(env);
    return n > 0 ? n : 0;
  }();
  return value;
}

}  // namespace

int worker_count() {
  if (const int n = override_count.load(); n > 0) return n;
  if (const int n = from_environment(); n > 0) return n;
  return omp_get_max_threads();
}

void set_worker_count(int n) { override_count.store(n > 0 ? n : 0); }

}  // namespace circlechain
