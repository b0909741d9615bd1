#pragma once

namespace circlechain {

/// Worker count for the OpenMP kernels: CIRCLECHAIN_THREADS when set and
/// positive, otherwise the OpenMP default. Read once per process.
int worker_count();

/// Overrides the worker count (0 restores the environment/OpenMP default).
void set_worker_count(int n);

}  // namespace circlechain
