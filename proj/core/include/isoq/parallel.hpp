#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace isoq {

// Worker budget shared by all parallel loops. Initialized from ISOQ_WORKERS,
// falling back to hardware concurrency.
unsigned default_workers();
void set_default_workers(unsigned workers);

// Runs body(i) for i in [0, n). Every index is visited exactly once; callers
// write results into per-index slots so the outcome does not depend on the
// number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

// Fixed-tree pairwise summation, independent of how the terms were produced.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> terms);
double pairwise_sum(std::span<const double> terms);

}  // namespace isoq
