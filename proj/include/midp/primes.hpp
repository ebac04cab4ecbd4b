#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace midp {

// Primes up to and including `bound`, ascending.  Results are memoized
// process-wide and optionally mirrored to disk when MIDPRIME_CACHE_DIR is
// set (binary table keyed by bound).
std::shared_ptr<const std::vector<uint32_t>> primes_up_to(uint32_t bound);

// Number of primes <= bound.
std::size_t prime_pi(uint32_t bound);

// Moebius function for small arguments (trial division).
int moebius_small(uint64_t n);

}  // namespace midp
