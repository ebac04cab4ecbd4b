#include "midp/primes.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

namespace midp {

namespace {

std::vector<uint32_t> sieve_primes(uint32_t bound) {
  std::vector<uint32_t> out;
  if (bound < 2) return out;
  const std::size_t n = bound;
  std::vector<uint8_t> composite((n + 1) / 2, 0);  // odd numbers only
  out.push_back(2);
  for (std::size_t i = 1; 2 * i + 1 <= n; ++i) {
    if (composite[i]) continue;
    const uint64_t p = 2 * i + 1;
    out.push_back(static_cast<uint32_t>(p));
    for (uint64_t j = p * p; j <= n; j += 2 * p) composite[(j - 1) / 2] = 1;
  }
  return out;
}

std::string cache_path(uint32_t bound) {
  const char* dir = std::getenv("MIDPRIME_CACHE_DIR");
  if (!dir || !*dir) return {};
  return std::string(dir) + "/primes_" + std::to_string(bound) + ".bin";
}

bool load_cache(const std::string& path, uint32_t bound, std::vector<uint32_t>& out) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return false;
  uint64_t header[2] = {0, 0};  // magic+bound, count
  bool ok = std::fread(header, sizeof header, 1, f) == 1 &&
            header[0] == (0x6d696470ull << 32 | bound);
  if (ok) {
    out.resize(header[1]);
    ok = std::fread(out.data(), sizeof(uint32_t), out.size(), f) == out.size();
  }
  std::fclose(f);
  return ok;
}

void store_cache(const std::string& path, uint32_t bound, const std::vector<uint32_t>& v) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) return;  // best effort
  uint64_t header[2] = {0x6d696470ull << 32 | bound, v.size()};
  std::fwrite(header, sizeof header, 1, f);
  std::fwrite(v.data(), sizeof(uint32_t), v.size(), f);
  std::fclose(f);
}

std::mutex g_mutex;
std::map<uint32_t, std::shared_ptr<const std::vector<uint32_t>>> g_memo;

}  // namespace

std::shared_ptr<const std::vector<uint32_t>> primes_up_to(uint32_t bound) {
  std::lock_guard<std::mutex> lock(g_mutex);
  // reuse any memoized table with a bound at least as large
  auto it = g_memo.lower_bound(bound);
  if (it != g_memo.end() && it->first == bound) return it->second;

  std::vector<uint32_t> v;
  const std::string path = cache_path(bound);
  if (path.empty() || !load_cache(path, bound, v)) {
    v = sieve_primes(bound);
    if (!path.empty()) store_cache(path, bound, v);
  }
  auto sp = std::make_shared<const std::vector<uint32_t>>(std::move(v));
  g_memo[bound] = sp;
  return sp;
}

std::size_t prime_pi(uint32_t bound) {
  auto p = primes_up_to(bound);
  return p->size();
}

int moebius_small(uint64_t n) {
  if (n == 1) return 1;
  int k = 0;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      ++k;
    }
  }
  if (n > 1) ++k;
  return (k & 1) ? -1 : 1;
}

}  // namespace midp
