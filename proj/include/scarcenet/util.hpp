#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace scarcenet {

// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view text);

std::uint64_t splitmix64(std::uint64_t x);

// Replicate seeds are base_seed plus a stable hash of the run key
// ("exp2/n120/d5/rep3", ...), mixed so nearby keys decorrelate. Subsetting a
// grid never shifts the seeds of the remaining cells.
std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view key);

// mt19937_64 with portable draw helpers. uniform_real_distribution is not
// bit-stable across standard libraries, so doubles come straight from the
// generator bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Unbiased draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Shortest decimal form that parses back to the same double ("211", "0.0585").
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

std::string sha1_hex(std::string_view data);
// sha1 of "blob <size>\0<content>", the way git hashes a file.
std::string git_blob_sha1(std::string_view content);

std::vector<std::string_view> split(std::string_view text, char sep);

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace scarcenet
