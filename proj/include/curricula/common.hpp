// Copyright 2026 The Curricula Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CURRICULA_COMMON_HPP_
#define CURRICULA_COMMON_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace curricula {

/// Runtime failure (I/O, malformed data, numerical trouble).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: configuration, arguments, missing upstream artifacts.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so the samplers below are hand-rolled to keep runs bit-reproducible
// across standard library implementations.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

/// Standard normal via Box-Muller.
double standard_normal(Rng& rng);

/// SplitMix64 finalizer; used to derive independent seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Formats with `%.9g`.
std::string format_g9(double value);

std::vector<std::string> split_whitespace(std::string_view line);
std::vector<std::string> split(std::string_view line, char sep);

/// Returns false and sets `offset` to the first bad byte if `text` is not UTF-8.
bool is_valid_utf8(std::string_view text, std::size_t* offset = nullptr);

/// Writes `warning: <message>` to stderr.
void log_warning(std::string_view message);

/// Strict number parsing; throws Error mentioning `context` on failure.
double parse_double(std::string_view text, const std::string& context);
long long parse_int(std::string_view text, const std::string& context);

}  // namespace curricula

#endif  // CURRICULA_COMMON_HPP_
