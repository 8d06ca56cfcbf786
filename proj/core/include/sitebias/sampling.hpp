#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sitebias {

enum class SamplingMode { without_replacement, with_replacement };

std::string_view to_string(SamplingMode mode) noexcept;
SamplingMode parse_sampling_mode(std::string_view text);

using Engine = std::mt19937_64;

/// Engine for one resampling replicate; depends only on (seed, replicate).
Engine replicate_engine(std::uint64_t seed, std::uint64_t replicate);

/// Uniform integer in [0, bound) by rejection; identical on every platform.
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound);

/// Draws index samples from [0, population). Holds scratch space so repeated
/// draws do not allocate; one sampler per thread.
class IndexSampler {
public:
  explicit IndexSampler(std::size_t population);

  /// Floyd's algorithm; `out` receives n distinct indices in draw order.
  void without_replacement(Engine& engine, std::size_t n, std::vector<std::size_t>& out);
  void with_replacement(Engine& engine, std::size_t n, std::vector<std::size_t>& out);

  std::size_t population() const noexcept { return population_; }

private:
  std::size_t population_;
  std::vector<std::uint8_t> taken_;
};

}  // namespace sitebias
