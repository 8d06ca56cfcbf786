#include "sitebias/sampling.hpp"

#include "sitebias/error.hpp"

#include <limits>

namespace sitebias {

std::string_view to_string(SamplingMode mode) noexcept {
  return mode == SamplingMode::without_replacement ? "without_replacement" : "with_replacement";
}

SamplingMode parse_sampling_mode(std::string_view text) {
  if (text == "without_replacement") return SamplingMode::without_replacement;
  if (text == "with_replacement") return SamplingMode::with_replacement;
  throw Error(ErrorKind::domain, "unknown sampling mode '" + std::string(text) + "'");
}

Engine replicate_engine(std::uint64_t seed, std::uint64_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replicate),
                    static_cast<std::uint32_t>(replicate >> 32)};
  return Engine(seq);
}

std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % bound;
}

IndexSampler::IndexSampler(std::size_t population)
    : population_(population), taken_(population, 0) {}

void IndexSampler::without_replacement(Engine& engine, std::size_t n,
                                       std::vector<std::size_t>& out) {
  if (n > population_) {
    throw Error(ErrorKind::domain, "sample size " + std::to_string(n) +
                                       " exceeds population " + std::to_string(population_));
  }
  out.clear();
  out.reserve(n);
  for (std::size_t j = population_ - n; j < population_; ++j) {
    auto t = static_cast<std::size_t>(uniform_below(engine, j + 1));
    std::size_t pick = taken_[t] ? j : t;
    taken_[pick] = 1;
    out.push_back(pick);
  }
  for (auto i : out) taken_[i] = 0;
}

void IndexSampler::with_replacement(Engine& engine, std::size_t n, std::vector<std::size_t>& out) {
  if (population_ == 0) throw Error(ErrorKind::empty, "cannot sample an empty population");
  out.clear();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(static_cast<std::size_t>(uniform_below(engine, population_)));
  }
}

}  // namespace sitebias
