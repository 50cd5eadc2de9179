#pragma once

// Brute-force reference checks. These ship with the library so the CLI can
// cross-check its answers.

#include <cstdint>
#include <random>
#include <vector>

#include "progressive/enumerate.hpp"
#include "progressive/linear.hpp"
#include "progressive/model.hpp"
#include "progressive/models.hpp"
#include "progressive/random.hpp"

namespace progressive {

namespace detail {

// Portable draw in [0, bound): the engine's output sequence is fixed by the
// standard, unlike the distribution classes.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace detail

/// One-sided check of self-progressiveness.
///
/// For every pair, the 50/50 mixture must decompose into exactly its join and
/// meet, both in the model. Then `samples` random mixtures over the model are
/// decomposed and every component must lie in the model.
inline bool naive_self_progressive(const ChoiceModel& model, const PrimitiveOrderings& ord, std::size_t samples,
                                   std::uint64_t seed = 1) {
  require_same_domain(model.domain(), ord.domain());
  const Rational half(1, 2);
  for (std::size_t a = 0; a < model.size(); ++a) {
    for (std::size_t b = a + 1; b < model.size(); ++b) {
      const auto rho = compose(WeightedFunctions{{model[a], half}, {model[b], half}});
      const auto rep = decompose_progressive(rho, ord);
      const auto up = join(model[a], model[b], ord);
      const auto down = meet(model[a], model[b], ord);
      if (rep.size() != 2 || !(rep[0].function == up) || !(rep[1].function == down) || rep[0].weight != half) {
        throw InternalError("pair mixture did not decompose into its join and meet");
      }
      if (!model.contains(up) || !model.contains(down)) return false;
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t k = 1 + detail::draw(rng, std::min<std::size_t>(model.size(), 4));
    WeightedFunctions dist;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> raw;
    for (std::size_t t = 0; t < k; ++t) {
      raw.push_back(1 + detail::draw(rng, 9));
      total += raw.back();
    }
    for (std::size_t t = 0; t < k; ++t) {
      dist.emplace_back(model[detail::draw(rng, model.size())], Rational(raw[t], total));
    }
    for (const auto& comp : decompose_progressive(compose(dist), ord)) {
      if (!model.contains(comp.function)) return false;
    }
  }
  return true;
}

}  // namespace progressive
