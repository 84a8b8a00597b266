#pragma once

// Built-in fixture sequences with committed golden images (tests/golden).

#include <vector>

#include "skeltex/skeleton.hpp"
#include "skeltex/synthetic.hpp"

namespace skeltex {

inline std::vector<SkeletonSequence> builtin_fixtures() {
  std::vector<SkeletonSequence> out;

  auto single = synthesize_sequence(0, 11, 32);
  single.source_id = "fixture_single";
  out.push_back(std::move(single));

  SynthOptions pair_opts;
  pair_opts.with_partner = true;
  auto pair = synthesize_sequence(2, 5, 24, pair_opts);
  pair.source_id = "fixture_pair";
  out.push_back(std::move(pair));

  SkeletonSequence still;
  still.source_id = "fixture_still";
  still.frames.push_back(synthesize_sequence(4, 3, 2, {.amplitude_scale = 0.0, .noise = 0.0}).frames[0]);
  out.push_back(std::move(still));
  return out;
}

}  // namespace skeltex
