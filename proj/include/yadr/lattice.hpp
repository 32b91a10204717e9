// Copyright 2026 The yadr Authors
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

#ifndef YADR_LATTICE_HPP_
#define YADR_LATTICE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "yadr/lexicon.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

struct Candidate {
  std::string form;
  std::uint64_t count = 0;  // lexicon count; 0 for passthrough
};

struct LatticeSlot {
  std::string source;
  std::vector<Candidate> candidates;  // ranked as in the lexicon, never empty
  bool passthrough = false;           // digits, punctuation, OOV
};

using Lattice = std::vector<LatticeSlot>;

/// One slot per source token. Known words get their lexicon variants;
/// digits, punctuation and unknown words get the source token itself.
inline Lattice BuildLattice(const Lexicon& lexicon,
                            std::span<const std::string> source) {
  Lattice lattice;
  lattice.reserve(source.size());
  for (const std::string& token : source) {
    LatticeSlot slot;
    slot.source = token;
    const auto variants = IsPassthroughToken(token)
                              ? std::span<const Variant>()
                              : lexicon.Lookup(token);
    if (variants.empty()) {
      slot.passthrough = true;
      slot.candidates.push_back({token, 0});
    } else {
      for (const Variant& v : variants) slot.candidates.push_back({v.form, v.count});
    }
    lattice.push_back(std::move(slot));
  }
  return lattice;
}

}  // namespace yadr

#endif  // YADR_LATTICE_HPP_
