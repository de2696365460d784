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


// Generator for a small self-contained experiment: a corpus in which short,
// prototypical paragraphs carry consistent sentiment contexts while long noisy
// paragraphs scatter the same sentiment words across random contexts, plus
// lexical resources, parse annotations, a sentiment dataset whose dev/test
// sentiment words never occur in train, and word-similarity pairs.

#ifndef CURRICULA_SYNTHETIC_HPP_
#define CURRICULA_SYNTHETIC_HPP_

#include <cstdint>
#include <filesystem>

namespace curricula {

struct SyntheticConfig {
  std::uint64_t seed = 7;
  std::size_t target_tokens = 100000;
  double clean_fraction = 0.3;  // share of paragraphs that are clean
  std::size_t dataset_size = 1000;
};

/// Writes corpus.txt, the resource tables, annotations.txt, senti_{train,dev,
/// test}.tsv, pairs_{dev,test}.tsv and a ready-to-run config.json into `dir`.
void write_synthetic_suite(const std::filesystem::path& dir, const SyntheticConfig& cfg = {});

}  // namespace curricula

#endif  // CURRICULA_SYNTHETIC_HPP_
