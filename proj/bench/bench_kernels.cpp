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


// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "curricula/curriculum.hpp"
#include "curricula/embeddings.hpp"
#include "curricula/features.hpp"

namespace {

using namespace curricula;

std::string bench_word(std::size_t i) {
  std::string w = "w";
  do {
    w += static_cast<char>('a' + i % 26);
    i /= 26;
  } while (i > 0);
  return w;
}

Corpus bench_corpus(std::size_t paragraphs) {
  std::mt19937_64 rng(1);
  std::vector<std::string> lines;
  for (std::size_t p = 0; p < paragraphs; ++p) {
    std::string line;
    const std::size_t len = 5 + rng() % 60;
    for (std::size_t t = 0; t < len; ++t) {
      if (t) line += ' ';
      line += bench_word(rng() % 2000);
    }
    lines.push_back(line);
  }
  Corpus c = corpus_from_lines(lines);
  c.attach_vocabulary(std::make_shared<const Vocabulary>(build_vocabulary(c, 1)));
  return c;
}

struct Setup {
  Corpus corpus = bench_corpus(3000);
  LanguageModels lms = train_language_models(corpus);
  EmbeddingMatrix emb = [this] {
    CbowConfig cfg;
    cfg.dim = 32;
    return train_cbow(corpus, baseline_coherent(corpus.size()), cfg);
  }();
  SimilarityProvider sim{corpus.vocabulary(), emb};
  FeatureSpec spec = FeatureSpec::for_groups({FeatureGroup::kDiversity, FeatureGroup::kSimplicity})
                         .without_parse_features();
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void BM_ExtractSerial(benchmark::State& state) {
  const auto& s = setup();
  const FeatureInputs in{nullptr, &s.lms, &s.sim};
  for (auto _ : state) benchmark::DoNotOptimize(extract_features_serial(s.corpus, s.spec, in));
}
BENCHMARK(BM_ExtractSerial)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_ExtractParallel(benchmark::State& state) {
  const auto& s = setup();
  const FeatureInputs in{nullptr, &s.lms, &s.sim};
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(s.corpus, s.spec, in));
}
BENCHMARK(BM_ExtractParallel)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_Cbow(benchmark::State& state) {
  const auto& s = setup();
  CbowConfig cfg;
  cfg.dim = 32;
  cfg.workers = static_cast<int>(state.range(0));
  const auto order = baseline_coherent(s.corpus.size());
  for (auto _ : state) benchmark::DoNotOptimize(train_cbow(s.corpus, order, cfg));
  state.SetItemsProcessed(state.iterations() * s.corpus.token_count());
}
BENCHMARK(BM_Cbow)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
