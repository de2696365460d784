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

#include "curricula/resources.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "curricula/common.hpp"
#include "curricula/logreg.hpp"

namespace curricula {
namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::ifstream open_or_throw(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot read ") + what + " file " + path.string());
  return in;
}

}  // namespace

double ScalarTable::lookup(std::string_view word) const {
  auto it = values_.find(std::string(word));
  if (it != values_.end()) return it->second;
  it = values_.find(ascii_lower(word));
  return it != values_.end() ? it->second : default_;
}

bool ScalarTable::contains(std::string_view word) const {
  return values_.count(std::string(word)) > 0 || values_.count(ascii_lower(word)) > 0;
}

ScalarTable load_scalar_table(const std::filesystem::path& path, double default_value,
                              std::optional<ValueRange> range) {
  auto in = open_or_throw(path, "resource");
  ScalarTable table(default_value);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    const auto fields = split(line, '\t');
    if (fields.size() != 2) throw Error(ctx + ": expected 'word<TAB>value'");
    const double v = parse_double(fields[1], ctx);
    if (range) {
      const bool low_ok = range->lo_inclusive ? v >= range->lo : v > range->lo;
      if (!low_ok || v > range->hi) {
        throw Error(ctx + ": value " + fields[1] + " outside " + (range->lo_inclusive ? "[" : "(") +
                    format_g9(range->lo) + ", " + format_g9(range->hi) + "]");
      }
    }
    table.set(fields[0], v);
  }
  return table;
}

ScalarTable load_aoa_table(const std::filesystem::path& path) {
  return load_scalar_table(path, kDefaultAgeOfAcquisition, ValueRange{0.0, kDefaultAgeOfAcquisition, false});
}

ScalarTable load_concreteness_table(const std::filesystem::path& path) {
  return load_scalar_table(path, kDefaultConcreteness, ValueRange{1.0, 5.0});
}

ScalarTable load_syllable_table(const std::filesystem::path& path) {
  return load_scalar_table(path, kDefaultSyllables, ValueRange{1.0, 1e9});
}

bool TitleSet::add(std::vector<std::string> tokens) {
  if (tokens.empty() || tokens.size() > kMaxTitleTokens) return false;
  return titles_.insert(std::move(tokens)).second;
}

std::size_t TitleSet::count_matches(const std::vector<std::string>& tokens) const {
  if (titles_.empty()) return 0;
  std::size_t matches = 0;
  std::vector<std::string> gram;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    gram.clear();
    for (std::size_t len = 1; len <= kMaxTitleTokens && i + len <= tokens.size(); ++len) {
      gram.push_back(tokens[i + len - 1]);
      matches += titles_.count(gram);
    }
  }
  return matches;
}

TitleSet load_titles(const std::filesystem::path& path) {
  auto in = open_or_throw(path, "title list");
  TitleSet titles;
  std::string line;
  std::size_t too_long = 0;
  while (std::getline(in, line)) {
    auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    if (tokens.size() > kMaxTitleTokens) {
      ++too_long;
      continue;
    }
    titles.add(std::move(tokens));
  }
  if (too_long > 0) {
    log_warning(path.string() + ": skipped " + std::to_string(too_long) + " titles longer than " +
                std::to_string(kMaxTitleTokens) + " tokens");
  }
  return titles;
}

double SemanticCategoryMap::relative_frequency(std::string_view word, std::string_view category) const {
  const auto cat = categories_.find(std::string(category));
  if (cat == categories_.end()) return 0.0;
  const auto it = cat->second.find(std::string(word));
  return it == cat->second.end() ? 0.0 : it->second;
}

double SemanticCategoryMap::word_value(std::string_view word) const {
  const auto it = word_value_.find(std::string(word));
  return it == word_value_.end() ? 0.0 : it->second;
}

std::vector<std::string> SemanticCategoryMap::categories_of(std::string_view word) const {
  const auto it = membership_.find(std::string(word));
  return it == membership_.end() ? std::vector<std::string>{} : it->second;
}

std::map<std::string, std::vector<std::string>> load_category_membership(const std::filesystem::path& path) {
  auto in = open_or_throw(path, "category membership");
  std::map<std::string, std::vector<std::string>> membership;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": expected 'word<TAB>category[,category...]'");
    }
    auto& cats = membership[normalize_token(fields[0])];
    for (auto& c : split(fields[1], ',')) {
      if (!c.empty() && std::find(cats.begin(), cats.end(), c) == cats.end()) cats.push_back(std::move(c));
    }
  }
  return membership;
}

SemanticCategoryMap build_category_map(const Corpus& corpus,
                                       const std::map<std::string, std::vector<std::string>>& membership,
                                       std::vector<std::string>* warnings) {
  const auto& vocab = corpus.vocabulary();
  std::map<std::string, std::map<std::string, std::int64_t>> counts;
  std::set<std::string> all_categories;
  for (const auto& [word, cats] : membership) {
    const bool in_vocab = vocab.contains(word) && word != kUnkToken;
    for (const auto& c : cats) {
      all_categories.insert(c);
      if (in_vocab) counts[c][word] = vocab.count(vocab.id(word));
    }
  }
  SemanticCategoryMap map;
  for (const auto& c : all_categories) {
    const auto it = counts.find(c);
    std::int64_t total = 0;
    if (it != counts.end()) {
      for (const auto& [w, n] : it->second) total += n;
    }
    if (total == 0) {
      const std::string msg = "category '" + c + "' has no members in the corpus vocabulary; dropped";
      if (warnings != nullptr) warnings->push_back(msg);
      log_warning(msg);
      continue;
    }
    auto& rel = map.categories_[c];
    for (const auto& [w, n] : it->second) {
      const double f = static_cast<double>(n) / static_cast<double>(total);
      rel[w] = f;
      map.membership_[w].push_back(c);
      auto& best = map.word_value_[w];
      best = std::max(best, f);
    }
  }
  return map;
}

SentenceRecord parse_sentence_record(std::string_view text) {
  SentenceRecord r;
  bool seen[4] = {false, false, false, false};
  for (const auto& field : split_whitespace(text)) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw Error("annotation field '" + field + "' is not key=value");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    const auto as_int = [&](int& dst, int slot) {
      const auto v = parse_int(value, "annotation field " + key);
      if (v < 0) throw Error("annotation field " + key + " must be >= 0");
      dst = static_cast<int>(v);
      seen[slot] = true;
    };
    if (key == "depth") {
      as_int(r.depth, 0);
    } else if (key == "np") {
      as_int(r.noun_phrases, 1);
    } else if (key == "vp") {
      as_int(r.verb_phrases, 2);
    } else if (key == "pp") {
      as_int(r.prep_phrases, 3);
    } else if (key == "pos") {
      r.pos = value.empty() ? std::vector<std::string>{} : split(value, ',');
    } else {
      throw Error("unknown annotation field '" + key + "'");
    }
  }
  if (!(seen[0] && seen[1] && seen[2] && seen[3])) {
    throw Error("annotation record '" + std::string(text) + "' must define depth, np, vp and pp");
  }
  return r;
}

std::string serialize_sentence_record(const SentenceRecord& r) {
  std::string out = "depth=" + std::to_string(r.depth) + " np=" + std::to_string(r.noun_phrases) +
                    " vp=" + std::to_string(r.verb_phrases) + " pp=" + std::to_string(r.prep_phrases);
  if (!r.pos.empty()) {
    out += " pos=";
    for (std::size_t i = 0; i < r.pos.size(); ++i) out += (i ? "," : "") + r.pos[i];
  }
  return out;
}

void ParseAnnotations::check_alignment(const Corpus& corpus) const {
  if (paragraphs.size() != corpus.size()) {
    throw Error("annotation file has " + std::to_string(paragraphs.size()) + " paragraphs but the corpus has " +
                std::to_string(corpus.size()));
  }
  for (std::size_t i = 0; i < paragraphs.size(); ++i) {
    const auto& sentences = paragraphs[i];
    const bool tagged = std::all_of(sentences.begin(), sentences.end(), [](const auto& s) { return !s.pos.empty(); });
    if (!tagged) continue;
    std::size_t tags = 0;
    for (const auto& s : sentences) tags += s.pos.size();
    if (tags != corpus[i].tokens.size()) {
      throw Error("annotations for paragraph " + std::to_string(i) + " tag " + std::to_string(tags) +
                  " tokens but the paragraph has " + std::to_string(corpus[i].tokens.size()));
    }
  }
}

void ParseAnnotations::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write annotation file " + path.string());
  for (const auto& sentences : paragraphs) {
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      out << (s ? " | " : "") << serialize_sentence_record(sentences[s]);
    }
    out << '\n';
  }
}

ParseAnnotations load_annotations(const std::filesystem::path& path) {
  auto in = open_or_throw(path, "annotation");
  ParseAnnotations ann;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<SentenceRecord> sentences;
    try {
      for (const auto& part : split(line, '|')) {
        if (split_whitespace(part).empty()) continue;
        sentences.push_back(parse_sentence_record(part));
      }
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    // Blank lines mirror skipped empty corpus lines.
    if (sentences.empty()) continue;
    ann.paragraphs.push_back(std::move(sentences));
  }
  return ann;
}

double ImageabilityModel::lookup(std::string_view word) const {
  auto it = scores_.find(std::string(word));
  if (it != scores_.end()) return it->second;
  it = scores_.find(std::string(kUnkToken));
  return it != scores_.end() ? it->second : 0.5;
}

ImageabilityModel propagate_imageability(const std::vector<std::pair<std::string, double>>& seed_ratings,
                                         const EmbeddingMatrix& embeddings, double l2) {
  std::vector<double> ratings;
  for (const auto& [word, rating] : seed_ratings) {
    if (!embeddings.contains(word)) {
      throw std::invalid_argument("imageability seed '" + word + "' is not in the embedding vocabulary");
    }
    ratings.push_back(rating);
  }
  if (ratings.empty()) throw std::invalid_argument("no imageability seeds");
  std::vector<double> sorted = ratings;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  const int dim = embeddings.dim();
  DenseRows x;
  x.cols = static_cast<std::size_t>(dim);
  std::vector<int> y;
  std::vector<double> row(static_cast<std::size_t>(dim));
  std::size_t high = 0;
  for (const auto& [word, rating] : seed_ratings) {
    const auto v = embeddings.input(embeddings.row_of(word));
    std::copy(v.begin(), v.end(), row.begin());
    x.push_row(row);
    const int label = rating > median ? 1 : 0;
    high += static_cast<std::size_t>(label);
    y.push_back(label);
  }
  if (high < 2 || n - high < 2) {
    throw std::invalid_argument("degenerate imageability seeds: need at least two words on each side of the median "
                                "rating (got " + std::to_string(high) + " above, " + std::to_string(n - high) +
                                " at or below)");
  }
  const LogRegModel model = train_logreg(x, y, l2);
  ImageabilityModel out;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const auto v = embeddings.input(i);
    std::copy(v.begin(), v.end(), row.begin());
    out.set(embeddings.words()[i], model.probability(row));
  }
  return out;
}

std::vector<std::pair<std::string, double>> load_seed_ratings(const std::filesystem::path& path) {
  auto in = open_or_throw(path, "imageability seed");
  std::vector<std::pair<std::string, double>> seeds;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    const auto fields = split(line, '\t');
    if (fields.size() != 2) throw Error(ctx + ": expected 'word<TAB>value'");
    seeds.emplace_back(normalize_token(fields[0]), parse_double(fields[1], ctx));
  }
  return seeds;
}

}  // namespace curricula
