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

#include "curricula/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "curricula/common.hpp"

namespace curricula {

Vocabulary Vocabulary::from_counts(std::vector<std::pair<std::string, std::int64_t>> counts,
                                   std::int64_t unk_count) {
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary v;
  for (auto& [word, count] : counts) {
    if (word == kUnkToken) {
      unk_count += count;
      continue;
    }
    v.index_.emplace(word, static_cast<WordId>(v.words_.size()));
    v.words_.push_back(std::move(word));
    v.counts_.push_back(count);
    v.total_ += count;
  }
  v.index_.emplace(std::string(kUnkToken), static_cast<WordId>(v.words_.size()));
  v.words_.emplace_back(kUnkToken);
  v.counts_.push_back(unk_count);
  v.total_ += unk_count;
  return v;
}

WordId Vocabulary::id(std::string_view word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? unk_id() : it->second;
}

bool Vocabulary::contains(std::string_view word) const { return index_.find(word) != index_.end(); }

void Vocabulary::save_tsv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write vocabulary file " + path.string());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out << words_[i] << '\t' << counts_[i] << '\n';
  }
}

Vocabulary Vocabulary::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read vocabulary file " + path.string());
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::int64_t unk = 0;
  bool saw_unk = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    const std::string ctx = path.string() + ":" + std::to_string(lineno);
    if (fields.size() != 2) throw Error(ctx + ": expected 'type<TAB>count'");
    const auto count = parse_int(fields[1], ctx);
    if (fields[0] == kUnkToken) {
      unk = count;
      saw_unk = true;
    } else {
      counts.emplace_back(fields[0], count);
    }
  }
  if (!saw_unk) throw Error(path.string() + ": vocabulary has no UNK entry");
  return from_counts(std::move(counts), unk);
}

const Vocabulary& Corpus::vocabulary() const {
  if (!vocab_) throw std::logic_error("corpus has no vocabulary attached");
  return *vocab_;
}

void Corpus::attach_vocabulary(std::shared_ptr<const Vocabulary> vocab) {
  vocab_ = std::move(vocab);
  ids_.assign(paragraphs_.size(), {});
  for (std::size_t i = 0; i < paragraphs_.size(); ++i) {
    auto& ids = ids_[i];
    ids.reserve(paragraphs_[i].tokens.size());
    for (const auto& t : paragraphs_[i].tokens) ids.push_back(vocab_->id(t));
  }
}

std::int64_t Corpus::token_count() const {
  std::int64_t n = 0;
  for (const auto& p : paragraphs_) n += static_cast<std::int64_t>(p.tokens.size());
  return n;
}

std::size_t Corpus::max_paragraph_length() const {
  std::size_t m = 0;
  for (const auto& p : paragraphs_) m = std::max(m, p.tokens.size());
  return m;
}

void Corpus::save_text(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file " + path.string());
  for (const auto& p : paragraphs_) out << p.raw << '\n';
}

std::string normalize_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (const char c : token) {
    if (c >= '0' && c <= '9') {
      out += kDigitToken;
    } else {
      out += c;
    }
  }
  return out;
}

std::vector<std::string> tokenize_line(std::string_view line) {
  auto tokens = split_whitespace(line);
  for (auto& t : tokens) t = normalize_token(t);
  return tokens;
}

Corpus corpus_from_lines(const std::vector<std::string>& lines) {
  std::vector<Paragraph> paragraphs;
  for (const auto& line : lines) {
    auto tokens = tokenize_line(line);
    if (tokens.empty()) continue;
    Paragraph p;
    p.index = paragraphs.size();
    p.tokens = std::move(tokens);
    p.raw = line;
    if (!p.raw.empty() && p.raw.back() == '\r') p.raw.pop_back();
    paragraphs.push_back(std::move(p));
  }
  return Corpus(std::move(paragraphs));
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read corpus file " + path.string());
  std::vector<std::string> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t offset = 0;
    if (!is_valid_utf8(line, &offset)) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8 at byte " +
                  std::to_string(offset));
    }
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw Error("error while reading corpus file " + path.string());
  return corpus_from_lines(lines);
}

Vocabulary build_vocabulary(const Corpus& corpus, std::int64_t min_count) {
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  std::map<std::string, std::int64_t, std::less<>> raw;
  for (const auto& p : corpus.paragraphs()) {
    for (const auto& t : p.tokens) ++raw[t];
  }
  std::vector<std::pair<std::string, std::int64_t>> kept;
  std::int64_t unk = 0;
  for (auto& [word, count] : raw) {
    // A literal UNK in the input is the same type as the fold-in bucket.
    if (count >= min_count && word != kUnkToken) {
      kept.emplace_back(word, count);
    } else {
      unk += count;
    }
  }
  return Vocabulary::from_counts(std::move(kept), unk);
}

Corpus load_corpus_with_vocabulary(const std::filesystem::path& path, std::int64_t min_count) {
  Corpus corpus = load_corpus(path);
  corpus.attach_vocabulary(std::make_shared<const Vocabulary>(build_vocabulary(corpus, min_count)));
  return corpus;
}

}  // namespace curricula
