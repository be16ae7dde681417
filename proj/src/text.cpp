#include "cascade/text.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "cascade/common.hpp"

namespace cascade {

namespace {

bool is_alnum_ascii(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

bool url_starts_at(std::string_view text, size_t i) {
  auto has = [&](std::string_view prefix) {
    if (i + prefix.size() > text.size()) return false;
    for (size_t j = 0; j < prefix.size(); ++j) {
      char c = text[i + j];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      if (c != prefix[j]) return false;
    }
    return true;
  };
  if (!(has("http://") || has("https://") || has("www."))) return false;
  // "www." must sit at a word boundary so e.g. "awww.cool" survives.
  return i == 0 || !is_alnum_ascii(text[i - 1]);
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  size_t i = 0;
  while (i < text.size()) {
    if (url_starts_at(text, i)) {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
      while (i < text.size() && !is_space(text[i])) ++i;
      continue;
    }
    const char c = text[i];
    if (is_alnum_ascii(c)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                         : c);
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
    ++i;
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

void remove_stopwords(std::vector<std::string>& tokens,
                      const std::unordered_set<std::string>& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) {
    return stopwords.count(t) != 0;
  });
}

namespace {

int label_index(std::string_view label) {
  for (size_t i = 0; i < kAffectLabels.size(); ++i) {
    if (kAffectLabels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

Lexicon load_lexicon(std::istream& in, const std::string& name) {
  Lexicon lex;
  std::string line;
  uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? std::string::npos
                                              : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos) {
      throw io_error(name + ":" + std::to_string(lineno) +
                     ": expected word<TAB>label<TAB>flag");
    }
    const std::string word = lower_ascii(std::string_view(line).substr(0, t1));
    const std::string_view label =
        std::string_view(line).substr(t1 + 1, t2 - t1 - 1);
    const std::string_view flag = std::string_view(line).substr(t2 + 1);
    const int idx = label_index(label);
    if (idx < 0) {
      throw io_error(name + ":" + std::to_string(lineno) +
                     ": unknown label '" + std::string(label) + "'");
    }
    if (flag != "0" && flag != "1") {
      throw io_error(name + ":" + std::to_string(lineno) + ": flag must be 0 or 1");
    }
    if (word.empty()) {
      throw io_error(name + ":" + std::to_string(lineno) + ": empty word");
    }
    if (flag == "1") {
      lex.entries[word] |= static_cast<uint16_t>(1u << idx);
    }
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return load_lexicon(in, path);
}

AffectScores score_affect(const std::vector<std::string>& tokens,
                          const Lexicon& lexicon) {
  AffectScores out;
  out.token_count = tokens.size();
  if (tokens.empty()) return out;
  std::array<uint64_t, 10> counts{};
  for (const auto& tok : tokens) {
    auto it = lexicon.entries.find(tok);
    if (it == lexicon.entries.end()) continue;
    const uint16_t mask = it->second;
    for (size_t i = 0; i < counts.size(); ++i) {
      if (mask & (1u << i)) ++counts[i];
    }
  }
  for (size_t i = 0; i < counts.size(); ++i) {
    out.scores[i] =
        static_cast<double>(counts[i]) / static_cast<double>(tokens.size());
  }
  return out;
}

void VocabularyBuilder::add_document(const std::vector<std::string>& tokens) {
  ++docs_;
  std::unordered_map<std::string_view, uint64_t> local;
  for (const auto& t : tokens) ++local[t];
  for (const auto& [word, tf] : local) {
    auto& stat = stats_[std::string(word)];
    stat.tf += tf;
    stat.df += 1;
  }
}

Vocabulary VocabularyBuilder::build(size_t cap) const {
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(stats_.size());
  for (const auto& [word, stat] : stats_) {
    const double idf = std::log(static_cast<double>(docs_) /
                                static_cast<double>(stat.df));
    ranked.emplace_back(word, static_cast<double>(stat.tf) * idf);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > cap) ranked.resize(cap);

  Vocabulary v;
  v.ranked = std::move(ranked);
  v.index.reserve(v.ranked.size());
  for (size_t i = 0; i < v.ranked.size(); ++i) {
    v.index.emplace(v.ranked[i].first, static_cast<int32_t>(i));
  }
  return v;
}

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& corpus,
                            size_t cap) {
  VocabularyBuilder b;
  for (const auto& doc : corpus) b.add_document(doc);
  return b.build(cap);
}

}  // namespace cascade
