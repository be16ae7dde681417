#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cascade {

// 2 sentiments followed by the 8 emotions; score vectors index this order.
inline constexpr std::array<std::string_view, 10> kAffectLabels = {
    "positive", "negative",     "anger", "anticipation", "disgust",
    "fear",     "joy",          "sadness", "surprise",   "trust"};

// Lowercases, strips URLs (http/https/www-prefixed runs up to whitespace),
// then splits on non-alphanumeric boundaries. ASCII-only alphanumerics;
// other bytes act as separators.
std::vector<std::string> tokenize(std::string_view text);

const std::unordered_set<std::string>& default_stopwords();
void remove_stopwords(std::vector<std::string>& tokens,
                      const std::unordered_set<std::string>& stopwords);

struct Lexicon {
  // word -> bitmask over kAffectLabels indices
  std::unordered_map<std::string, uint16_t> entries;
};

// Tab-separated word<TAB>label<TAB>flag associations, flag 1 rows kept.
// Malformed lines and unknown labels raise io_error with the line number.
Lexicon load_lexicon(std::istream& in, const std::string& name);
Lexicon load_lexicon_file(const std::string& path);

struct AffectScores {
  std::array<double, 10> scores{};  // kAffectLabels order
  uint64_t token_count = 0;
};

// score(label) = tokens carrying label / token count; all zeros for empty
// input. Tokens with several labels feed every one of them.
AffectScores score_affect(const std::vector<std::string>& tokens,
                          const Lexicon& lexicon);

struct Vocabulary {
  std::vector<std::pair<std::string, double>> ranked;  // weight non-increasing
  std::unordered_map<std::string, int32_t> index;      // word -> rank position
};

// Streaming corpus-level tf-idf: weight(w) = total_tf(w) * ln(N / df(w)).
class VocabularyBuilder {
 public:
  void add_document(const std::vector<std::string>& tokens);
  // Top-cap words by weight, ties lexicographically ascending.
  Vocabulary build(size_t cap) const;
  uint64_t documents() const { return docs_; }

 private:
  struct WordStat {
    uint64_t tf = 0;
    uint64_t df = 0;
  };
  std::unordered_map<std::string, WordStat> stats_;
  uint64_t docs_ = 0;
};

Vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& corpus,
                            size_t cap);

}  // namespace cascade
