#include "cascade/text.hpp"

namespace cascade {

namespace {

// Packaged default English list, post-tokenization form: contractions are
// already split apart by the tokenizer, so the fragments (s, t, ll, re, ...)
// appear here instead of apostrophe spellings. Callers can swap in their own
// list via the CLI flag.
constexpr const char* kStopwords[] = {
    "a",       "about",      "above",   "after",    "again",   "against",
    "all",     "am",         "an",      "and",      "any",     "are",
    "as",      "at",         "be",      "because",  "been",    "before",
    "being",   "below",      "between", "both",     "but",     "by",
    "can",     "cannot",     "could",   "d",        "did",     "do",
    "does",    "doing",      "down",    "during",   "each",    "few",
    "for",     "from",       "further", "had",      "has",     "have",
    "having",  "he",         "her",     "here",     "hers",    "herself",
    "him",     "himself",    "his",     "how",      "i",       "if",
    "in",      "into",       "is",      "it",       "its",     "itself",
    "just",    "ll",         "m",       "me",       "more",    "most",
    "my",      "myself",     "no",      "nor",      "not",     "now",
    "o",       "of",         "off",     "on",       "once",    "only",
    "or",      "other",      "our",     "ours",     "ourselves",
    "out",     "over",       "own",     "re",       "s",       "same",
    "she",     "should",     "so",      "some",     "such",    "t",
    "than",    "that",       "the",     "their",    "theirs",  "them",
    "themselves", "then",    "there",   "these",    "they",    "this",
    "those",   "through",    "to",      "too",      "under",   "until",
    "up",      "ve",         "very",    "was",      "we",      "were",
    "what",    "when",       "where",   "which",    "while",   "who",
    "whom",    "why",        "will",    "with",     "would",   "y",
    "you",     "your",       "yours",   "yourself", "yourselves",
};

}  // namespace

const std::unordered_set<std::string>& default_stopwords() {
  static const std::unordered_set<std::string> set = [] {
    std::unordered_set<std::string> s;
    for (const char* w : kStopwords) s.insert(w);
    return s;
  }();
  return set;
}

}  // namespace cascade
