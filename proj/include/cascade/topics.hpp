#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cascade {

struct TopicModel {
  int32_t k = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int32_t iterations = 0;
  uint64_t seed = 0;
  std::vector<std::string> vocab;  // V words; documents index into this
  // Topic-word probabilities stored word-major: phi_vk[w*k + t] = phi[t][w].
  // Word-major keeps the per-word topic row contiguous for the sampler.
  std::vector<double> phi_vk;

  double phi(int32_t t, size_t w) const {
    return phi_vk[w * static_cast<size_t>(k) + static_cast<size_t>(t)];
  }
  size_t vocab_size() const { return vocab.size(); }
};

struct DocTopics {
  std::vector<double> theta;  // length k, sums to 1
};

struct LdaResult {
  TopicModel model;
  std::vector<DocTopics> doc_topics;  // one per input document
  // Joint log-likelihood after every iteration; filled only when requested.
  std::vector<double> log_likelihood;
};

inline double lda_default_alpha(int k) { return 50.0 / static_cast<double>(k); }
inline constexpr double kLdaDefaultBeta = 0.01;
inline constexpr int kLdaDefaultIterations = 1000;

// Collapsed Gibbs sampling. docs hold vocabulary indices (0..V-1); empty
// documents take no part in sampling and end up with uniform theta.
// Deterministic for a fixed (docs, vocab, k, alpha, beta, iterations, seed).
LdaResult fit_lda(const std::vector<std::vector<int32_t>>& docs,
                  std::vector<std::string> vocab, int k, double alpha,
                  double beta, int iterations, uint64_t seed,
                  bool record_likelihood = false);

// Gibbs sampling for one held-out document with phi frozen.
DocTopics infer_topics(const TopicModel& model, const std::vector<int32_t>& doc,
                       int iterations, uint64_t seed);

// Versioned little-endian binary serialization.
void save_model(const std::string& path, const TopicModel& model);
TopicModel load_model(const std::string& path);

}  // namespace cascade
