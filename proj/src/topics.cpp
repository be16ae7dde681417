#include "cascade/topics.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <span>
#include <stdexcept>

#include "cascade/common.hpp"
#include "cascade/kernels.hpp"
#include "cascade/rng.hpp"

namespace cascade {

namespace {

int sample_from_weights(const double* w, int k, double r_unit) {
  // r_unit is in [0,1); scale by the same total the kernels produce so the
  // draw is identical on every backend.
  const double total = kernels::sum(std::span<const double>(w, static_cast<size_t>(k)));
  const double r = r_unit * total;
  double acc = 0.0;
  for (int t = 0; t < k; ++t) {
    acc += w[t];
    if (r < acc) return t;
  }
  return k - 1;
}

double joint_log_likelihood(int k, size_t V, double alpha, double beta,
                            const std::vector<int32_t>& n_dt,
                            const std::vector<int32_t>& n_wt,
                            const std::vector<int32_t>& n_t,
                            const std::vector<size_t>& doc_len) {
  const double vbeta = static_cast<double>(V) * beta;
  const double kalpha = static_cast<double>(k) * alpha;
  double ll = static_cast<double>(k) *
              (std::lgamma(vbeta) - static_cast<double>(V) * std::lgamma(beta));
  for (int t = 0; t < k; ++t) {
    ll -= std::lgamma(static_cast<double>(n_t[static_cast<size_t>(t)]) + vbeta);
  }
  for (size_t w = 0; w < V; ++w) {
    for (int t = 0; t < k; ++t) {
      const int32_t c = n_wt[w * static_cast<size_t>(k) + static_cast<size_t>(t)];
      if (c != 0) ll += std::lgamma(static_cast<double>(c) + beta) - std::lgamma(beta);
    }
  }
  const size_t D = doc_len.size();
  ll += static_cast<double>(D) *
        (std::lgamma(kalpha) - static_cast<double>(k) * std::lgamma(alpha));
  for (size_t d = 0; d < D; ++d) {
    for (int t = 0; t < k; ++t) {
      const int32_t c = n_dt[d * static_cast<size_t>(k) + static_cast<size_t>(t)];
      if (c != 0) ll += std::lgamma(static_cast<double>(c) + alpha) - std::lgamma(alpha);
    }
    ll -= std::lgamma(static_cast<double>(doc_len[d]) + kalpha);
  }
  return ll;
}

}  // namespace

LdaResult fit_lda(const std::vector<std::vector<int32_t>>& docs,
                  std::vector<std::string> vocab, int k, double alpha,
                  double beta, int iterations, uint64_t seed,
                  bool record_likelihood) {
  if (k < 1) throw std::invalid_argument("fit_lda: k must be >= 1");
  if (docs.empty()) throw std::invalid_argument("fit_lda: empty corpus");
  const size_t V = vocab.size();
  const size_t D = docs.size();
  const size_t ks = static_cast<size_t>(k);

  std::vector<size_t> doc_len(D);
  for (size_t d = 0; d < D; ++d) {
    doc_len[d] = docs[d].size();
    for (int32_t w : docs[d]) {
      if (w < 0 || static_cast<size_t>(w) >= V) {
        throw std::invalid_argument("fit_lda: word id outside vocabulary");
      }
    }
  }

  std::vector<int32_t> n_dt(D * ks, 0);
  std::vector<int32_t> n_wt(V * ks, 0);
  std::vector<int32_t> n_t(ks, 0);
  std::vector<std::vector<int32_t>> z(D);

  std::mt19937_64 g(derive_seed(seed, 0));
  for (size_t d = 0; d < D; ++d) {
    z[d].resize(docs[d].size());
    for (size_t i = 0; i < docs[d].size(); ++i) {
      const int t = static_cast<int>(uniform_below(g, static_cast<uint64_t>(k)));
      z[d][i] = t;
      ++n_dt[d * ks + static_cast<size_t>(t)];
      ++n_wt[static_cast<size_t>(docs[d][i]) * ks + static_cast<size_t>(t)];
      ++n_t[static_cast<size_t>(t)];
    }
  }

  const double vbeta = static_cast<double>(V) * beta;
  std::vector<double> weights(ks);
  LdaResult result;
  if (record_likelihood) result.log_likelihood.reserve(static_cast<size_t>(iterations));

  for (int iter = 0; iter < iterations; ++iter) {
    for (size_t d = 0; d < D; ++d) {
      int32_t* dt = n_dt.data() + d * ks;
      for (size_t i = 0; i < docs[d].size(); ++i) {
        const size_t w = static_cast<size_t>(docs[d][i]);
        const int t_old = z[d][i];
        --dt[t_old];
        --n_wt[w * ks + static_cast<size_t>(t_old)];
        --n_t[static_cast<size_t>(t_old)];

        kernels::gibbs_weights(dt, n_wt.data() + w * ks, n_t.data(), alpha,
                               beta, vbeta, k, weights.data());
        const int t_new = sample_from_weights(weights.data(), k, uniform_unit(g));

        z[d][i] = t_new;
        ++dt[t_new];
        ++n_wt[w * ks + static_cast<size_t>(t_new)];
        ++n_t[static_cast<size_t>(t_new)];
      }
    }
    if (record_likelihood) {
      result.log_likelihood.push_back(
          joint_log_likelihood(k, V, alpha, beta, n_dt, n_wt, n_t, doc_len));
    }
  }

  TopicModel& model = result.model;
  model.k = k;
  model.alpha = alpha;
  model.beta = beta;
  model.iterations = iterations;
  model.seed = seed;
  model.vocab = std::move(vocab);
  model.phi_vk.resize(V * ks);
  for (size_t w = 0; w < V; ++w) {
    for (size_t t = 0; t < ks; ++t) {
      model.phi_vk[w * ks + t] =
          (static_cast<double>(n_wt[w * ks + t]) + beta) /
          (static_cast<double>(n_t[t]) + vbeta);
    }
  }

  const double kalpha = static_cast<double>(k) * alpha;
  result.doc_topics.resize(D);
  for (size_t d = 0; d < D; ++d) {
    result.doc_topics[d].theta.resize(ks);
    for (size_t t = 0; t < ks; ++t) {
      result.doc_topics[d].theta[t] =
          (static_cast<double>(n_dt[d * ks + t]) + alpha) /
          (static_cast<double>(doc_len[d]) + kalpha);
    }
  }
  return result;
}

DocTopics infer_topics(const TopicModel& model, const std::vector<int32_t>& doc,
                       int iterations, uint64_t seed) {
  const int k = model.k;
  const size_t ks = static_cast<size_t>(k);
  const size_t V = model.vocab_size();
  for (int32_t w : doc) {
    if (w < 0 || static_cast<size_t>(w) >= V) {
      throw std::invalid_argument("infer_topics: word id outside vocabulary");
    }
  }
  std::vector<int32_t> n_dt(ks, 0);
  std::vector<int32_t> z(doc.size());
  std::mt19937_64 g(seed);
  for (size_t i = 0; i < doc.size(); ++i) {
    const int t = static_cast<int>(uniform_below(g, static_cast<uint64_t>(k)));
    z[i] = t;
    ++n_dt[static_cast<size_t>(t)];
  }
  std::vector<double> weights(ks);
  for (int iter = 0; iter < iterations; ++iter) {
    for (size_t i = 0; i < doc.size(); ++i) {
      const size_t w = static_cast<size_t>(doc[i]);
      --n_dt[static_cast<size_t>(z[i])];
      kernels::infer_weights(model.phi_vk.data() + w * ks, n_dt.data(),
                             model.alpha, k, weights.data());
      const int t_new = sample_from_weights(weights.data(), k, uniform_unit(g));
      z[i] = t_new;
      ++n_dt[static_cast<size_t>(t_new)];
    }
  }
  DocTopics out;
  out.theta.resize(ks);
  const double kalpha = static_cast<double>(k) * model.alpha;
  for (size_t t = 0; t < ks; ++t) {
    out.theta[t] = (static_cast<double>(n_dt[t]) + model.alpha) /
                   (static_cast<double>(doc.size()) + kalpha);
  }
  return out;
}

namespace {

constexpr char kMagic[4] = {'C', 'L', 'D', 'A'};
constexpr uint32_t kVersion = 1;

}  // namespace

void save_model(const std::string& path, const TopicModel& model) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  append_pod(out, kVersion);
  append_pod(out, model.k);
  append_pod(out, static_cast<uint64_t>(model.vocab.size()));
  append_pod(out, model.alpha);
  append_pod(out, model.beta);
  append_pod(out, model.iterations);
  append_pod(out, model.seed);
  for (const auto& w : model.vocab) {
    append_pod(out, static_cast<uint32_t>(w.size()));
    out.append(w);
  }
  out.append(reinterpret_cast<const char*>(model.phi_vk.data()),
             model.phi_vk.size() * sizeof(double));
  write_file_atomic(path, out);
}

TopicModel load_model(const std::string& path) {
  const std::string buf = read_file(path);
  size_t off = 0;
  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0) {
    throw io_error(path + ": not a topic model file");
  }
  off = 4;
  if (read_pod<uint32_t>(buf, off, path) != kVersion) {
    throw io_error(path + ": unsupported model version");
  }
  TopicModel m;
  m.k = read_pod<int32_t>(buf, off, path);
  const uint64_t V = read_pod<uint64_t>(buf, off, path);
  m.alpha = read_pod<double>(buf, off, path);
  m.beta = read_pod<double>(buf, off, path);
  m.iterations = read_pod<int32_t>(buf, off, path);
  m.seed = read_pod<uint64_t>(buf, off, path);
  if (m.k < 1) throw io_error(path + ": bad topic count");
  m.vocab.reserve(V);
  for (uint64_t i = 0; i < V; ++i) {
    const uint32_t len = read_pod<uint32_t>(buf, off, path);
    if (off + len > buf.size()) throw io_error(path + ": truncated model");
    m.vocab.emplace_back(buf.data() + off, len);
    off += len;
  }
  const size_t cells = static_cast<size_t>(V) * static_cast<size_t>(m.k);
  if (off + cells * sizeof(double) != buf.size()) {
    throw io_error(path + ": bad phi payload size");
  }
  m.phi_vk.resize(cells);
  std::memcpy(m.phi_vk.data(), buf.data() + off, cells * sizeof(double));
  return m;
}

}  // namespace cascade
