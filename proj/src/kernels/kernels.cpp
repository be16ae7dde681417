#include "cascade/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_ops.hpp"

namespace cascade::kernels {
namespace detail {
namespace {

// Reference kernels. The lane structure mirrors one 4-wide vector register;
// SIMD variants must reproduce these exact operation orders.

double sum_scalar(const double* x, size_t n) {
  double l0 = 0, l1 = 0, l2 = 0, l3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    l0 += x[i];
    l1 += x[i + 1];
    l2 += x[i + 2];
    l3 += x[i + 3];
  }
  double total = (l0 + l1) + (l2 + l3);
  for (; i < n; ++i) total += x[i];
  return total;
}

double sum_sq_dev_scalar(const double* x, size_t n, double center) {
  double l0 = 0, l1 = 0, l2 = 0, l3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double d0 = x[i] - center;
    const double d1 = x[i + 1] - center;
    const double d2 = x[i + 2] - center;
    const double d3 = x[i + 3] - center;
    l0 += d0 * d0;
    l1 += d1 * d1;
    l2 += d2 * d2;
    l3 += d3 * d3;
  }
  double total = (l0 + l1) + (l2 + l3);
  for (; i < n; ++i) {
    const double d = x[i] - center;
    total += d * d;
  }
  return total;
}

void gibbs_weights_scalar(const int32_t* doc_topic, const int32_t* word_topic,
                          const int32_t* topic_total, double alpha,
                          double beta, double vbeta, int k, double* out) {
  for (int t = 0; t < k; ++t) {
    out[t] = (static_cast<double>(doc_topic[t]) + alpha) *
             (static_cast<double>(word_topic[t]) + beta) /
             (static_cast<double>(topic_total[t]) + vbeta);
  }
}

void infer_weights_scalar(const double* phi_row, const int32_t* doc_topic,
                          double alpha, int k, double* out) {
  for (int t = 0; t < k; ++t) {
    out[t] = phi_row[t] * (static_cast<double>(doc_topic[t]) + alpha);
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{sum_scalar, sum_sq_dev_scalar, gibbs_weights_scalar,
                       infer_weights_scalar};
  return ops;
}

}  // namespace detail

namespace {

Backend pick_default_backend() {
#if defined(__x86_64__) || defined(_M_X64)
  if (const char* env = std::getenv("CASCADE_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_supported(Backend::avx2))
      return Backend::avx2;
    return Backend::scalar;
  }
  if (backend_supported(Backend::avx2)) return Backend::avx2;
#endif
  return Backend::scalar;
}

struct State {
  Backend backend;
  const detail::Ops* ops;
};

State& state() {
  static State s = [] {
    const Backend b = pick_default_backend();
    State st;
    st.backend = b;
#if defined(__x86_64__) || defined(_M_X64)
    st.ops = (b == Backend::avx2) ? &detail::avx2_ops() : &detail::scalar_ops();
#else
    st.ops = &detail::scalar_ops();
#endif
    return st;
  }();
  return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

bool backend_supported(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  if (b == Backend::avx2) return __builtin_cpu_supports("avx2") != 0;
#endif
  return false;
}

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument("kernel backend not supported on this host");
  }
  State& s = state();
  s.backend = b;
#if defined(__x86_64__) || defined(_M_X64)
  s.ops = (b == Backend::avx2) ? &detail::avx2_ops() : &detail::scalar_ops();
#else
  s.ops = &detail::scalar_ops();
#endif
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

double sum(std::span<const double> x) {
  return state().ops->sum(x.data(), x.size());
}

double sum_sq_dev(std::span<const double> x, double center) {
  return state().ops->sum_sq_dev(x.data(), x.size(), center);
}

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return sum(x) / static_cast<double>(x.size());
}

double stddev_population(std::span<const double> x) {
  if (x.empty()) return 0.0;
  const double m = mean(x);
  return std::sqrt(sum_sq_dev(x, m) / static_cast<double>(x.size()));
}

double stddev_sample(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  return std::sqrt(sum_sq_dev(x, m) / static_cast<double>(x.size() - 1));
}

void gibbs_weights(const int32_t* doc_topic, const int32_t* word_topic,
                   const int32_t* topic_total, double alpha, double beta,
                   double vbeta, int k, double* out) {
  state().ops->gibbs_weights(doc_topic, word_topic, topic_total, alpha, beta,
                             vbeta, k, out);
}

void infer_weights(const double* phi_row, const int32_t* doc_topic,
                   double alpha, int k, double* out) {
  state().ops->infer_weights(phi_row, doc_topic, alpha, k, out);
}

}  // namespace cascade::kernels
