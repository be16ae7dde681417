// AVX2 variants. Compiled with -mavx2 and only dispatched to after a runtime
// cpuid check. Each kernel reproduces the scalar reference order exactly:
// one ymm register holds the four lanes; the horizontal fold goes through a
// stack array as (t[0]+t[1])+(t[2]+t[3]). No FMA anywhere, the reference
// builds with contraction off.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "kernels_ops.hpp"

namespace cascade::kernels::detail {
namespace {

double hfold(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

double sum_avx2(const double* x, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  }
  double total = hfold(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double sum_sq_dev_avx2(const double* x, size_t n, double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = hfold(acc);
  for (; i < n; ++i) {
    const double d = x[i] - center;
    total += d * d;
  }
  return total;
}

__m256d load_i32x4_as_pd(const int32_t* p) {
  return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

void gibbs_weights_avx2(const int32_t* doc_topic, const int32_t* word_topic,
                        const int32_t* topic_total, double alpha, double beta,
                        double vbeta, int k, double* out) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vv = _mm256_set1_pd(vbeta);
  int t = 0;
  for (; t + 4 <= k; t += 4) {
    const __m256d dt = _mm256_add_pd(load_i32x4_as_pd(doc_topic + t), va);
    const __m256d wt = _mm256_add_pd(load_i32x4_as_pd(word_topic + t), vb);
    const __m256d tt = _mm256_add_pd(load_i32x4_as_pd(topic_total + t), vv);
    _mm256_storeu_pd(out + t, _mm256_div_pd(_mm256_mul_pd(dt, wt), tt));
  }
  for (; t < k; ++t) {
    out[t] = (static_cast<double>(doc_topic[t]) + alpha) *
             (static_cast<double>(word_topic[t]) + beta) /
             (static_cast<double>(topic_total[t]) + vbeta);
  }
}

void infer_weights_avx2(const double* phi_row, const int32_t* doc_topic,
                        double alpha, int k, double* out) {
  const __m256d va = _mm256_set1_pd(alpha);
  int t = 0;
  for (; t + 4 <= k; t += 4) {
    const __m256d dt = _mm256_add_pd(load_i32x4_as_pd(doc_topic + t), va);
    _mm256_storeu_pd(out + t, _mm256_mul_pd(_mm256_loadu_pd(phi_row + t), dt));
  }
  for (; t < k; ++t) {
    out[t] = phi_row[t] * (static_cast<double>(doc_topic[t]) + alpha);
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{sum_avx2, sum_sq_dev_avx2, gibbs_weights_avx2,
                       infer_weights_avx2};
  return ops;
}

}  // namespace cascade::kernels::detail

#endif
