#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace cascade::kernels {

// Every kernel promises bit-identical results across backends. Reductions
// share one fixed accumulation order: four independent lanes, lanes folded
// as (l0 + l1) + (l2 + l3), tail elements added sequentially. The AVX2 path
// is the scalar path, four elements at a time. Element-wise kernels carry no
// ordering at all. Equivalence is enforced by tests, so callers may treat
// backend selection as invisible.

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_supported(Backend b);
// For tests and the CASCADE_KERNELS env override (values: scalar, avx2).
// Throws std::invalid_argument when the backend is unsupported here.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

double sum(std::span<const double> x);
// Sum of squared deviations from `center`.
double sum_sq_dev(std::span<const double> x, double center);

double mean(std::span<const double> x);
double stddev_population(std::span<const double> x);
double stddev_sample(std::span<const double> x);  // Bessel-corrected; 0 if n < 2

// Collapsed-Gibbs sampling weights:
//   out[t] = (doc_topic[t] + alpha) * (word_topic[t] + beta)
//            / (topic_total[t] + vbeta)
void gibbs_weights(const int32_t* doc_topic, const int32_t* word_topic,
                   const int32_t* topic_total, double alpha, double beta,
                   double vbeta, int k, double* out);

// Held-out inference weights: out[t] = phi_row[t] * (doc_topic[t] + alpha)
void infer_weights(const double* phi_row, const int32_t* doc_topic,
                   double alpha, int k, double* out);

}  // namespace cascade::kernels
