#pragma once

#include <cstddef>
#include <cstdint>

// Backend function table. Each backend fills one of these; dispatch lives in
// kernels.cpp.
namespace cascade::kernels::detail {

struct Ops {
  double (*sum)(const double*, size_t);
  double (*sum_sq_dev)(const double*, size_t, double);
  void (*gibbs_weights)(const int32_t*, const int32_t*, const int32_t*,
                        double, double, double, int, double*);
  void (*infer_weights)(const double*, const int32_t*, double, int, double*);
};

const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif

}  // namespace cascade::kernels::detail
