#pragma once

#include <mathieu/rational.hpp>

#include <vector>

namespace mathieu {

/// Richardson extrapolation of s_n -> s_inf assuming s_n = s_inf + sum_k c_k / n^k.
/// `seq[i]` is s at n = first + i; the last `order + 1` terms are combined.
template <class Real>
Real richardson(const std::vector<Real>& seq, int first, int order) {
  int len = static_cast<int>(seq.size());
  if (order < 0 || order + 1 > len) throw DomainError("not enough terms for Richardson extrapolation");
  int n0 = first + len - 1 - order;
  Real acc = 0;
  for (int k = 0; k <= order; ++k) {
    // Weight (-1)^{k+order} (n0+k)^order / (k! (order-k)!)
    Real w = 1;
    for (int i = 0; i < order; ++i) w *= Real(n0 + k);
    Real fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    for (int i = 2; i <= order - k; ++i) fact *= i;
    w /= fact;
    if ((k + order) % 2) w = -w;
    acc += w * seq[len - 1 - order + k];
  }
  return acc;
}

}  // namespace mathieu
