#pragma once

// Explicit finite sum L_p^a(x) = sum_k (-1)^k C(p+a, p-k) x^k / k!, carried
// in 50-digit binary floating point so cancellation at large x stays below
// double resolution.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace arns::oracle {

using Wide = boost::multiprecision::cpp_bin_float_50;

inline Wide binomial(int n, int k) {
  Wide r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double laguerre_series(int p, int a, double x) {
  Wide sum = 0;
  Wide xk = 1;
  Wide kfact = 1;
  const Wide wx = x;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) {
      xk *= wx;
      kfact *= k;
    }
    const Wide term = binomial(p + a, p - k) * xk / kfact;
    sum += (k % 2 == 0) ? term : Wide(-term);
  }
  return static_cast<double>(sum);
}

/// Sum of |terms|: the cancellation scale of the series at x.
inline double laguerre_series_scale(int p, int a, double x) {
  Wide sum = 0;
  Wide xk = 1;
  Wide kfact = 1;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) {
      xk *= x;
      kfact *= k;
    }
    sum += binomial(p + a, p - k) * xk / kfact;
  }
  return static_cast<double>(sum);
}

}  // namespace arns::oracle
