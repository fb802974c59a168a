#pragma once

namespace betadens {

/// Standard normal cumulative distribution function.
double normal_cdf(double x);

/// Standard normal quantile Phi^{-1}(p) for p in (0, 1).
///
/// Wichura's AS 241 (PPND16) rational approximation; relative accuracy about
/// 1e-16, well inside the 1e-9 absolute budget on (1e-300, 1 - 1e-16).
/// Throws DomainError unless 0 < p < 1.
double normal_quantile(double p);

}  // namespace betadens
