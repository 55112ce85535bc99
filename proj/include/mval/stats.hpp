#pragma once

#include <span>

namespace mval {

enum class TestOutcome { a_wins, tie, b_wins };

// Two-sided paired t-test on aligned samples at significance `alpha`.
// Zero-variance differences degenerate cleanly: identical vectors tie, a
// constant nonzero offset is treated as significant (infinite t). Throws on
// length mismatch or fewer than 2 pairs.
TestOutcome paired_t_test(std::span<const double> a, std::span<const double> b,
                          double alpha = 0.05);

// Two-sided p-value of a Student-t statistic with df degrees of freedom,
// computed as I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

// Regularized incomplete beta function I_x(a, b), evaluated via the
// standard continued-fraction expansion (modified Lentz iteration).
double regularized_incomplete_beta(double a, double b, double x);

} // namespace mval
