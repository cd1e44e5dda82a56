#pragma once

namespace fluidc {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
// a > 0, x >= 0. Series expansion for x < a + 1, continued fraction
// otherwise; relative error below 1e-10 across the chi-square range.
double gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of
// freedom at the statistic x: Q(df/2, x/2).
double chi_square_survival(double x, int df);

}  // namespace fluidc
