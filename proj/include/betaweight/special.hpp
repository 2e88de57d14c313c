#pragma once

#include "betaweight/rng.hpp"

namespace bw {

// Beta distribution parameters stored as logs so the strictly-positive
// constraint holds by construction under unconstrained updates.
struct BetaParams {
    double log_a = 0.0;
    double log_b = 0.0;

    double a() const;
    double b() const;
    static BetaParams from_ab(double a, double b);
};

// ln Gamma(x) for x > 0; throws DomainError otherwise.
double lgamma(double x);

// Beta(a,b) density at x in (0,1); throws DomainError outside.
double beta_pdf(double x, const BetaParams& p);

// Regularized incomplete beta I_x(a,b) for x in [0,1], continued-fraction
// evaluation with the symmetry switch at x > (a+1)/(a+b+2).
double beta_cdf(double x, const BetaParams& p);

// One draw w ~ Beta(a,b) as a ratio of two Gamma draws; always in (0,1).
double sample_beta(const BetaParams& p, RandomStream& rng);

struct CdfParamGrads {
    double d_da = 0.0;  // dI_x(a,b)/da
    double d_db = 0.0;  // dI_x(a,b)/db
};

// Partial derivatives of the CDF in (a,b), central finite differences with
// step 1e-5*max(1,param), x in (0,1).
CdfParamGrads beta_cdf_param_grads(double x, const BetaParams& p);

struct ImplicitGrads {
    double dx_da = 0.0;
    double dx_db = 0.0;
    bool clamped = false;  // x was pushed back into [eps, 1-eps]
};

// Implicit pathwise derivatives of a Beta draw w.r.t. its parameters,
// holding the underlying uniform noise fixed: -(dF/dparam)/pdf(x).
// x within 1e-7 of an endpoint is clamped and flagged.
ImplicitGrads implicit_beta_grad(double x, const BetaParams& p);

}  // namespace bw
