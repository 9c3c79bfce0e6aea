// Complex special functions: log-Gamma, Riemann and Hurwitz zeta, Dirichlet L.
//
// Everything is evaluated in binary64 with a tracked absolute-error estimate.
// Zeta-type functions use Euler-Maclaurin summation with
// N = max(32, ceil |Im s|) terms and cfg.em_order Bernoulli corrections.
#pragma once

#include "xishift/characters.hpp"
#include "xishift/numeric.hpp"

namespace xishift {

/// Continuous (principal) branch of log Gamma(z): analytic on C minus
/// (-inf, 0], real on the positive axis. Throws PoleError at z = 0, -1, ...
ComplexValue log_gamma(cplx z, const EvalConfig& cfg = {});

/// Riemann zeta. Throws PoleError within 1e-8 of s = 1.
ComplexValue zeta(cplx s, const EvalConfig& cfg = {});

/// (s - 1) zeta(s), analytic everywhere; equals 1 at s = 1.
ComplexValue zeta_times_sm1(cplx s, const EvalConfig& cfg = {});

/// Hurwitz zeta(s, a) for 0 < a <= 1.
ComplexValue hurwitz_zeta(cplx s, double a, const EvalConfig& cfg = {});

/// L(s, chi) = q^-s sum_{r=1}^{q} chi(r) zeta(s, r/q).
ComplexValue dirichlet_l(cplx s, const DirichletCharacter& chi, const EvalConfig& cfg = {});

/// Euler-Maclaurin cutoff used for an argument s.
int em_cutoff(cplx s, const EvalConfig& cfg);

}  // namespace xishift
