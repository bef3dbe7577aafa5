#pragma once

#include <string>
#include <vector>

#include "frontfix/types.hpp"

namespace frontfix {

enum class Scheme { Implicit, Explicit };

std::string to_string(Scheme s);

/// Frozen value of (1/S_f) dS_f/dtau used by the Von Neumann analysis.
/// Nonpositive when derived from a computed solution; arbitrary values are
/// allowed for exploratory scans.
struct FrozenFrontTerm {
    double g = 0.0;
};

struct StabilitySample {
    double phase;   // k*dx in radians
    double modulus; // |lambda|
};

struct StabilityReport {
    Scheme scheme;
    double mu = 0.0;
    double dx = 0.0;
    double dtau = 0.0;
    std::vector<StabilitySample> samples; // phases cover [0, pi] inclusive
    double max_modulus = 0.0;
    bool stable = false; // max_modulus <= 1 + 1e-12
};

/// |lambda| of the implicit scheme at one Fourier phase:
/// 1/sqrt((1+A)^2 + B^2) with A = r*dtau + 2 mu sigma^2 sin^2(phase/2) and
/// B = mu dx [(r - sigma^2/2) + g] sin(phase), dtau = mu dx^2.
double amplification_implicit(double phase, const ModelParams& params, double mu, double dx,
                              FrozenFrontTerm front);

/// |lambda| of the explicit comparison scheme at one Fourier phase:
/// |1 - A + iB| with the same A and B.
double amplification_explicit(double phase, const ModelParams& params, double mu, double dx,
                              FrozenFrontTerm front);

StabilityReport stability_scan(Scheme scheme, const ModelParams& params, double mu, double dx,
                               FrozenFrontTerm front, int n_samples,
                               Exec exec = Exec::Parallel);

/// Per-level frozen front terms g^n, n = 1..N, of a computed solution.
/// The implicit normalization divides by S_f^{n}, the explicit one by
/// S_f^{n-1} (matching each scheme's own convection discretization).
std::vector<FrozenFrontTerm> front_term_series(const FrontFixedSolution& solution,
                                               Scheme normalization);

} // namespace frontfix
