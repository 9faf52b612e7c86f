#pragma once

#include "tadecay/resonance.hpp"
#include "tadecay/units.hpp"

namespace tadecay {

// Conjugate-variable transform convention: F(t) = (1/2pi) int f(E) exp(-iEt) dE.
// Lower: F supported on t >= 0 (boundary values of functions analytic in the
// lower half-plane). Upper: F supported on t <= 0.
enum class HardyKind { Upper, Lower, Neither };

struct HardyClass {
    HardyKind kind;
    // Fraction of L2 mass on the forbidden side of the assigned class; for
    // Neither, the smaller of the two fractions.
    double leakage;
};

struct SupportProfile {
    double mass_negative;
    double mass_nonnegative;
    double total;
    // Trapezoid L2 norm of the samples, and the analytic correction for the
    // part of the tail model that lies outside the grid.
    double grid_norm_sq;
    double tail_correction;
};

struct SpectralOptions {
    // Largest permitted |f| at either grid end, relative to max |f|.
    double edge_ratio_max = 1e-2;
    // Transform length is the next power of two >= padding * N.
    int padding = 4;
};

SupportProfile fourier_support_profile(const SampledWaveFunction& f, const SpectralOptions& opt = {});

HardyClass hardy_classify(const SampledWaveFunction& f, double tol = 1e-4, const SpectralOptions& opt = {});

struct HardyParts {
    SampledWaveFunction upper;
    SampledWaveFunction lower;
};

HardyParts hardy_project(const SampledWaveFunction& f, const SpectralOptions& opt = {});

// Principal-value convolution with 1/(pi E); multiplier -i sign(t).
SampledWaveFunction hilbert_transform(const SampledWaveFunction& f, const SpectralOptions& opt = {});

enum class Guard { Enforce, Probe };

struct EvolvedState {
    SampledWaveFunction f;
    // mass_negative / total of the result
    double lower_leakage;
};

// Pointwise multiplier exp(+iEt/hbar): under the transform convention above it
// translates the support of F by +t, so t >= 0 keeps a Lower function Lower.
EvolvedState semigroup_multiplier(const SampledWaveFunction& f, double t, Guard guard, Units units = {},
                                  const SpectralOptions& opt = {});

} // namespace tadecay
