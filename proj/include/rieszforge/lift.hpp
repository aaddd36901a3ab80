// The 1D <-> 2D correspondence for stacked unit-height rectangles: unrolling
// onto the line, the arithmetic compatibility condition on (lambda, omega)
// pairs, and product lifts of 1D spectra.

#ifndef RIESZFORGE_LIFT_HPP
#define RIESZFORGE_LIFT_HPP

#include <vector>

#include "rieszforge/geometry.hpp"
#include "rieszforge/rational.hpp"
#include "rieszforge/spectra.hpp"

namespace rieszforge::lift {

using geometry::MultiInterval;
using geometry::SignedDomain;
using spectra::FrequencySet;

struct StackRect {
    Rat alpha;
    Rat beta;
    long long v = 0;  // integer row offset, strictly increasing down the list
};

/// T = union of [alpha_k, beta_k) x [v_k, v_k+1), contained in
/// [0, width] x [0, v_M + 1].
struct StackSpec {
    long long width = 1;  // the integer N bounding every [alpha_k, beta_k)
    std::vector<StackRect> rects;

    void validate() const;
    SignedDomain to_domain() const;
};

/// I = union of [alpha_k + (k-1) width, beta_k + (k-1) width).
MultiInterval unroll(const StackSpec& spec);

enum class CompatVariant {
    stated,  // width * k * lambda - omega * v_k integral for k = 1..M
    proof,   // width * (k-1) * lambda - omega * v_k integral for k = 1..M
};

/// Exact integrality check of the chosen variant over all rectangles.
bool compatibility_check(const StackSpec& spec, const Rat& lambda, const Rat& omega,
                         CompatVariant variant = CompatVariant::stated);

/// {(lambda_i, m + omega_i) : m in Z} for finite lists; x stays pinned.
struct LiftedSpectrum {
    std::vector<std::pair<Rat, Rat>> pairs;
    FrequencySet family() const;  // branches (lambda_i, omega_i), scale (0, 1)
};

LiftedSpectrum lift_spectrum(const std::vector<Rat>& lambdas, const std::vector<Rat>& omegas);

/// Branch-wise lift of a 1D family: branch (delta_j over s Z) x (omega_j + Z).
FrequencySet lift_family(const FrequencySet& base_1d, const std::vector<Rat>& omegas);

/// The formal descriptor the staircase pipeline feeds to compatibility_check:
/// rectangle k carries v_k = k * 2^N with width 2^N.
StackSpec pipeline_stack(int N);

/// Row descriptor of the dilated level-N staircase: v_k = k - 1 (one row per
/// unit-height band), width 2^N. Used with the proof variant to test the
/// transfer condition the unrolling isometry actually needs.
StackSpec row_stack(int N);

}  // namespace rieszforge::lift

#endif
