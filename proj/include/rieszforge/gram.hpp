// Closed-form Fourier transforms of signed cells and Hermitian Gram finite
// sections: the computable eigenvalue surrogate for frame / Riesz bound
// inequalities on any (domain, spectrum) pair.
//
// Rectangle cells factor into per-axis sinc terms. Triangle cells reduce to
// the simplex integral T2(a, b) = int_{u,w>=0, u+w<=1} e^{2 pi i (a u + b w)},
// evaluated as a divided difference of the entire function
// E1(c) = (e^c - 1)/c at A = 2 pi i a, B = 2 pi i b:
//
//     T2(a, b) = (E1(A) - E1(B)) / (A - B),
//
// with a double power series when both |A|, |B| are small and a Taylor
// expansion in B - A when the denominator degenerates. The degenerate lines
// a = 0, b = 0, a = +-b are detected exactly in rational arithmetic before
// any floating evaluation.

#ifndef RIESZFORGE_GRAM_HPP
#define RIESZFORGE_GRAM_HPP

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "rieszforge/bounds.hpp"
#include "rieszforge/errors.hpp"
#include "rieszforge/geometry.hpp"
#include "rieszforge/spectra.hpp"

namespace rieszforge::gram {

using geometry::SignedCell;
using geometry::SignedDomain;
using spectra::FrequencySet;
using spectra::TruncatedSpectrum;

/// int_cell e^{2 pi i xi . x} dx (weight not applied).
std::complex<double> ft_cell(const SignedCell& cell, const RPoint& xi, int dimension);

/// Signed sum of cell transforms.
std::complex<double> ft_domain(const SignedDomain& d, const RPoint& xi);

struct GramSection {
    SignedDomain domain;
    TruncatedSpectrum spectrum;
    Eigen::MatrixXcd matrix;  // G[j][k] = FT_domain(lambda_k - lambda_j)

    int size() const { return static_cast<int>(matrix.rows()); }
};

/// Hermitian by construction: the upper triangle is computed, the diagonal is
/// the exact domain measure, the lower triangle mirrors.
GramSection gram_section(const SignedDomain& d, const TruncatedSpectrum& spectrum,
                         int jobs = 1);

struct SectionOptions {
    int cap = 4096;  // maximum section size
    int jobs = 1;
};

/// (lambda_min, lambda_max) of the finite section: a certified inner
/// approximation of the optimal [A, B] that widens with the radius.
/// Throws SectionCapExceeded past opts.cap.
BoundsEstimate section_bounds(const SignedDomain& d, const FrequencySet& f, const Rat& radius,
                              const SectionOptions& opts = {});

struct QuotientRange {
    double min = 0.0;
    double max = 0.0;
    int trials = 0;
};

/// Extremes of a* G a / |a|^2 over random complex coefficient vectors.
QuotientRange random_quotient_test(const SignedDomain& d, const FrequencySet& f,
                                   const Rat& radius, int trials, std::uint64_t seed,
                                   const SectionOptions& opts = {});

/// CSV rows (radius, section_size, lambda_min, lambda_max, runtime_ms) for a
/// sweep of radii. runtime_ms is written as 0 unless timings is set, keeping
/// default output byte-deterministic.
std::string convergence_csv(const SignedDomain& d, const FrequencySet& f,
                            const std::vector<Rat>& radii, const SectionOptions& opts = {},
                            bool timings = false);

}  // namespace rieszforge::gram

#endif
