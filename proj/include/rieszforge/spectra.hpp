// Structured frequency sets: finitely many shift offsets over diagonal
// integer grids, plus residue exclusion filters. Exact membership, exact
// truncation, dual lattices, and the level-N family of the staircase
// construction.

#ifndef RIESZFORGE_SPECTRA_HPP
#define RIESZFORGE_SPECTRA_HPP

#include <optional>
#include <vector>

#include "rieszforge/geometry.hpp"
#include "rieszforge/rational.hpp"

namespace rieszforge::spectra {

using geometry::Lattice;

/// One coset delta + diag(scale) * Z^d. A zero scale component pins that
/// coordinate to the offset value (used for lifted single-frequency rows).
struct Branch {
    RPoint offset;
    RPoint scale;
};

/// Per-axis congruence pattern on the branch lattice index n: the point is
/// excluded when n_i = residue_i (mod modulus_i) for every axis i.
struct ExcludePattern {
    std::vector<BigInt> residue;
    std::vector<BigInt> modulus;
};

struct TruncatedSpectrum {
    int dimension = 2;
    std::vector<RPoint> frequencies;  // shell-lex order, no duplicates
};

struct FrequencySet {
    int dimension = 2;
    std::vector<Branch> branches;
    std::vector<ExcludePattern> excludes;

    /// Exact membership.
    bool contains(const RPoint& p) const;
    /// All member frequencies with max-norm <= radius, shell-lex order.
    TruncatedSpectrum truncate(const Rat& radius) const;
    /// Branch disjointness spot-check on a truncation; throws on violation.
    void validate(const Rat& radius = Rat(4)) const;
};

/// Union of n + delta_j over Z^d; offsets must be distinct mod Z^d.
FrequencySet shifted_family(const std::vector<RPoint>& offsets, int dimension);

/// Inverse-transpose lattice.
Lattice dual_lattice(const Lattice& lambda);

/// All dual-lattice points with max-norm <= radius, shell-lex order.
std::vector<RPoint> lattice_points(const Lattice& lambda, const Rat& radius);

/// The rhombus spectrum: (n/a, m/b) plus the (1/2a, 1/2b)-shifted coset.
/// Equals the dual of the rhombus tiling lattice.
FrequencySet rhombus_spectrum(const Rat& a, const Rat& b);

/// The quarter-integer grid (n/4, m/4).
FrequencySet b1_spectrum();

/// F1 minus F2, realized as residue exclusion on F1's branches. F2 must embed
/// into F1's branch structure (verified structurally and on a truncation).
FrequencySet set_difference(const FrequencySet& f1, const FrequencySet& f2,
                            const Rat& verify_radius = Rat(10));

enum class LiftVariant {
    /// Row-transfer choice: the y-offset is congruent to (grid * x-offset)
    /// mod the grid, which is what the unrolling isometry requires. This is
    /// the operative spectrum; its Gram sections stay inside the certified
    /// bounds.
    transfer_exact,
    /// The choice displayed in the source construction (equal x and y
    /// offsets). Kept as a cross-check; it fails the transfer condition and
    /// its Gram sections degenerate.
    stated_diagonal,
};

/// Level-N frequency family of the staircase pipeline (lift then unscale):
/// branches (2^N n + (4j+s)/2^N, 2^N m + w_{j,s}) for j < M/2, s in {0,1},
/// M = 2^{2N-1}.
FrequencySet main_spectrum(int N, LiftVariant variant = LiftVariant::transfer_exact);

/// Fraction of a radius-limited truncation of main_spectrum(N) contained in
/// main_spectrum(N+1). 1 would mean nesting holds on the truncation.
struct NestingReport {
    bool nested = false;
    long long contained = 0;
    long long total = 0;
};
NestingReport nesting_check(int N, const Rat& radius,
                            LiftVariant variant = LiftVariant::transfer_exact);

}  // namespace rieszforge::spectra

#endif
