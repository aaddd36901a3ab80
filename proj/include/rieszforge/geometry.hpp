// Exact planar (and 1D) domains: signed unions of axis-aligned rectangles and
// axis-aligned right triangles, with exact measures, rigid transforms,
// half-open membership, multi-tiling verification and the dyadic approximants
// of the staircase domain.
//
// Membership convention: a boundary point belongs to a cell iff the inward
// normal of the edge it lies on is lexicographically positive. This makes
// rectangles half-open [a,b) x [c,d) and makes lattice translates of a cell
// partition the plane exactly, so sampled covering counts are exact integers.

#ifndef RIESZFORGE_GEOMETRY_HPP
#define RIESZFORGE_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "rieszforge/errors.hpp"
#include "rieszforge/rational.hpp"

namespace rieszforge::geometry {

/// Half-open interval [left, right), left < right.
struct Interval {
    Rat left;
    Rat right;

    Rat length() const { return right - left; }
    bool contains(const Rat& t) const { return left <= t && t < right; }
};

/// Disjoint intervals sorted by left endpoint.
struct MultiInterval {
    std::vector<Interval> parts;

    Rat total_length() const;
    void validate() const;  // throws std::invalid_argument on overlap/disorder
};

struct RectShape {
    Interval x;
    Interval y;  // ignored for 1D cells
};

/// Axis-aligned right triangle: right-angle vertex plus signed leg lengths.
/// The triangle is {vertex + (s*leg_x, t*leg_y) : s,t >= 0, s+t <= 1}.
struct TriShape {
    RPoint vertex;
    Rat leg_x;
    Rat leg_y;
};

struct SignedCell {
    enum class Kind { rect, tri };
    Kind kind = Kind::rect;
    RectShape rect;
    TriShape tri;
    int weight = 1;  // +1 or -1

    static SignedCell make_rect(Rat x0, Rat x1, Rat y0, Rat y1, int w = 1);
    static SignedCell make_interval(Rat x0, Rat x1, int w = 1);  // 1D rect
    static SignedCell make_tri(RPoint vertex, Rat leg_x, Rat leg_y, int w = 1);

    Rat area(int dimension) const;
    /// Exact half-open membership test (weight not applied).
    bool contains(const RPoint& p, int dimension) const;
    /// Closed bounding box [x0,x1] x [y0,y1].
    void bbox(Rat& x0, Rat& x1, Rat& y0, Rat& y1) const;
    Rat perimeter(int dimension) const;
};

/// Finite signed union of cells whose pointwise indicator is 0/1 a.e.
struct SignedDomain {
    int dimension = 2;
    std::vector<SignedCell> cells;

    Rat measure() const;
    /// Signed indicator value at p (sum of weights of containing cells).
    int indicator(const RPoint& p) const;
    void bbox(Rat& x0, Rat& x1, Rat& y0, Rat& y1) const;
    Rat perimeter() const;
    void validate_structure() const;  // cell-level invariants only
};

/// Full-rank lattice B * Z^d given by a basis matrix (columns generate).
struct Lattice {
    int dimension = 2;
    // row-major entries; for dim 1 only b[0][0] is used
    Rat b[2][2] = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};

    Rat det() const;
    void validate() const;
    RPoint apply(const BigInt& n, const BigInt& m) const;
};

// ---- builders for the named domains ----

SignedDomain unit_square();
SignedDomain unit_interval();
/// Square [0,4)^2 minus the four unit corner triangles; measure 14.
SignedDomain octagon();
/// Rhombus with diagonals 2a (horizontal) and 2b (vertical), centred at 0.
SignedDomain rhombus(const Rat& a, const Rat& b);
/// The two-component staircase domain in unit coordinates: a bottom strip of
/// height 1/4 plus two slanted slope +-1 bands of vertical thickness 1/4.
SignedDomain figure3_domain();
SignedDomain interval_domain(const Rat& a, const Rat& b);

// ---- operations ----

/// Signed sum of cell areas, exact.
Rat measure(const SignedDomain& d);

/// rho * d + v with rho > 0; measure scales by rho^dimension.
SignedDomain transform(const SignedDomain& d, const Rat& rho, const RPoint& v);

/// Union of shifted parts; parts must be pairwise disjoint before and after
/// shifting (throws std::invalid_argument otherwise). Measure is preserved.
SignedDomain cut_translate(const std::vector<SignedDomain>& parts,
                           const std::vector<RPoint>& shifts);

struct SymmDiffEstimate {
    double value = 0.0;
    double grid_step = 0.0;
    double error_bound = 0.0;  // perimeter-proportional half-cell inflation
};

/// |d1 delta d2| estimated on a grid^2 off-lattice sample of the joint
/// bounding box. Diagnostic only; never used for certification.
SymmDiffEstimate symm_diff_measure(const SignedDomain& d1, const SignedDomain& d2,
                                   int grid);

struct TilingOptions {
    double agreement_threshold = 0.999;
    int min_cell_span = 4;  // every cell must span at least this many grid steps
};

/// The constant k with sum_l chi_d(x - l) = k at >= 99.9% of sampled x.
/// Throws NonUniformCovering if no level reaches the threshold.
int tiling_level(const SignedDomain& d, const Lattice& lambda, const Rat& window,
                 int grid, const TilingOptions& opts = {});

struct DyadicApproximant {
    int level = 2;                 // N
    Rat side;                      // 2^-N
    std::vector<RPoint> bottom;    // lower-left vertices, bottom rectangle part
    std::vector<RPoint> band;      // lower-left vertices, staircase part

    std::size_t square_count() const { return bottom.size() + band.size(); }
    SignedDomain to_domain() const;
    /// Same squares dilated by 2^N: unit squares at integer vertices.
    std::vector<std::pair<long long, long long>> dilated_cells() const;
};

/// Level-N dyadic approximant of the staircase domain, N >= 2.
DyadicApproximant dyadic_approximant(int N);

/// Fraction of level-N band squares covered by level-(N+1) band squares,
/// counted over the four dyadic children of each square. 1 means nested.
Rat band_nesting_fraction(const DyadicApproximant& fine_parent, const DyadicApproximant& finer);

/// Random-point indicator sanity: true iff indicator in {0,1} at all samples.
bool indicator_sane(const SignedDomain& d, int samples, std::uint64_t seed);

}  // namespace rieszforge::geometry

#endif
