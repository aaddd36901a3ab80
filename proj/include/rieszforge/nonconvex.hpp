// The staircase-domain certification pipeline: interval endpoints and
// frequencies at level N, residue clustering with per-cluster closed forms,
// exact Gamma bounds with the cluster cross-check, lift compatibility, and
// the per-level certificate that ties it all together.

#ifndef RIESZFORGE_NONCONVEX_HPP
#define RIESZFORGE_NONCONVEX_HPP

#include <string>
#include <vector>

#include "rieszforge/bounds.hpp"
#include "rieszforge/gamma.hpp"
#include "rieszforge/geometry.hpp"
#include "rieszforge/lift.hpp"
#include "rieszforge/spectra.hpp"

namespace rieszforge::nonconvex {

/// Left endpoints of the unrolled level-N intervals: {0..M/2-1} followed by
/// the two staircase families. All integers, each residue mod M/2 hit twice.
std::vector<long long> endpoints(int N);

/// Endpoints derived independently by unrolling the dilated approximant rows
/// (cell (a, r) -> a + r 2^N). Equals endpoints(N) as a set.
std::vector<long long> endpoints_by_unrolling(int N);

/// The M frequencies 2j/M and 2j/M + 1/(2M), j < M/2, M = 2^{2N-1}.
std::vector<Rat> frequencies(int N);

struct ClusterCheck {
    std::vector<std::pair<long long, long long>> pairs;  // (small, large) per cluster
    std::vector<int> z_values;                           // (large-small)/(M/2)
    double max_cross = 0.0;      // largest |<c_p, c_p'>| across clusters
    double max_within_err = 0.0; // worst |<c_p,c_p'>| vs M|cos(pi z/4)| relative
    bool ok = false;
};

/// Verifies the two-point residue clusters: sizes, orthogonality across
/// clusters, closed-form inner products within.
ClusterCheck verify_clusters(int N, int cap = 5);

struct PipelineLevel {
    int N = 2;
    long long M = 8;
    std::vector<long long> endpoints;
    std::vector<Rat> deltas;
    ClusterCheck clusters;

    BoundsEstimate bounds_exact;    // lambda extremes of Gamma Gamma*
    BoundsEstimate bounds_formula;  // cluster-formula route
    double unscaled_lower = 0.0;    // bounds_exact / 2^{2N}
    double unscaled_upper = 0.0;
    bool agreement_ok = false;      // dense vs cluster multiset to 1e-9 relative
    bool clusters_ok = false;
    bool compat_ok = false;         // stated condition, formal stack, displayed pairs
    bool transfer_ok = false;       // proof condition, row stack, operative pairs
    bool endpoints_unroll_ok = false;
    bool band_ok = false;           // unscaled bounds inside [(2-s)/4, (2+s)/4]
    bool extremes_attained = false;
    spectra::NestingReport nesting; // honest truncation report, not asserted
    bool gram_ok = false;           // only when options.gram_radius > 0
    double gram_lower = 0.0;
    double gram_upper = 0.0;
    std::vector<std::string> notes;
    bool valid = false;
};

struct CertificateOptions {
    int cap = 5;          // largest N certified by dense eigendecomposition
    Rat gram_radius = Rat(0);   // 0 disables the Gram cross-validation row
    Rat nesting_radius = Rat(5);
    int jobs = 1;
};

/// Full level certificate. `valid` collects every sub-check except the
/// nesting report, which the construction does not satisfy and which is
/// recorded rather than asserted.
PipelineLevel level_certificate(int N, const CertificateOptions& options = {});

}  // namespace rieszforge::nonconvex

#endif
