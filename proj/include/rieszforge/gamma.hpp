// The unimodular phase matrix G[j][k] = exp(2 pi i <delta_j, p_k>), its exact
// frame bounds as extremal eigenvalues of G G*, and the column clustering
// analysis (principal angles, two-column closed forms, interleaving).

#ifndef RIESZFORGE_GAMMA_HPP
#define RIESZFORGE_GAMMA_HPP

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "rieszforge/bounds.hpp"
#include "rieszforge/errors.hpp"
#include "rieszforge/rational.hpp"

namespace rieszforge::gmatrix {

struct GammaMatrix {
    Eigen::MatrixXcd entries;       // unimodular, rows = offsets, cols = vertices
    std::vector<RPoint> offsets;    // delta_j
    std::vector<RPoint> vertices;   // p_k

    int size() const { return static_cast<int>(entries.rows()); }
};

struct ClusterPartition {
    std::vector<std::vector<int>> clusters;  // disjoint cover of column indices
    double alpha = 0.0;                      // in [0, 1/rows]
};

struct GammaReport {
    BoundsEstimate bounds;                    // (lambda_min, lambda_max) of G G*
    std::vector<double> eigenvalues;          // ascending
    std::vector<double> singular_values;      // sqrt(eigenvalues), ascending
    std::vector<double> cluster_eigenvalues;  // ascending, empty for dense route
    std::vector<int> cluster_of_column;       // -1 when no partition given
    bool nonsingular = true;
};

/// entries[j][k] = exp(2 pi i <delta_j, p_k>); phases reduced mod 1 exactly.
GammaMatrix build_gamma(const std::vector<RPoint>& offsets,
                        const std::vector<RPoint>& vertices);

/// Exact-route frame bounds via Hermitian eigendecomposition of G G*.
/// Throws SingularGamma when lambda_min <= 1e-12 * M.
GammaReport frame_bounds(const GammaMatrix& g);

/// |sum_{j<m} exp(2 pi i (a-a') delta j)|: m when delta(a-a') is an integer
/// (exact test), otherwise the sine ratio.
double node_inner_product(const Rat& a, const Rat& a_prime, const Rat& delta, int m);

/// Minimal principal angle (radians) between the spans of two column blocks,
/// from the cross-Gram of orthonormalized blocks.
double min_angle(const GammaMatrix& g, const std::vector<int>& block_u,
                 const std::vector<int>& block_v);

/// Cluster-route bounds: per-cluster singular spectra (closed form for pairs),
/// interleaved into global bounds scaled by (1 -+ rows*alpha). Throws
/// AngleConditionViolated when measured angles break pi/2 - alpha.
GammaReport cluster_bounds(const GammaMatrix& g, const ClusterPartition& part);

/// Columns grouped by vertex residue mod `modulus` (vertices must be integers).
ClusterPartition residue_clusters(const GammaMatrix& g, long long modulus, double alpha = 0.0);

/// CSV rows (index, lambda, sigma, cluster_id) in report order.
std::string eigenvalue_csv(const GammaReport& rep);

}  // namespace rieszforge::gmatrix

#endif
