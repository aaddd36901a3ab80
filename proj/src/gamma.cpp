#include "rieszforge/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "rieszforge/util.hpp"

namespace rieszforge::gmatrix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::complex<double> unit_phase(const Rat& turns) {
    double t = to_double(frac(turns));  // reduce mod 1 before evaluating
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

Eigen::MatrixXcd columns(const GammaMatrix& g, const std::vector<int>& idx) {
    Eigen::MatrixXcd out(g.entries.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) {
        if (idx[c] < 0 || idx[c] >= g.size())
            throw std::invalid_argument("column index out of range");
        out.col(static_cast<Eigen::Index>(c)) = g.entries.col(idx[c]);
    }
    return out;
}

}  // namespace

GammaMatrix build_gamma(const std::vector<RPoint>& offsets, const std::vector<RPoint>& vertices) {
    if (offsets.empty() || offsets.size() != vertices.size())
        throw std::invalid_argument("offsets and vertices must have equal positive size");
    const auto m = static_cast<Eigen::Index>(offsets.size());
    GammaMatrix g;
    g.offsets = offsets;
    g.vertices = vertices;
    g.entries.resize(m, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index k = 0; k < m; ++k)
            g.entries(j, k) = unit_phase(dot(offsets[static_cast<std::size_t>(j)],
                                             vertices[static_cast<std::size_t>(k)]));
    return g;
}

GammaReport frame_bounds(const GammaMatrix& g) {
    const int m = g.size();
    Eigen::MatrixXcd gg = g.entries * g.entries.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gg, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");

    GammaReport rep;
    rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + m);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
    for (double v : rep.eigenvalues) rep.singular_values.push_back(std::sqrt(std::max(0.0, v)));
    rep.cluster_of_column.assign(static_cast<std::size_t>(m), -1);

    const double lam_min = rep.eigenvalues.front();
    if (lam_min <= 1e-12 * m)
        throw SingularGamma("lambda_min = " + fmt17(lam_min) + " below tolerance " +
                            fmt17(1e-12 * m) + ": system is not a Riesz basis");
    rep.nonsingular = true;
    rep.bounds.lower = lam_min;
    rep.bounds.upper = rep.eigenvalues.back();
    rep.bounds.provenance = Provenance::exact_gamma;
    rep.bounds.section_size = m;
    return rep;
}

double node_inner_product(const Rat& a, const Rat& a_prime, const Rat& delta, int m) {
    if (m < 1) throw std::invalid_argument("node count must be >= 1");
    Rat step = (a - a_prime) * delta;
    if (is_integer(step)) return static_cast<double>(m);
    // both sine arguments reduced mod 2 exactly before evaluation
    double num = std::sin(std::numbers::pi * to_double(frac(Rat(m) * step)));
    double den = std::sin(std::numbers::pi * to_double(frac(step)));
    return std::abs(num / den);
}

double min_angle(const GammaMatrix& g, const std::vector<int>& block_u,
                 const std::vector<int>& block_v) {
    if (block_u.empty() || block_v.empty()) throw std::invalid_argument("empty cluster");
    for (int i : block_u)
        for (int j : block_v)
            if (i == j) throw std::invalid_argument("clusters overlap");

    Eigen::MatrixXcd qu = Eigen::HouseholderQR<Eigen::MatrixXcd>(columns(g, block_u))
                              .householderQ() *
                          Eigen::MatrixXcd::Identity(g.entries.rows(),
                                                     static_cast<Eigen::Index>(block_u.size()));
    Eigen::MatrixXcd qv = Eigen::HouseholderQR<Eigen::MatrixXcd>(columns(g, block_v))
                              .householderQ() *
                          Eigen::MatrixXcd::Identity(g.entries.rows(),
                                                     static_cast<Eigen::Index>(block_v.size()));
    Eigen::MatrixXcd cross = qu.adjoint() * qv;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cross);
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    smax = std::clamp(smax, 0.0, 1.0);
    return std::acos(smax);
}

ClusterPartition residue_clusters(const GammaMatrix& g, long long modulus, double alpha) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
    std::map<long long, std::vector<int>> bins;
    for (int k = 0; k < g.size(); ++k) {
        const RPoint& p = g.vertices[static_cast<std::size_t>(k)];
        if (!is_integer(p.x) || p.dim != 1)
            throw std::invalid_argument("residue clustering needs integer 1D vertices");
        long long v = static_cast<long long>(rat_num(p.x));
        long long r = ((v % modulus) + modulus) % modulus;
        bins[r].push_back(k);
    }
    ClusterPartition part;
    part.alpha = alpha;
    for (auto& [r, idx] : bins) part.clusters.push_back(std::move(idx));
    return part;
}

GammaReport cluster_bounds(const GammaMatrix& g, const ClusterPartition& part) {
    const int m = g.size();
    std::vector<int> owner(static_cast<std::size_t>(m), -1);
    for (std::size_t u = 0; u < part.clusters.size(); ++u) {
        if (part.clusters[u].empty()) throw std::invalid_argument("empty cluster");
        for (int k : part.clusters[u]) {
            if (k < 0 || k >= m || owner[static_cast<std::size_t>(k)] != -1)
                throw std::invalid_argument("clusters must partition the columns");
            owner[static_cast<std::size_t>(k)] = static_cast<int>(u);
        }
    }
    for (int o : owner)
        if (o == -1) throw std::invalid_argument("clusters must cover all columns");
    if (part.alpha < 0 || part.alpha > 1.0 / m)
        throw std::invalid_argument("alpha outside [0, 1/rows]");

    // angle precondition, with a small numerical slack on top of alpha
    const double need = std::numbers::pi / 2 - part.alpha - 1e-9;
    for (std::size_t u = 0; u < part.clusters.size(); ++u) {
        for (std::size_t v = u + 1; v < part.clusters.size(); ++v) {
            double ang = min_angle(g, part.clusters[u], part.clusters[v]);
            if (ang < need)
                throw AngleConditionViolated("clusters " + std::to_string(u) + "," +
                                             std::to_string(v) + " at angle " + fmt17(ang));
        }
    }

    GammaReport rep;
    rep.cluster_of_column.assign(static_cast<std::size_t>(m), -1);
    for (std::size_t u = 0; u < part.clusters.size(); ++u)
        for (int k : part.clusters[u])
            rep.cluster_of_column[static_cast<std::size_t>(k)] = static_cast<int>(u);

    for (const auto& cluster : part.clusters) {
        if (cluster.size() == 1) {
            rep.cluster_eigenvalues.push_back(static_cast<double>(m));  // unimodular column
        } else if (cluster.size() == 2) {
            // lambda^2 - 2 M lambda + M^2 - |<c_p, c_p'>|^2 = 0
            std::complex<double> ip =
                g.entries.col(cluster[0]).dot(g.entries.col(cluster[1]));
            double c = std::abs(ip);
            rep.cluster_eigenvalues.push_back(m - c);
            rep.cluster_eigenvalues.push_back(m + c);
        } else {
            Eigen::MatrixXcd block = columns(g, cluster);
            Eigen::MatrixXcd s = block.adjoint() * block;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                rep.cluster_eigenvalues.push_back(es.eigenvalues()(i));
        }
    }
    std::sort(rep.cluster_eigenvalues.begin(), rep.cluster_eigenvalues.end());
    rep.eigenvalues = rep.cluster_eigenvalues;
    for (double v : rep.eigenvalues) rep.singular_values.push_back(std::sqrt(std::max(0.0, v)));

    const double lo = 1.0 - m * part.alpha, hi = 1.0 + m * part.alpha;
    rep.bounds.lower = lo * rep.cluster_eigenvalues.front();
    rep.bounds.upper = hi * rep.cluster_eigenvalues.back();
    rep.bounds.provenance = Provenance::cluster_formula;
    rep.bounds.section_size = m;
    rep.nonsingular = rep.bounds.lower > 1e-12 * m;
    return rep;
}

std::string eigenvalue_csv(const GammaReport& rep) {
    std::ostringstream os;
    os << "index,lambda,sigma,cluster_id\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        int cid = i < rep.cluster_of_column.size() ? rep.cluster_of_column[i] : -1;
        os << i << "," << fmt17(rep.eigenvalues[i]) << "," << fmt17(rep.singular_values[i])
           << "," << cid << "\n";
    }
    return os.str();
}

}  // namespace rieszforge::gmatrix
