#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "rieszforge/gamma.hpp"
#include "rieszforge/util.hpp"

using namespace rieszforge;
using namespace rieszforge::gmatrix;

namespace {

std::vector<RPoint> p2_vertices() {
    std::vector<RPoint> p;
    for (long long v : {0, 1, 2, 3, 8, 13, 10, 7}) p.push_back(RPoint(Rat(v)));
    return p;
}

std::vector<RPoint> d2_offsets() {
    std::vector<RPoint> d;
    for (int j = 0; j < 4; ++j) d.push_back(RPoint(Rat(2 * j, 8)));
    for (int j = 0; j < 4; ++j) d.push_back(RPoint(Rat(4 * j + 1, 16)));
    return d;
}

GammaMatrix gamma2() { return build_gamma(d2_offsets(), p2_vertices()); }

}  // namespace

TEST_CASE("build_gamma basic entries") {
    auto g1 = build_gamma({RPoint(Rat(0))}, {RPoint(Rat(0))});
    CHECK(g1.entries(0, 0) == std::complex<double>(1, 0));

    auto g2 = build_gamma({RPoint(Rat(0)), RPoint(Rat(1, 2))},
                          {RPoint(Rat(0)), RPoint(Rat(1))});
    CHECK(std::abs(g2.entries(0, 0) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(g2.entries(0, 1) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(g2.entries(1, 0) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(g2.entries(1, 1) - std::complex<double>(-1, 0)) < 1e-15);

    CHECK_THROWS_AS(build_gamma({RPoint(Rat(0))}, {}), std::invalid_argument);
}

TEST_CASE("gamma_2 entries match independent elementwise evaluation") {
    auto g = gamma2();
    auto d = d2_offsets();
    auto p = p2_vertices();
    for (int j = 0; j < 8; ++j) {
        for (int k = 0; k < 8; ++k) {
            // oracle: long-double phase evaluated without mod-1 reduction
            long double ph = 2.0L * std::numbers::pi_v<long double> *
                             to_double(d[j].x) * to_double(p[k].x);
            std::complex<double> want(static_cast<double>(std::cos(ph)),
                                      static_cast<double>(std::sin(ph)));
            CHECK(std::abs(g.entries(j, k) - want) < 1e-12);
            CHECK(std::abs(std::abs(g.entries(j, k)) - 1.0) < 1e-15);
        }
    }
}

TEST_CASE("frame bounds") {
    auto g2 = build_gamma({RPoint(Rat(0)), RPoint(Rat(1, 2))},
                          {RPoint(Rat(0)), RPoint(Rat(1))});
    auto rep = frame_bounds(g2);
    CHECK(rep.bounds.lower == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.bounds.upper == doctest::Approx(2.0).epsilon(1e-12));

    auto rep8 = frame_bounds(gamma2());
    const double lo = 8.0 - 4.0 * std::sqrt(2.0), hi = 8.0 + 4.0 * std::sqrt(2.0);
    CHECK(rep8.bounds.lower == doctest::Approx(lo).epsilon(1e-9));
    CHECK(rep8.bounds.upper == doctest::Approx(hi).epsilon(1e-9));

    // offsets 0 and 0+1 give identical rows over integer vertices
    auto sing = build_gamma({RPoint(Rat(0)), RPoint(Rat(1))},
                            {RPoint(Rat(0)), RPoint(Rat(5))});
    CHECK_THROWS_AS(frame_bounds(sing), SingularGamma);
}

TEST_CASE("trace identity and unimodular bounds") {
    std::mt19937_64 gen(99);
    for (int trial = 0; trial < 10; ++trial) {
        int m = 3 + static_cast<int>(gen() % 6);
        std::vector<RPoint> offs, verts;
        for (int i = 0; i < m; ++i) {
            offs.push_back(RPoint(Rat(static_cast<long long>(gen() % 977), 977) + Rat(i)));
            verts.push_back(RPoint(Rat(static_cast<long long>(gen() % 64))));
        }
        auto g = build_gamma(offs, verts);
        Eigen::MatrixXcd gg = g.entries * g.entries.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gg, Eigen::EigenvaluesOnly);
        double sum = 0, mx = 0;
        for (Eigen::Index i = 0; i < m; ++i) {
            sum += es.eigenvalues()(i);
            mx = std::max(mx, es.eigenvalues()(i));
            CHECK(es.eigenvalues()(i) >= -1e-9);
        }
        CHECK(sum == doctest::Approx(static_cast<double>(m) * m).epsilon(1e-9));
        CHECK(mx <= static_cast<double>(m) * m + 1e-9);
    }
}

TEST_CASE("frame bounds invariant under simultaneous permutation") {
    auto d = d2_offsets();
    auto p = p2_vertices();
    auto base = frame_bounds(build_gamma(d, p));
    std::vector<std::size_t> perm = {5, 2, 7, 0, 3, 6, 1, 4};
    std::vector<RPoint> dp, pp;
    for (auto i : perm) { dp.push_back(d[i]); pp.push_back(p[i]); }
    auto permuted = frame_bounds(build_gamma(dp, pp));
    for (std::size_t i = 0; i < base.eigenvalues.size(); ++i)
        CHECK(base.eigenvalues[i] == doctest::Approx(permuted.eigenvalues[i]).epsilon(1e-9));
}

TEST_CASE("node inner product") {
    CHECK(node_inner_product(Rat(1, 4), Rat(0), Rat(1), 2) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(node_inner_product(Rat(7, 3), Rat(1, 3), Rat(1, 2), 5) == 5.0);
    for (int m = 2; m <= 9; ++m)
        CHECK(node_inner_product(Rat(1, m), Rat(0), Rat(1), m) ==
              doctest::Approx(0.0).epsilon(1e-12));

    // sine ratio agrees with direct geometric summation
    std::mt19937_64 gen(123);
    for (int trial = 0; trial < 1000; ++trial) {
        Rat a(static_cast<long long>(gen() % 4096), 1024);
        Rat ap(static_cast<long long>(gen() % 4096), 512);
        Rat delta(1 + static_cast<long long>(gen() % 63), 16);
        int m = 1 + static_cast<int>(gen() % 64);
        std::complex<double> s(0, 0);
        for (int j = 0; j < m; ++j) {
            double ph = 2.0 * std::numbers::pi * to_double(frac((a - ap) * delta * j));
            s += std::complex<double>(std::cos(ph), std::sin(ph));
        }
        CHECK(node_inner_product(a, ap, delta, m) ==
              doctest::Approx(std::abs(s)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("principal angles") {
    auto g = gamma2();
    // orthogonal singleton clusters: columns 0 and 4 (vertices 0 and 8, z=2)
    CHECK(min_angle(g, {0}, {4}) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
    // a column against itself placed in two clusters is rejected
    CHECK_THROWS_AS(min_angle(g, {0}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(min_angle(g, {}, {1}), std::invalid_argument);

    // identical columns in two clusters: duplicate-vertex construction
    auto dup = build_gamma({RPoint(Rat(0)), RPoint(Rat(1, 4)), RPoint(Rat(1, 2))},
                           {RPoint(Rat(1)), RPoint(Rat(1)), RPoint(Rat(2))});
    CHECK(min_angle(dup, {0}, {1}) == doctest::Approx(0.0).epsilon(1e-9));

    // residue clusters of gamma_2 are pairwise orthogonal
    auto part = residue_clusters(g, 4);
    REQUIRE(part.clusters.size() == 4);
    for (std::size_t u = 0; u < 4; ++u)
        for (std::size_t v = u + 1; v < 4; ++v)
            CHECK(min_angle(g, part.clusters[u], part.clusters[v]) ==
                  doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
}

TEST_CASE("cluster bounds at alpha = 0 reproduce the dense spectrum") {
    auto g = gamma2();
    auto part = residue_clusters(g, 4);
    auto cl = cluster_bounds(g, part);
    auto dense = frame_bounds(g);
    REQUIRE(cl.cluster_eigenvalues.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(cl.cluster_eigenvalues[i] ==
              doctest::Approx(dense.eigenvalues[i]).epsilon(1e-9));

    // frozen multiset {8-4sqrt2 x2, 8 x4, 8+4sqrt2 x2}
    const double s = 4.0 * std::sqrt(2.0);
    const double want[8] = {8 - s, 8 - s, 8, 8, 8, 8, 8 + s, 8 + s};
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(cl.cluster_eigenvalues[i] == doctest::Approx(want[i]).epsilon(1e-9));

    CHECK(cl.bounds.lower == doctest::Approx(8 - s).epsilon(1e-9));
    CHECK(cl.bounds.upper == doctest::Approx(8 + s).epsilon(1e-9));
}

TEST_CASE("all-singleton clustering of an orthogonal gamma") {
    // offsets j/4 over vertices 0..3: the 4x4 DFT-style matrix is orthogonal
    std::vector<RPoint> offs, verts;
    for (int j = 0; j < 4; ++j) {
        offs.push_back(RPoint(Rat(j, 4)));
        verts.push_back(RPoint(Rat(j)));
    }
    auto g = build_gamma(offs, verts);
    ClusterPartition part;
    for (int j = 0; j < 4; ++j) part.clusters.push_back({j});
    auto rep = cluster_bounds(g, part);
    for (double v : rep.cluster_eigenvalues) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("angle condition violations are detected") {
    auto g = gamma2();
    ClusterPartition bad;
    bad.clusters = {{0, 1}, {2, 3}, {4, 5}, {6, 7}};  // mixes non-orthogonal columns
    bad.alpha = 0.0;
    CHECK_THROWS_AS(cluster_bounds(g, bad), AngleConditionViolated);

    ClusterPartition incomplete;
    incomplete.clusters = {{0, 4}};
    CHECK_THROWS_AS(cluster_bounds(g, incomplete), std::invalid_argument);
}

TEST_CASE("csv report shape") {
    auto g = gamma2();
    auto part = residue_clusters(g, 4);
    auto rep = cluster_bounds(g, part);
    auto csv = eigenvalue_csv(rep);
    CHECK(csv.substr(0, 30) == "index,lambda,sigma,cluster_id\n");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    // determinism
    CHECK(csv == eigenvalue_csv(cluster_bounds(g, part)));
}
