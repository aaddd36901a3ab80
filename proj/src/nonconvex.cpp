#include "rieszforge/nonconvex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rieszforge/gram.hpp"
#include "rieszforge/util.hpp"

namespace rieszforge::nonconvex {

std::vector<long long> endpoints(int N) {
    if (N < 2) throw std::invalid_argument("endpoints need N >= 2");
    const long long g = 1ll << N;
    const long long quarter = 1ll << (2 * N - 2);
    std::vector<long long> p;
    p.reserve(static_cast<std::size_t>(2 * quarter));
    for (long long v = 0; v < quarter; ++v) p.push_back(v);
    for (long long k = 0; k < g / 2; ++k)
        for (long long l = 0; l < g / 4; ++l)
            p.push_back(4 * quarter / 4 + g * (k + l + 1) + k);
    for (long long k = 0; k < g / 2; ++k)
        for (long long l = 0; l < g / 4; ++l)
            p.push_back(4 * quarter - (g * (2 * (k + l) + 3)) / 2 + k);
    return p;
}

std::vector<long long> endpoints_by_unrolling(int N) {
    auto cells = geometry::dyadic_approximant(N).dilated_cells();
    const long long g = 1ll << N;
    std::vector<long long> p;
    p.reserve(cells.size());
    for (const auto& [a, r] : cells) p.push_back(a + r * g);
    return p;
}

std::vector<Rat> frequencies(int N) {
    if (N < 2) throw std::invalid_argument("frequencies need N >= 2");
    const long long m = 1ll << (2 * N - 1);
    std::vector<Rat> d;
    d.reserve(static_cast<std::size_t>(m));
    for (long long j = 0; j < m / 2; ++j) d.emplace_back(2 * j, m);
    for (long long j = 0; j < m / 2; ++j) d.push_back(Rat(2 * j, m) + Rat(1, 2 * m));
    return d;
}

namespace {

gmatrix::GammaMatrix level_gamma(int N) {
    std::vector<RPoint> offs, verts;
    for (const auto& d : frequencies(N)) offs.push_back(RPoint(d));
    for (long long p : endpoints(N)) verts.push_back(RPoint(Rat(p)));
    return gmatrix::build_gamma(offs, verts);
}

}  // namespace

ClusterCheck verify_clusters(int N, int cap) {
    if (N < 2) throw std::invalid_argument("verify_clusters needs N >= 2");
    if (N > cap) throw std::invalid_argument("N exceeds the configured cap");
    const long long m = 1ll << (2 * N - 1);
    const long long half = m / 2;

    auto p = endpoints(N);
    std::map<long long, std::vector<long long>> bins;
    for (long long v : p) bins[((v % half) + half) % half].push_back(v);

    ClusterCheck cc;
    for (auto& [r, vals] : bins) {
        if (vals.size() != 2) return cc;  // structural failure, ok stays false
        std::sort(vals.begin(), vals.end());
        cc.pairs.emplace_back(vals[0], vals[1]);
        long long diff = vals[1] - vals[0];
        if (diff % half != 0) return cc;
        cc.z_values.push_back(static_cast<int>(diff / half));
    }
    if (static_cast<long long>(cc.pairs.size()) != half) return cc;

    auto g = level_gamma(N);
    std::map<long long, int> col_of;
    for (int k = 0; k < g.size(); ++k)
        col_of[static_cast<long long>(rat_num(g.vertices[static_cast<std::size_t>(k)].x))] = k;

    // cross-cluster inner products vanish; within-cluster match M|cos(pi z/4)|
    for (std::size_t u = 0; u < cc.pairs.size(); ++u) {
        for (std::size_t v = 0; v < cc.pairs.size(); ++v) {
            if (u == v) continue;
            for (long long pu : {cc.pairs[u].first, cc.pairs[u].second}) {
                std::complex<double> ip = g.entries.col(col_of[pu])
                                              .dot(g.entries.col(col_of[cc.pairs[v].first]));
                cc.max_cross = std::max(cc.max_cross, std::abs(ip));
            }
        }
    }
    for (std::size_t u = 0; u < cc.pairs.size(); ++u) {
        std::complex<double> ip = g.entries.col(col_of[cc.pairs[u].first])
                                      .dot(g.entries.col(col_of[cc.pairs[u].second]));
        double want = static_cast<double>(m) *
                      std::abs(std::cos(std::numbers::pi * cc.z_values[u] / 4.0));
        double err = std::abs(std::abs(ip) - want) / static_cast<double>(m);
        cc.max_within_err = std::max(cc.max_within_err, err);
    }

    bool z_ok = true;
    for (int z : cc.z_values) z_ok = z_ok && (z >= 1 && z <= 3);
    cc.ok = z_ok && cc.max_cross <= 1e-9 * static_cast<double>(m) &&
            cc.max_within_err <= 1e-9;
    return cc;
}

PipelineLevel level_certificate(int N, const CertificateOptions& options) {
    if (N < 2) throw std::invalid_argument("level_certificate needs N >= 2");
    if (N > options.cap)
        throw std::invalid_argument("N exceeds the certification cap (dense route)");

    PipelineLevel lvl;
    lvl.N = N;
    lvl.M = 1ll << (2 * N - 1);
    lvl.endpoints = endpoints(N);
    lvl.deltas = frequencies(N);

    // step c cross-check: formula endpoints equal the row-unrolled cells
    {
        auto a = lvl.endpoints;
        auto b = endpoints_by_unrolling(N);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        lvl.endpoints_unroll_ok = a == b;
        long long maxp = a.back();
        if (maxp >= lvl.M / 2)
            lvl.notes.push_back(
                "endpoint range: max " + std::to_string(maxp) + " exceeds M/2 = " +
                std::to_string(lvl.M / 2) +
                "; cluster offsets z are taken from the true differences");
    }

    lvl.clusters = verify_clusters(N, options.cap);
    lvl.clusters_ok = lvl.clusters.ok;

    auto g = level_gamma(N);
    auto dense = gmatrix::frame_bounds(g);
    lvl.bounds_exact = dense.bounds;

    auto part = gmatrix::residue_clusters(g, lvl.M / 2);
    auto cluster = gmatrix::cluster_bounds(g, part);
    lvl.bounds_formula = cluster.bounds;

    double agree = 0.0;
    for (std::size_t i = 0; i < dense.eigenvalues.size(); ++i)
        agree = std::max(agree, std::abs(dense.eigenvalues[i] - cluster.eigenvalues[i]) /
                                    static_cast<double>(lvl.M));
    lvl.agreement_ok = agree <= 1e-9;

    const double scale = std::pow(2.0, -2.0 * N);
    lvl.unscaled_lower = dense.bounds.lower * scale;
    lvl.unscaled_upper = dense.bounds.upper * scale;
    const double lo = (2.0 - std::sqrt(2.0)) / 4.0, hi = (2.0 + std::sqrt(2.0)) / 4.0;
    lvl.band_ok = lvl.unscaled_lower >= lo - 1e-9 && lvl.unscaled_upper <= hi + 1e-9;
    bool has_odd_z = false;
    for (int z : lvl.clusters.z_values) has_odd_z = has_odd_z || z == 1 || z == 3;
    lvl.extremes_attained = has_odd_z && std::abs(lvl.unscaled_lower - lo) <= 1e-9 &&
                            std::abs(lvl.unscaled_upper - hi) <= 1e-9;

    // lift conditions: the displayed pairs pass the stated check on the
    // formal stack; the operative pairs pass the transfer (proof) check on
    // the row stack
    {
        auto formal = lift::pipeline_stack(N);
        auto rows = lift::row_stack(N);
        const Rat g2(1ll << N);
        bool stated_all = true, proof_all = true;
        for (const auto& d : lvl.deltas) {
            stated_all = stated_all &&
                         lift::compatibility_check(formal, d, d, lift::CompatVariant::stated);
            proof_all = proof_all &&
                        lift::compatibility_check(rows, d, frac(g2 * d),
                                                  lift::CompatVariant::proof);
        }
        lvl.compat_ok = stated_all;
        lvl.transfer_ok = proof_all;
        lvl.notes.push_back(
            "displayed equal-offset lift passes the stated condition only on the formal "
            "stack; the operative spectrum uses the transfer choice omega = frac(2^N lambda)");
    }

    lvl.nesting = spectra::nesting_check(N, options.nesting_radius);
    if (!lvl.nesting.nested)
        lvl.notes.push_back("level nesting fails on the truncation: " +
                            std::to_string(lvl.nesting.contained) + "/" +
                            std::to_string(lvl.nesting.total) + " frequencies carry over");

    if (options.gram_radius > 0) {
        auto dn = geometry::dyadic_approximant(N).to_domain();
        auto est = gram::section_bounds(dn, spectra::main_spectrum(N), options.gram_radius,
                                        {4096, options.jobs});
        lvl.gram_lower = est.lower;
        lvl.gram_upper = est.upper;
        lvl.gram_ok = est.lower >= lvl.unscaled_lower - 1e-6 &&
                      est.upper <= lvl.unscaled_upper + 1e-6;
    }

    lvl.valid = lvl.clusters_ok && lvl.agreement_ok && lvl.band_ok && lvl.extremes_attained &&
                lvl.compat_ok && lvl.transfer_ok && lvl.endpoints_unroll_ok &&
                (options.gram_radius <= 0 || lvl.gram_ok);
    return lvl;
}

}  // namespace rieszforge::nonconvex
