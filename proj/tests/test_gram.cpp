#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <cstdio>

#include "rieszforge/gram.hpp"
#include "rieszforge/util.hpp"

using namespace rieszforge;
using namespace rieszforge::geometry;
using namespace rieszforge::gram;
using cplx = std::complex<double>;

namespace {

// ---- independent quadrature oracle (test-only) ----

struct GaussRule {
    std::vector<double> x, w;  // nodes and weights on [0, 1]
};

// Gauss-Legendre nodes via Newton iteration on P_n.
GaussRule gauss_rule(int n) {
    GaussRule r;
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        r.x.push_back((t + 1.0) / 2.0);
        r.w.push_back(1.0 / ((1.0 - t * t) * dp * dp));
    }
    return r;
}

// panelled Gauss quadrature of the triangle transform
cplx ft_tri_quadrature(double vx, double vy, double lx, double ly, double xr, double yr) {
    static GaussRule rule = gauss_rule(16);
    // the inner w-integral oscillates in u at frequency |yr*ly| as well
    int pa = std::max(1, static_cast<int>(std::ceil(2.0 * (std::abs(xr * lx) + std::abs(yr * ly)))) + 1);
    int pb = std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(yr * ly))) + 1);
    cplx total(0, 0);
    for (int i = 0; i < pa; ++i) {
        double u0 = static_cast<double>(i) / pa, u1 = static_cast<double>(i + 1) / pa;
        for (std::size_t iu = 0; iu < rule.x.size(); ++iu) {
            double u = u0 + (u1 - u0) * rule.x[iu];
            double wmax = 1.0 - u;
            for (int j = 0; j < pb; ++j) {
                double v0 = wmax * j / pb, v1 = wmax * (j + 1) / pb;
                for (std::size_t iv = 0; iv < rule.x.size(); ++iv) {
                    double v = v0 + (v1 - v0) * rule.x[iv];
                    double ph = 2.0 * std::numbers::pi *
                                (xr * (vx + lx * u) + yr * (vy + ly * v));
                    total += rule.w[iu] * (u1 - u0) * rule.w[iv] * (v1 - v0) *
                             cplx(std::cos(ph), std::sin(ph));
                }
            }
        }
    }
    return total * std::abs(lx * ly);
}

cplx ft_rect_quadrature(double x0, double x1, double y0, double y1, double xr, double yr) {
    static GaussRule rule = gauss_rule(16);
    int pa = std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(xr * (x1 - x0)))) + 1);
    int pb = std::max(1, static_cast<int>(std::ceil(2.0 * std::abs(yr * (y1 - y0)))) + 1);
    cplx total(0, 0);
    for (int i = 0; i < pa; ++i) {
        for (std::size_t iu = 0; iu < rule.x.size(); ++iu) {
            double u = x0 + (x1 - x0) * (i + rule.x[iu]) / pa;
            for (int j = 0; j < pb; ++j) {
                for (std::size_t iv = 0; iv < rule.x.size(); ++iv) {
                    double v = y0 + (y1 - y0) * (j + rule.x[iv]) / pb;
                    double ph = 2.0 * std::numbers::pi * (xr * u + yr * v);
                    total += rule.w[iu] * rule.w[iv] * cplx(std::cos(ph), std::sin(ph));
                }
            }
        }
    }
    return total * ((x1 - x0) * (y1 - y0) / (pa * pb));
}

spectra::FrequencySet b11() {
    return spectra::shifted_family({RPoint{Rat(0), Rat(0)}, RPoint{Rat(1, 2), Rat(1, 2)}}, 2);
}

spectra::FrequencySet octagon_spectrum() {
    return spectra::set_difference(spectra::b1_spectrum(), b11());
}

}  // namespace

TEST_CASE("ft_cell basics") {
    auto sq = SignedCell::make_rect(Rat(0), Rat(1), Rat(0), Rat(1));
    CHECK(std::abs(ft_cell(sq, {Rat(0), Rat(0)}, 2) - cplx(1, 0)) < 1e-15);

    auto iv = SignedCell::make_interval(Rat(0), Rat(1));
    for (int n = 1; n <= 7; ++n)
        CHECK(std::abs(ft_cell(iv, RPoint(Rat(n)), 1)) == 0.0);  // exact zero at integers
    CHECK(std::abs(ft_cell(iv, RPoint(Rat(0)), 1) - cplx(1, 0)) < 1e-15);

    // octagon transform at 0 equals its measure
    CHECK(std::abs(ft_domain(octagon(), {Rat(0), Rat(0)}) - cplx(14, 0)) < 1e-12);
}

TEST_CASE("triangle transform matches quadrature on seeded random inputs") {
    std::mt19937_64 gen(2024);
    auto rnd = [&gen](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    };
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        // rational cell parameters with denominator 16
        long long vxn = static_cast<long long>(gen() % 64) - 32;
        long long vyn = static_cast<long long>(gen() % 64) - 32;
        long long lxn = 1 + static_cast<long long>(gen() % 32);
        long long lyn = 1 + static_cast<long long>(gen() % 32);
        int sx = (gen() & 1) ? 1 : -1, sy = (gen() & 1) ? 1 : -1;
        Rat vx(vxn, 16), vy(vyn, 16), lx(sx * lxn, 16), ly(sy * lyn, 16);

        // frequencies up to |xi| ~ 20, with degenerate lines mixed in
        long long xn = static_cast<long long>(gen() % 320) - 160;
        Rat xr(xn, 8), yr;
        switch (t % 5) {
            case 0: yr = Rat(static_cast<long long>(gen() % 320) - 160, 8); break;
            case 1: yr = Rat(0); break;                   // xi_y = 0
            case 2: yr = xr; break;                       // xi_x = xi_y
            case 3: yr = -xr; break;                      // xi_x = -xi_y
            default: xr = Rat(0); yr = Rat(xn, 8); break;  // xi_x = 0
        }
        (void)rnd;

        auto cell = SignedCell::make_tri({vx, vy}, lx, ly);
        cplx closed = ft_cell(cell, {xr, yr}, 2);
        cplx quad = ft_tri_quadrature(to_double(vx), to_double(vy), to_double(lx),
                                      to_double(ly), to_double(xr), to_double(yr));
        // exact zeros of the transform are compared on the cell-area scale
        double area = to_double(lx * ly < 0 ? -(lx * ly) : lx * ly) / 2.0;
        double scale = std::max(std::abs(quad), 1e-4 * area);
        worst = std::max(worst, std::abs(closed - quad) / scale);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("rectangle transform matches quadrature") {
    std::mt19937_64 gen(7);
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        Rat x0(static_cast<long long>(gen() % 32) - 16, 8);
        Rat y0(static_cast<long long>(gen() % 32) - 16, 8);
        Rat wx(1 + static_cast<long long>(gen() % 24), 8);
        Rat wy(1 + static_cast<long long>(gen() % 24), 8);
        Rat xr(static_cast<long long>(gen() % 160) - 80, 8);
        Rat yr(static_cast<long long>(gen() % 160) - 80, 8);
        if (t % 4 == 0) yr = Rat(0);
        auto cell = SignedCell::make_rect(x0, x0 + wx, y0, y0 + wy);
        cplx closed = ft_cell(cell, {xr, yr}, 2);
        cplx quad = ft_rect_quadrature(to_double(x0), to_double(x0 + wx), to_double(y0),
                                       to_double(y0 + wy), to_double(xr), to_double(yr));
        double area = to_double(wx * wy);
        double scale = std::max(std::abs(quad), 1e-4 * area);
        worst = std::max(worst, std::abs(closed - quad) / scale);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("gram sections: orthonormal and orthogonal cases") {
    // ([0,1), integers, radius 5) -> 11 x 11 identity to 1e-14
    auto z = spectra::shifted_family({RPoint(Rat(0))}, 1);
    auto sec = gram_section(unit_interval(), z.truncate(Rat(5)));
    REQUIRE(sec.size() == 11);
    for (int j = 0; j < 11; ++j)
        for (int k = 0; k < 11; ++k)
            CHECK(std::abs(sec.matrix(j, k) - (j == k ? cplx(1, 0) : cplx(0, 0))) < 1e-14);

    // rhombus spectrum on R11: 2 * identity
    auto r11 = gram_section(rhombus(Rat(1), Rat(1)),
                            spectra::rhombus_spectrum(Rat(1), Rat(1)).truncate(Rat(3)));
    for (int j = 0; j < r11.size(); ++j) {
        CHECK(std::abs(r11.matrix(j, j) - cplx(2, 0)) < 1e-12);
        for (int k = j + 1; k < r11.size(); ++k) CHECK(std::abs(r11.matrix(j, k)) < 1e-10);
    }

    // staircase domain: diagonal entries all equal 1/2
    auto d3 = gram_section(
        figure3_domain(),
        spectra::shifted_family({RPoint{Rat(0), Rat(0)}, RPoint{Rat(1, 3), Rat(1, 7)},
                                 RPoint{Rat(2, 5), Rat(3, 4)}},
                                2)
            .truncate(Rat(1)));
    for (int j = 0; j < d3.size(); ++j)
        CHECK(std::abs(d3.matrix(j, j) - cplx(0.5, 0)) < 1e-15);
}

TEST_CASE("hermitian symmetry and diagonal-measure invariants") {
    auto f = octagon_spectrum();
    auto sec = gram_section(octagon(), f.truncate(Rat(1)));
    CHECK((sec.matrix - sec.matrix.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    for (int j = 0; j < sec.size(); ++j) CHECK(sec.matrix(j, j) == cplx(14.0, 0.0));
}

TEST_CASE("rhombus orthogonality certificates across shapes") {
    const std::pair<Rat, Rat> shapes[] = {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}, {Rat(3), Rat(1, 2)}};
    for (const auto& [a, b] : shapes) {
        auto sec = gram_section(rhombus(a, b), spectra::rhombus_spectrum(a, b).truncate(Rat(6)));
        double measure = to_double(Rat(2) * a * b);
        double off = 0.0;
        for (int j = 0; j < sec.size(); ++j) {
            CHECK(std::abs(sec.matrix(j, j) - cplx(measure, 0)) < 1e-12);
            for (int k = j + 1; k < sec.size(); ++k)
                off = std::max(off, std::abs(sec.matrix(j, k)));
        }
        CHECK(off <= 1e-10);
    }
}

TEST_CASE("section bounds: trivial and octagon") {
    auto z = spectra::shifted_family({RPoint(Rat(0))}, 1);
    auto triv = section_bounds(unit_interval(), z, Rat(4));
    CHECK(triv.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(triv.upper == doctest::Approx(1.0).epsilon(1e-12));

    // octagon sections: lower end >= 2, nested with radius; the upper end
    // sits at 16 = |S| (the ambient Bessel bound), not at the claimed 14
    auto spec = octagon_spectrum();
    double prev_lo = 1e300, prev_hi = -1e300;
    const std::size_t sizes[3] = {68, 248, 540};
    for (int r = 1; r <= 3; ++r) {
        auto est = section_bounds(octagon(), spec, Rat(r));
        CHECK(static_cast<std::size_t>(est.section_size) == sizes[r - 1]);
        CHECK(est.lower >= 2.0 - 1e-6);
        CHECK(est.upper <= 16.0 + 1e-6);
        CHECK(est.lower <= prev_lo + 1e-12);
        CHECK(est.upper >= prev_hi - 1e-12);
        prev_lo = est.lower;
        prev_hi = est.upper;
    }
    // frozen endpoints at radius 1
    auto r1 = section_bounds(octagon(), spec, Rat(1));
    CHECK(r1.lower == doctest::Approx(2.020354297).epsilon(1e-6));
    CHECK(r1.upper == doctest::Approx(16.0).epsilon(1e-9));
}

TEST_CASE("staircase sections stay inside the certified band") {
    auto d2 = dyadic_approximant(2).to_domain();
    const double lo = (2.0 - std::sqrt(2.0)) / 4.0, hi = (2.0 + std::sqrt(2.0)) / 4.0;

    auto f = spectra::main_spectrum(2);
    double plo = 1e300, phi = -1e300;
    for (int r = 1; r <= 3; ++r) {
        auto est = section_bounds(d2, f, Rat(r));
        CHECK(est.lower >= lo - 1e-6);
        CHECK(est.upper <= hi + 1e-6);
        CHECK(est.lower <= plo + 1e-12);
        CHECK(est.upper >= phi - 1e-12);
        plo = est.lower;
        phi = est.upper;
    }
    auto r1 = section_bounds(d2, f, Rat(1));
    CHECK(r1.lower == doctest::Approx(0.299639762).epsilon(1e-6));
    CHECK(r1.upper == doctest::Approx(0.700360238).epsilon(1e-6));

    // the displayed diagonal choice degenerates: lambda_min collapses
    auto bad = section_bounds(d2, spectra::main_spectrum(2, spectra::LiftVariant::stated_diagonal),
                              Rat(2));
    CHECK(bad.lower < 0.01);
    CHECK(bad.upper > hi + 0.1);
}

TEST_CASE("monotone nesting of section intervals") {
    auto f = octagon_spectrum();
    auto small = section_bounds(octagon(), f, Rat(1));
    auto large = section_bounds(octagon(), f, Rat(2));
    // the larger section's interval contains the smaller one's (interlacing)
    CHECK(large.lower <= small.lower + 1e-12);
    CHECK(large.upper >= small.upper - 1e-12);
}

TEST_CASE("section cap") {
    SectionOptions opts;
    opts.cap = 10;
    CHECK_THROWS_AS(section_bounds(octagon(), octagon_spectrum(), Rat(1), opts),
                    SectionCapExceeded);
}

TEST_CASE("random quotient test") {
    auto z = spectra::shifted_family({RPoint(Rat(0))}, 1);
    auto qr = random_quotient_test(unit_interval(), z, Rat(4), 50, 42);
    CHECK(qr.min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qr.max == doctest::Approx(1.0).epsilon(1e-12));

    auto spec = octagon_spectrum();
    auto est = section_bounds(octagon(), spec, Rat(1));
    auto q = random_quotient_test(octagon(), spec, Rat(1), 64, 7);
    CHECK(q.min >= est.lower - 1e-9);
    CHECK(q.max <= est.upper + 1e-9);

    // single trial probes the first canonical vector: the diagonal entry
    auto q1 = random_quotient_test(octagon(), spec, Rat(1), 1, 7);
    CHECK(q1.min == doctest::Approx(14.0).epsilon(1e-12));
    CHECK(q1.max == doctest::Approx(14.0).epsilon(1e-12));

    // determinism
    auto qa = random_quotient_test(octagon(), spec, Rat(1), 16, 5);
    auto qb = random_quotient_test(octagon(), spec, Rat(1), 16, 5);
    CHECK(qa.min == qb.min);
    CHECK(qa.max == qb.max);
}

TEST_CASE("parseval cross-check on the unit square") {
    auto z2 = spectra::shifted_family({RPoint{Rat(0), Rat(0)}}, 2);
    auto sec = gram_section(unit_square(), z2.truncate(Rat(6)));
    double sum = 0.0;
    for (int k = 0; k < sec.size(); ++k) sum += std::norm(sec.matrix(0, k));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));  // measure^2, off-diagonals vanish
}

TEST_CASE("convergence csv is deterministic without timings") {
    auto f = b11();
    auto d = rhombus(Rat(1), Rat(1));
    auto csv1 = convergence_csv(d, f, {Rat(1), Rat(2)});
    auto csv2 = convergence_csv(d, f, {Rat(1), Rat(2)});
    CHECK(csv1 == csv2);
    CHECK(csv1.substr(0, 46) == std::string("radius,section_size,lambda_min,lambda_max,runtime_ms").substr(0, 46));
}

TEST_CASE("parallel assembly matches serial") {
    auto f = octagon_spectrum();
    auto t = f.truncate(Rat(3, 2));
    auto s1 = gram_section(octagon(), t, 1);
    auto s2 = gram_section(octagon(), t, 2);
    CHECK((s1.matrix - s2.matrix).cwiseAbs().maxCoeff() == 0.0);
}
