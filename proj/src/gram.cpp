#include "rieszforge/gram.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rieszforge/util.hpp"

namespace rieszforge::gram {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

cplx unit_phase(const Rat& turns) {
    double t = to_double(frac(turns));
    return {std::cos(kTwoPi * t), std::sin(kTwoPi * t)};
}

// sin(pi * t) with the argument reduced mod 2 exactly; exact zero at integers.
double sin_pi(const Rat& t) {
    if (is_integer(t)) return 0.0;
    Rat r = frac(t / 2) * 2;  // in [0, 2)
    if (r >= 1) r -= 2;       // in [-1, 1)
    return std::sin(std::numbers::pi * to_double(r));
}

// one rectangle axis: int_{a0}^{a1} e^{2 pi i t x} dx
cplx axis_factor(const Rat& a0, const Rat& a1, const Rat& t) {
    Rat len = a1 - a0;
    if (t == 0) return {to_double(len), 0.0};
    Rat u = t * len;
    if (is_integer(u)) return {0.0, 0.0};
    cplx phase = unit_phase(t * (a0 + a1) / 2);
    double s = sin_pi(u) / (std::numbers::pi * to_double(u));
    return to_double(len) * phase * s;
}

// E1(c) = (e^c - 1)/c, entire
cplx e1(const cplx& c) {
    if (std::abs(c) < 0.5) {
        cplx sum(0, 0), pw(1, 0);
        double fact = 1.0;
        for (int n = 0; n < 26; ++n) {
            fact *= (n + 1);
            sum += pw / fact;
            pw *= c;
        }
        return sum;
    }
    return (std::exp(c) - cplx(1, 0)) / c;
}

// k-th derivative of E1 at c, |c| not small:
// d^k/dc^k (e^c / c) - d^k/dc^k (1/c)
cplx e1_deriv(int k, const cplx& c) {
    cplx s(0, 0);
    double binom = 1.0, fact_j = 1.0;
    cplx cpow = c;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) {
            binom = binom * (k - j + 1) / j;
            fact_j *= j;
            cpow *= c;
        }
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        s += sign * binom * fact_j / cpow;
    }
    s *= std::exp(c);
    double fact_k = 1.0;
    for (int j = 2; j <= k; ++j) fact_k *= j;
    double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    cplx ck1 = std::pow(c, k + 1);
    return s - sign_k * fact_k / ck1;
}

// T2(a, b) over the unit simplex; a, b exact so degenerate lines are exact.
cplx simplex_ft(const Rat& a, const Rat& b) {
    if (a == 0 && b == 0) return {0.5, 0.0};
    const cplx A(0.0, kTwoPi * to_double(a));
    const cplx B(0.0, kTwoPi * to_double(b));
    const double mA = std::abs(A), mB = std::abs(B);

    if (mA <= 0.5 && mB <= 0.5) {
        // T2 = sum_k (sum_{p+q=k} A^p B^q) / (k+2)!
        cplx sum(0, 0);
        std::vector<cplx> ap(30), bp(30);
        ap[0] = bp[0] = cplx(1, 0);
        for (int i = 1; i < 30; ++i) { ap[i] = ap[i - 1] * A; bp[i] = bp[i - 1] * B; }
        double fact = 2.0;  // (k+2)! starting at k=0
        for (int k = 0; k < 28; ++k) {
            if (k > 0) fact *= (k + 2);
            cplx h(0, 0);
            for (int p = 0; p <= k; ++p) h += ap[p] * bp[k - p];
            sum += h / fact;
        }
        return sum;
    }

    const cplx h = B - A;
    if (std::abs(h) <= 1e-6 * std::max(1.0, mA)) {
        // Taylor in h around A: sum_k E1^{(k+1)}(A) h^k / (k+1)!
        cplx sum(0, 0), hp(1, 0);
        double fact = 1.0;
        for (int k = 0; k <= 6; ++k) {
            if (k > 0) { fact *= (k + 1); hp *= h; }
            sum += e1_deriv(k + 1, A) * hp / fact;
        }
        return sum;
    }
    return (e1(A) - e1(B)) / (A - B);
}

}  // namespace

std::complex<double> ft_cell(const SignedCell& cell, const RPoint& xi, int dimension) {
    if (cell.kind == SignedCell::Kind::rect) {
        cplx f = axis_factor(cell.rect.x.left, cell.rect.x.right, xi.x);
        if (dimension == 2) f *= axis_factor(cell.rect.y.left, cell.rect.y.right, xi.y);
        return f;
    }
    if (dimension != 2) throw std::invalid_argument("triangle cells are 2D");
    Rat a = xi.x * cell.tri.leg_x;
    Rat b = xi.y * cell.tri.leg_y;
    Rat jac = cell.tri.leg_x * cell.tri.leg_y;
    if (jac < 0) jac = -jac;
    cplx phase = unit_phase(xi.x * cell.tri.vertex.x + xi.y * cell.tri.vertex.y);
    return to_double(jac) * phase * simplex_ft(a, b);
}

std::complex<double> ft_domain(const SignedDomain& d, const RPoint& xi) {
    cplx s(0, 0);
    for (const auto& c : d.cells) s += static_cast<double>(c.weight) * ft_cell(c, xi, d.dimension);
    return s;
}

GramSection gram_section(const SignedDomain& d, const TruncatedSpectrum& spectrum, int jobs) {
    if (spectrum.frequencies.empty()) throw std::invalid_argument("empty spectrum");
    if (spectrum.dimension != d.dimension) throw std::invalid_argument("dimension mismatch");
    const auto n = static_cast<Eigen::Index>(spectrum.frequencies.size());

    GramSection sec;
    sec.domain = d;
    sec.spectrum = spectrum;
    sec.matrix.resize(n, n);

    const double diag = to_double(d.measure());
    const auto& freq = spectrum.frequencies;
    parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t j) {
        auto jj = static_cast<Eigen::Index>(j);
        sec.matrix(jj, jj) = diag;
        for (Eigen::Index k = jj + 1; k < n; ++k) {
            RPoint diff = d.dimension == 2
                              ? RPoint{freq[static_cast<std::size_t>(k)].x - freq[j].x,
                                       freq[static_cast<std::size_t>(k)].y - freq[j].y}
                              : RPoint(freq[static_cast<std::size_t>(k)].x - freq[j].x);
            cplx v = ft_domain(d, diff);
            sec.matrix(jj, k) = v;
            sec.matrix(k, jj) = std::conj(v);
        }
    });
    return sec;
}

namespace {

std::pair<double, double> section_extremes(const GramSection& sec) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sec.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    return {es.eigenvalues()(0), es.eigenvalues()(es.eigenvalues().size() - 1)};
}

GramSection build_capped_section(const SignedDomain& d, const FrequencySet& f, const Rat& radius,
                                 const SectionOptions& opts) {
    auto trunc = f.truncate(radius);
    if (trunc.frequencies.empty()) throw std::invalid_argument("truncation is empty");
    if (static_cast<int>(trunc.frequencies.size()) > opts.cap)
        throw SectionCapExceeded("section size " + std::to_string(trunc.frequencies.size()) +
                                 " exceeds cap " + std::to_string(opts.cap));
    return gram_section(d, trunc, opts.jobs);
}

}  // namespace

BoundsEstimate section_bounds(const SignedDomain& d, const FrequencySet& f, const Rat& radius,
                              const SectionOptions& opts) {
    auto sec = build_capped_section(d, f, radius, opts);
    auto [lo, hi] = section_extremes(sec);
    BoundsEstimate est;
    est.lower = lo;
    est.upper = hi;
    est.provenance = Provenance::finite_section;
    est.radius = to_double(radius);
    est.section_size = sec.size();
    return est;
}

QuotientRange random_quotient_test(const SignedDomain& d, const FrequencySet& f,
                                   const Rat& radius, int trials, std::uint64_t seed,
                                   const SectionOptions& opts) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    auto sec = build_capped_section(d, f, radius, opts);
    const auto n = static_cast<Eigen::Index>(sec.size());

    std::mt19937_64 gen(seed);
    auto unit = [&gen]() {
        // uniform in [-1, 1], reproducible across standard library versions
        return 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
    };

    QuotientRange qr;
    qr.trials = trials;
    qr.min = std::numeric_limits<double>::infinity();
    qr.max = -qr.min;
    for (int t = 0; t < trials; ++t) {
        Eigen::VectorXcd a(n);
        if (t == 0) {
            a.setZero();
            a(0) = 1.0;  // first canonical vector probes the diagonal
        } else {
            for (Eigen::Index i = 0; i < n; ++i) a(i) = cplx(unit(), unit());
        }
        double denom = a.squaredNorm();
        Eigen::VectorXcd ga = sec.matrix * a;
        double q = a.dot(ga).real() / denom;
        qr.min = std::min(qr.min, q);
        qr.max = std::max(qr.max, q);
    }
    return qr;
}

std::string convergence_csv(const SignedDomain& d, const FrequencySet& f,
                            const std::vector<Rat>& radii, const SectionOptions& opts,
                            bool timings) {
    std::ostringstream os;
    os << "radius,section_size,lambda_min,lambda_max,runtime_ms\n";
    for (const auto& r : radii) {
        auto t0 = std::chrono::steady_clock::now();
        auto est = section_bounds(d, f, r, opts);
        auto t1 = std::chrono::steady_clock::now();
        long ms = timings
                      ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                      : 0;
        os << rat_to_string(r) << "," << est.section_size << "," << fmt17(est.lower) << ","
           << fmt17(est.upper) << "," << ms << "\n";
    }
    return os.str();
}

}  // namespace rieszforge::gram
