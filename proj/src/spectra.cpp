#include "rieszforge/spectra.hpp"

#include <algorithm>
#include <unordered_set>

namespace rieszforge::spectra {

namespace {

// Solves offset + scale*n = value for integer n; nullopt if not integral.
std::optional<BigInt> grid_index(const Rat& offset, const Rat& scale, const Rat& value) {
    if (scale == 0) return value == offset ? std::optional<BigInt>(BigInt(0)) : std::nullopt;
    Rat n = (value - offset) / scale;
    if (!is_integer(n)) return std::nullopt;
    return rat_num(n);
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

bool excluded(const std::vector<ExcludePattern>& pats, const std::vector<BigInt>& idx) {
    for (const auto& p : pats) {
        bool all = true;
        for (std::size_t i = 0; i < idx.size() && all; ++i)
            all = mod_pos(idx[i] - p.residue[i], p.modulus[i]) == 0;
        if (all) return true;
    }
    return false;
}

}  // namespace

bool FrequencySet::contains(const RPoint& p) const {
    if (p.dim != dimension) return false;
    for (const auto& br : branches) {
        auto nx = grid_index(br.offset.x, br.scale.x, p.x);
        if (!nx) continue;
        std::vector<BigInt> idx{*nx};
        if (dimension == 2) {
            auto ny = grid_index(br.offset.y, br.scale.y, p.y);
            if (!ny) continue;
            idx.push_back(*ny);
        }
        if (!excluded(excludes, idx)) return true;
    }
    return false;
}

TruncatedSpectrum FrequencySet::truncate(const Rat& radius) const {
    if (radius <= 0) throw std::invalid_argument("truncation radius must be positive");
    std::vector<RPoint> pts;
    std::unordered_set<std::string> seen;
    auto key = [](const RPoint& p) { return rat_to_string(p.x) + ";" + rat_to_string(p.y); };

    for (const auto& br : branches) {
        // per-axis index ranges covering [-radius, radius]
        auto axis_range = [&](const Rat& off, const Rat& sc, BigInt& lo, BigInt& hi) {
            if (sc == 0) { lo = 0; hi = (off >= -radius && off <= radius) ? 0 : -1; return; }
            Rat a = (-radius - off) / sc, b = (radius - off) / sc;
            if (a > b) std::swap(a, b);
            lo = ceil_rat(a); hi = floor_rat(b);
        };
        BigInt nlo, nhi, mlo, mhi;
        axis_range(br.offset.x, br.scale.x, nlo, nhi);
        if (dimension == 2) axis_range(br.offset.y, br.scale.y, mlo, mhi);
        else { mlo = 0; mhi = 0; }

        for (BigInt n = nlo; n <= nhi; ++n) {
            for (BigInt m = mlo; m <= mhi; ++m) {
                std::vector<BigInt> idx{n};
                RPoint p = dimension == 2
                               ? RPoint{br.offset.x + br.scale.x * Rat(n),
                                        br.offset.y + br.scale.y * Rat(m)}
                               : RPoint(br.offset.x + br.scale.x * Rat(n));
                if (dimension == 2) idx.push_back(m);
                if (max_norm(p) > radius) continue;
                if (excluded(excludes, idx)) continue;
                if (seen.insert(key(p)).second) pts.push_back(p);
            }
        }
    }
    std::sort(pts.begin(), pts.end(), spectral_less);
    TruncatedSpectrum out;
    out.dimension = dimension;
    out.frequencies = std::move(pts);
    return out;
}

void FrequencySet::validate(const Rat& radius) const {
    // duplicates across branches would surface as colliding truncation points
    std::unordered_set<std::string> seen;
    auto key = [](const RPoint& p) { return rat_to_string(p.x) + ";" + rat_to_string(p.y); };
    for (std::size_t b = 0; b < branches.size(); ++b) {
        FrequencySet single;
        single.dimension = dimension;
        single.branches = {branches[b]};
        for (const auto& p : single.truncate(radius).frequencies)
            if (!seen.insert(key(p)).second)
                throw std::invalid_argument("branches intersect as point sets");
    }
}

FrequencySet shifted_family(const std::vector<RPoint>& offsets, int dimension) {
    if (offsets.empty()) throw std::invalid_argument("no offsets");
    // distinct mod Z^d
    std::unordered_set<std::string> seen;
    for (const auto& o : offsets) {
        if (o.dim != dimension) throw std::invalid_argument("offset dimension mismatch");
        std::string k = rat_to_string(frac(o.x)) + ";" +
                        (dimension == 2 ? rat_to_string(frac(o.y)) : std::string());
        if (!seen.insert(k).second)
            throw std::invalid_argument("offsets collide mod Z^d");
    }
    FrequencySet f;
    f.dimension = dimension;
    for (const auto& o : offsets) {
        Branch br;
        br.offset = o;
        br.scale = dimension == 2 ? RPoint{Rat(1), Rat(1)} : RPoint(Rat(1));
        f.branches.push_back(br);
    }
    return f;
}

Lattice dual_lattice(const Lattice& lambda) {
    lambda.validate();
    Lattice d;
    d.dimension = lambda.dimension;
    if (lambda.dimension == 1) {
        d.b[0][0] = 1 / lambda.b[0][0];
        return d;
    }
    Rat det = lambda.det();
    // inverse transpose of [[a,b],[c,d]] is [[d,-c],[-b,a]]/det
    d.b[0][0] = lambda.b[1][1] / det;
    d.b[0][1] = -lambda.b[1][0] / det;
    d.b[1][0] = -lambda.b[0][1] / det;
    d.b[1][1] = lambda.b[0][0] / det;
    return d;
}

std::vector<RPoint> lattice_points(const Lattice& lambda, const Rat& radius) {
    lambda.validate();
    std::vector<RPoint> pts;
    if (lambda.dimension == 1) {
        Rat step = lambda.b[0][0] < 0 ? Rat(-lambda.b[0][0]) : lambda.b[0][0];
        for (BigInt n = ceil_rat(-radius / step); n <= floor_rat(radius / step); ++n)
            pts.push_back(RPoint(step * Rat(n)));
    } else {
        // index bounds from the inverse image of the [-radius, radius] box
        Rat det = lambda.det();
        Rat inv[2][2] = {{lambda.b[1][1] / det, -lambda.b[0][1] / det},
                         {-lambda.b[1][0] / det, lambda.b[0][0] / det}};
        Rat nmax(0), mmax(0);
        for (int sx = -1; sx <= 1; sx += 2) {
            for (int sy = -1; sy <= 1; sy += 2) {
                Rat u = radius * sx, v = radius * sy;
                Rat n = inv[0][0] * u + inv[0][1] * v;
                Rat m = inv[1][0] * u + inv[1][1] * v;
                if (n < 0) n = -n;
                if (m < 0) m = -m;
                nmax = std::max(nmax, n);
                mmax = std::max(mmax, m);
            }
        }
        for (BigInt n = -floor_rat(nmax) - 1; n <= floor_rat(nmax) + 1; ++n) {
            for (BigInt m = -floor_rat(mmax) - 1; m <= floor_rat(mmax) + 1; ++m) {
                RPoint p = lambda.apply(n, m);
                if (max_norm(p) <= radius) pts.push_back(p);
            }
        }
    }
    std::sort(pts.begin(), pts.end(), spectral_less);
    return pts;
}

FrequencySet rhombus_spectrum(const Rat& a, const Rat& b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("rhombus parameters must be positive");
    FrequencySet f;
    f.dimension = 2;
    RPoint scale{1 / a, 1 / b};
    f.branches.push_back({RPoint{Rat(0), Rat(0)}, scale});
    f.branches.push_back({RPoint{1 / (2 * a), 1 / (2 * b)}, scale});
    return f;
}

FrequencySet b1_spectrum() {
    FrequencySet f;
    f.dimension = 2;
    f.branches.push_back({RPoint{Rat(0), Rat(0)}, RPoint{Rat(1, 4), Rat(1, 4)}});
    return f;
}

FrequencySet set_difference(const FrequencySet& f1, const FrequencySet& f2,
                            const Rat& verify_radius) {
    if (f1.dimension != f2.dimension) throw std::invalid_argument("dimension mismatch");
    FrequencySet out = f1;

    // map every branch of f2 into a congruence pattern on some branch of f1
    for (const auto& b2 : f2.branches) {
        bool mapped = false;
        for (const auto& b1 : f1.branches) {
            // need scale2 = k * scale1 with integer k, offset difference integral
            auto kx = grid_index(Rat(0), b1.scale.x, b2.scale.x);
            auto cx = grid_index(b1.offset.x, b1.scale.x, b2.offset.x);
            if (!kx || !cx || *kx == 0) continue;
            ExcludePattern pat;
            pat.residue.push_back(*cx);
            pat.modulus.push_back(*kx < 0 ? BigInt(-*kx) : *kx);
            if (f1.dimension == 2) {
                auto ky = grid_index(Rat(0), b1.scale.y, b2.scale.y);
                auto cy = grid_index(b1.offset.y, b1.scale.y, b2.offset.y);
                if (!ky || !cy || *ky == 0) continue;
                pat.residue.push_back(*cy);
                pat.modulus.push_back(*ky < 0 ? BigInt(-*ky) : *ky);
            }
            out.excludes.push_back(std::move(pat));
            mapped = true;
            break;
        }
        if (!mapped)
            throw std::invalid_argument("subtrahend does not embed in the base branches");
    }

    // verification on a truncation: F2 subset F1, and out = F1 \ F2 pointwise
    for (const auto& p : f2.truncate(verify_radius).frequencies)
        if (!f1.contains(p))
            throw std::invalid_argument("subtrahend is not a subset of the base set");
    for (const auto& p : f1.truncate(verify_radius).frequencies) {
        bool want = !f2.contains(p);
        if (out.contains(p) != want)
            throw std::logic_error("residue filter mismatch at " + rat_to_string(p.x) + "," +
                                   rat_to_string(p.y));
    }
    return out;
}

FrequencySet main_spectrum(int N, LiftVariant variant) {
    if (N < 2) throw std::invalid_argument("main_spectrum needs N >= 2");
    const long long g = 1ll << N;               // grid 2^N
    const long long half = 1ll << (2 * N - 2);  // M/2
    FrequencySet f;
    f.dimension = 2;
    f.branches.reserve(static_cast<std::size_t>(2 * half));
    for (long long j = 0; j < half; ++j) {
        for (int s = 0; s <= 1; ++s) {
            Rat ox(4 * j + s, g);
            Rat oy = variant == LiftVariant::stated_diagonal ? ox : Rat((4 * j + s) % g);
            Branch br;
            br.offset = {ox, oy};
            br.scale = {Rat(g), Rat(g)};
            f.branches.push_back(br);
        }
    }
    return f;
}

NestingReport nesting_check(int N, const Rat& radius, LiftVariant variant) {
    auto coarse = main_spectrum(N, variant);
    auto fine = main_spectrum(N + 1, variant);
    NestingReport rep;
    for (const auto& p : coarse.truncate(radius).frequencies) {
        ++rep.total;
        if (fine.contains(p)) ++rep.contained;
    }
    rep.nested = rep.total > 0 && rep.contained == rep.total;
    return rep;
}

}  // namespace rieszforge::spectra
