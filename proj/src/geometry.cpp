#include "rieszforge/geometry.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_set>

#include "rieszforge/util.hpp"

namespace rieszforge::geometry {

namespace {

// Boundary rule: include iff the inward normal (nx, ny) of the touched edge is
// lexicographically positive.
bool halfplane(const Rat& g, int nx, int ny) {
    if (g > 0) return true;
    if (g < 0) return false;
    return nx > 0 || (nx == 0 && ny > 0);
}

int sgn(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

}  // namespace

// ---------- MultiInterval ----------

Rat MultiInterval::total_length() const {
    Rat s = 0;
    for (const auto& iv : parts) s += iv.length();
    return s;
}

void MultiInterval::validate() const {
    for (const auto& iv : parts)
        if (!(iv.left < iv.right)) throw std::invalid_argument("empty interval");
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (!(parts[i - 1].right <= parts[i].left))
            throw std::invalid_argument("intervals overlap or are unsorted");
}

// ---------- SignedCell ----------

SignedCell SignedCell::make_rect(Rat x0, Rat x1, Rat y0, Rat y1, int w) {
    if (!(x0 < x1) || !(y0 < y1)) throw std::invalid_argument("empty rectangle");
    SignedCell c;
    c.kind = Kind::rect;
    c.rect = {{std::move(x0), std::move(x1)}, {std::move(y0), std::move(y1)}};
    c.weight = w;
    return c;
}

SignedCell SignedCell::make_interval(Rat x0, Rat x1, int w) {
    if (!(x0 < x1)) throw std::invalid_argument("empty interval");
    SignedCell c;
    c.kind = Kind::rect;
    c.rect = {{std::move(x0), std::move(x1)}, {Rat(0), Rat(1)}};
    c.weight = w;
    return c;
}

SignedCell SignedCell::make_tri(RPoint vertex, Rat leg_x, Rat leg_y, int w) {
    if (leg_x == 0 || leg_y == 0) throw std::invalid_argument("zero triangle leg");
    SignedCell c;
    c.kind = Kind::tri;
    c.tri = {std::move(vertex), std::move(leg_x), std::move(leg_y)};
    c.weight = w;
    return c;
}

Rat SignedCell::area(int dimension) const {
    if (kind == Kind::rect) {
        Rat a = rect.x.length();
        if (dimension == 2) a *= rect.y.length();
        return a;
    }
    Rat a = tri.leg_x * tri.leg_y;
    if (a < 0) a = -a;
    return a / 2;
}

bool SignedCell::contains(const RPoint& p, int dimension) const {
    if (kind == Kind::rect) {
        if (!rect.x.contains(p.x)) return false;
        if (dimension == 2 && !rect.y.contains(p.y)) return false;
        return true;
    }
    const int sx = sgn(tri.leg_x), sy = sgn(tri.leg_y);
    // leg edges
    if (!halfplane(Rat(sx) * (p.x - tri.vertex.x), sx, 0)) return false;
    if (!halfplane(Rat(sy) * (p.y - tri.vertex.y), 0, sy)) return false;
    // hypotenuse: g = 1 - s - t with s = (x-vx)/lx, t = (y-vy)/ly;
    // grad g = (-1/lx, -1/ly), so the inward normal signs are (-sx, -sy)
    Rat s = (p.x - tri.vertex.x) / tri.leg_x;
    Rat t = (p.y - tri.vertex.y) / tri.leg_y;
    return halfplane(1 - s - t, -sx, -sy);
}

void SignedCell::bbox(Rat& x0, Rat& x1, Rat& y0, Rat& y1) const {
    if (kind == Kind::rect) {
        x0 = rect.x.left; x1 = rect.x.right;
        y0 = rect.y.left; y1 = rect.y.right;
        return;
    }
    Rat ax = tri.vertex.x + tri.leg_x;
    Rat ay = tri.vertex.y + tri.leg_y;
    x0 = std::min(tri.vertex.x, ax); x1 = std::max(tri.vertex.x, ax);
    y0 = std::min(tri.vertex.y, ay); y1 = std::max(tri.vertex.y, ay);
}

Rat SignedCell::perimeter(int dimension) const {
    if (kind == Kind::rect) {
        if (dimension == 1) return Rat(2);
        return 2 * (rect.x.length() + rect.y.length());
    }
    Rat lx = tri.leg_x < 0 ? Rat(-tri.leg_x) : tri.leg_x;
    Rat ly = tri.leg_y < 0 ? Rat(-tri.leg_y) : tri.leg_y;
    // rational upper bound for the hypotenuse
    return lx + ly + (lx + ly);
}

// ---------- SignedDomain ----------

Rat SignedDomain::measure() const {
    Rat s = 0;
    for (const auto& c : cells) s += Rat(c.weight) * c.area(dimension);
    return s;
}

int SignedDomain::indicator(const RPoint& p) const {
    int v = 0;
    for (const auto& c : cells)
        if (c.contains(p, dimension)) v += c.weight;
    return v;
}

void SignedDomain::bbox(Rat& x0, Rat& x1, Rat& y0, Rat& y1) const {
    if (cells.empty()) throw std::invalid_argument("empty domain");
    cells[0].bbox(x0, x1, y0, y1);
    Rat a, b, c, d;
    for (std::size_t i = 1; i < cells.size(); ++i) {
        cells[i].bbox(a, b, c, d);
        x0 = std::min(x0, a); x1 = std::max(x1, b);
        y0 = std::min(y0, c); y1 = std::max(y1, d);
    }
}

Rat SignedDomain::perimeter() const {
    Rat s = 0;
    for (const auto& c : cells) s += c.perimeter(dimension);
    return s;
}

void SignedDomain::validate_structure() const {
    if (dimension != 1 && dimension != 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (cells.empty()) throw std::invalid_argument("domain has no cells");
    for (const auto& c : cells) {
        if (c.weight != 1 && c.weight != -1) throw std::invalid_argument("cell weight must be +-1");
        if (dimension == 1 && c.kind == SignedCell::Kind::tri)
            throw std::invalid_argument("triangles are 2D only");
    }
    if (measure() <= 0) throw std::invalid_argument("total measure must be positive");
}

// ---------- Lattice ----------

Rat Lattice::det() const {
    if (dimension == 1) return b[0][0];
    return b[0][0] * b[1][1] - b[0][1] * b[1][0];
}

void Lattice::validate() const {
    if (det() == 0) throw std::invalid_argument("lattice basis is singular");
}

RPoint Lattice::apply(const BigInt& n, const BigInt& m) const {
    if (dimension == 1) return RPoint(b[0][0] * Rat(n));
    return {b[0][0] * Rat(n) + b[0][1] * Rat(m), b[1][0] * Rat(n) + b[1][1] * Rat(m)};
}

// ---------- builders ----------

SignedDomain unit_square() {
    SignedDomain d;
    d.dimension = 2;
    d.cells.push_back(SignedCell::make_rect(Rat(0), Rat(1), Rat(0), Rat(1)));
    return d;
}

SignedDomain unit_interval() { return interval_domain(Rat(0), Rat(1)); }

SignedDomain interval_domain(const Rat& a, const Rat& b) {
    SignedDomain d;
    d.dimension = 1;
    d.cells.push_back(SignedCell::make_interval(a, b));
    return d;
}

SignedDomain octagon() {
    SignedDomain d;
    d.dimension = 2;
    d.cells.push_back(SignedCell::make_rect(Rat(0), Rat(4), Rat(0), Rat(4)));
    d.cells.push_back(SignedCell::make_tri({Rat(0), Rat(0)}, Rat(1), Rat(1), -1));
    d.cells.push_back(SignedCell::make_tri({Rat(4), Rat(0)}, Rat(-1), Rat(1), -1));
    d.cells.push_back(SignedCell::make_tri({Rat(0), Rat(4)}, Rat(1), Rat(-1), -1));
    d.cells.push_back(SignedCell::make_tri({Rat(4), Rat(4)}, Rat(-1), Rat(-1), -1));
    return d;
}

SignedDomain rhombus(const Rat& a, const Rat& b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("rhombus half-diagonals must be positive");
    SignedDomain d;
    d.dimension = 2;
    RPoint o{Rat(0), Rat(0)};
    d.cells.push_back(SignedCell::make_tri(o, a, b));
    d.cells.push_back(SignedCell::make_tri(o, -a, b));
    d.cells.push_back(SignedCell::make_tri(o, -a, -b));
    d.cells.push_back(SignedCell::make_tri(o, a, -b));
    return d;
}

SignedDomain figure3_domain() {
    const Rat H(1, 2), Q(1, 4);
    SignedDomain d;
    d.dimension = 2;
    // bottom strip of height 1/2 carries both the base rectangle and the
    // rectangle part of the two bands
    d.cells.push_back(SignedCell::make_rect(Rat(0), Rat(1), Rat(0), H));
    // left band (slope +1): add the triangle under y = x + 1/2, remove the one
    // under y = x + 1/4
    d.cells.push_back(SignedCell::make_tri({H, H}, -H, H, +1));
    d.cells.push_back(SignedCell::make_tri({H, Q}, -H, H, -1));
    // right band (slope -1)
    d.cells.push_back(SignedCell::make_tri({H, H}, H, H, +1));
    d.cells.push_back(SignedCell::make_tri({H, Q}, H, H, -1));
    return d;
}

// ---------- operations ----------

Rat measure(const SignedDomain& d) { return d.measure(); }

SignedDomain transform(const SignedDomain& d, const Rat& rho, const RPoint& v) {
    if (rho <= 0) throw std::invalid_argument("dilation factor must be positive");
    if (v.dim != d.dimension) throw std::invalid_argument("shift dimension mismatch");
    SignedDomain out;
    out.dimension = d.dimension;
    out.cells.reserve(d.cells.size());
    for (const auto& c : d.cells) {
        if (c.kind == SignedCell::Kind::rect) {
            Rat y0 = c.rect.y.left, y1 = c.rect.y.right;
            if (d.dimension == 2) { y0 = rho * y0 + v.y; y1 = rho * y1 + v.y; }
            out.cells.push_back(SignedCell::make_rect(rho * c.rect.x.left + v.x,
                                                      rho * c.rect.x.right + v.x, y0, y1,
                                                      c.weight));
        } else {
            out.cells.push_back(SignedCell::make_tri(
                {rho * c.tri.vertex.x + v.x, rho * c.tri.vertex.y + v.y},
                rho * c.tri.leg_x, rho * c.tri.leg_y, c.weight));
        }
    }
    return out;
}

namespace {

bool rects_overlap(const SignedCell& a, const SignedCell& b, int dim) {
    Rat ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
    a.bbox(ax0, ax1, ay0, ay1);
    b.bbox(bx0, bx1, by0, by1);
    bool x = ax0 < bx1 && bx0 < ax1;
    if (dim == 1) return x;
    return x && ay0 < by1 && by0 < ay1;
}

// Overlap detection: exact interval arithmetic for rect pairs, dense off-grid
// sampling of the bbox intersection when a triangle is involved.
bool domains_overlap(const SignedDomain& a, const SignedDomain& b) {
    for (const auto& ca : a.cells) {
        for (const auto& cb : b.cells) {
            if (!rects_overlap(ca, cb, a.dimension)) continue;
            if (ca.kind == SignedCell::Kind::rect && cb.kind == SignedCell::Kind::rect)
                return true;
            Rat ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
            ca.bbox(ax0, ax1, ay0, ay1);
            cb.bbox(bx0, bx1, by0, by1);
            Rat x0 = std::max(ax0, bx0), x1 = std::min(ax1, bx1);
            Rat y0 = std::max(ay0, by0), y1 = std::min(ay1, by1);
            const int G = 48;
            Rat hx = (x1 - x0) / G, hy = (y1 - y0) / G;
            for (int i = 0; i < G; ++i) {
                for (int j = 0; j < G; ++j) {
                    RPoint p{x0 + hx * Rat(4 * i + 1) / 4, y0 + hy * Rat(8 * j + 1) / 8};
                    if (ca.contains(p, 2) && cb.contains(p, 2)) return true;
                }
            }
        }
    }
    return false;
}

}  // namespace

SignedDomain cut_translate(const std::vector<SignedDomain>& parts,
                           const std::vector<RPoint>& shifts) {
    if (parts.empty() || parts.size() != shifts.size())
        throw std::invalid_argument("parts/shifts size mismatch");
    const int dim = parts[0].dimension;
    std::vector<SignedDomain> shifted;
    shifted.reserve(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].dimension != dim) throw std::invalid_argument("mixed dimensions");
        shifted.push_back(transform(parts[i], Rat(1), shifts[i]));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            if (domains_overlap(parts[i], parts[j]))
                throw std::invalid_argument("parts overlap before shifting");
            if (domains_overlap(shifted[i], shifted[j]))
                throw std::invalid_argument("parts overlap after shifting");
        }
    }
    SignedDomain out;
    out.dimension = dim;
    for (const auto& s : shifted)
        out.cells.insert(out.cells.end(), s.cells.begin(), s.cells.end());
    return out;
}

namespace {

// Off-lattice sample coordinates: x_i = (i + 1/4) h, y_j = (j + 1/8) h over an
// origin-anchored grid. The offsets keep samples away from dyadic cell
// boundaries in all shipped fixtures; membership stays exact regardless.
struct SampleGrid {
    Rat origin_x, origin_y, step;
    int nx = 0, ny = 0;
    Rat x(int i) const { return origin_x + step * Rat(4 * i + 1) / 4; }
    Rat y(int j) const { return origin_y + step * Rat(8 * j + 1) / 8; }
};

}  // namespace

SymmDiffEstimate symm_diff_measure(const SignedDomain& d1, const SignedDomain& d2, int grid) {
    if (grid < 4) throw std::invalid_argument("grid too coarse");
    Rat ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
    d1.bbox(ax0, ax1, ay0, ay1);
    d2.bbox(bx0, bx1, by0, by1);
    Rat x0 = std::min(ax0, bx0), x1 = std::max(ax1, bx1);
    Rat y0 = std::min(ay0, by0), y1 = std::max(ay1, by1);
    const int dim = d1.dimension;
    if (dim != d2.dimension) throw std::invalid_argument("dimension mismatch");

    SampleGrid g;
    g.origin_x = x0;
    g.origin_y = y0;
    Rat w = std::max(x1 - x0, dim == 2 ? y1 - y0 : Rat(0));
    g.step = w / grid;
    g.nx = grid;
    g.ny = dim == 2 ? grid : 1;

    long long cnt = 0;
    for (int i = 0; i < g.nx; ++i) {
        Rat sx = g.x(i);
        for (int j = 0; j < g.ny; ++j) {
            RPoint p = dim == 2 ? RPoint{sx, g.y(j)} : RPoint(sx);
            if ((d1.indicator(p) != 0) != (d2.indicator(p) != 0)) ++cnt;
        }
    }
    SymmDiffEstimate est;
    est.grid_step = to_double(g.step);
    double cell = est.grid_step;
    if (dim == 2) cell *= est.grid_step;
    est.value = static_cast<double>(cnt) * cell;
    est.error_bound = to_double(d1.perimeter() + d2.perimeter()) * est.grid_step;
    return est;
}

int tiling_level(const SignedDomain& d, const Lattice& lambda, const Rat& window, int grid,
                 const TilingOptions& opts) {
    lambda.validate();
    if (window <= 0 || grid < 2) throw std::invalid_argument("bad window or grid");
    if (d.dimension != 2 || lambda.dimension != 2)
        throw std::invalid_argument("tiling_level is 2D");
    Rat x0, x1, y0, y1;
    d.bbox(x0, x1, y0, y1);

    Rat h = window / grid;
    // precondition: every cell spans at least min_cell_span grid steps
    for (const auto& c : d.cells) {
        Rat cx0, cx1, cy0, cy1;
        c.bbox(cx0, cx1, cy0, cy1);
        if (cx1 - cx0 < Rat(opts.min_cell_span) * h || cy1 - cy0 < Rat(opts.min_cell_span) * h)
            throw std::invalid_argument("grid too coarse for the smallest cell");
    }

    // inverse basis for translate enumeration
    Rat det = lambda.det();
    Rat inv[2][2] = {{lambda.b[1][1] / det, -lambda.b[0][1] / det},
                     {-lambda.b[1][0] / det, lambda.b[0][0] / det}};

    std::map<int, long long> histogram;
    for (int i = 0; i < grid; ++i) {
        Rat sx = h * Rat(4 * i + 1) / 4;
        for (int j = 0; j < grid; ++j) {
            Rat sy = h * Rat(8 * j + 1) / 8;
            // translates l with x - l in bbox  <=>  l in [sx-x1, sx-x0] x [sy-y1, sy-y0]
            Rat u0 = sx - x1, u1 = sx - x0, v0 = sy - y1, v1 = sy - y0;
            Rat nmin, nmax, mmin, mmax;
            bool first = true;
            for (const Rat& u : {u0, u1}) {
                for (const Rat& v : {v0, v1}) {
                    Rat n = inv[0][0] * u + inv[0][1] * v;
                    Rat m = inv[1][0] * u + inv[1][1] * v;
                    if (first) { nmin = nmax = n; mmin = mmax = m; first = false; }
                    else {
                        nmin = std::min(nmin, n); nmax = std::max(nmax, n);
                        mmin = std::min(mmin, m); mmax = std::max(mmax, m);
                    }
                }
            }
            int k = 0;
            for (BigInt n = ceil_rat(nmin); n <= floor_rat(nmax); ++n) {
                for (BigInt m = ceil_rat(mmin); m <= floor_rat(mmax); ++m) {
                    RPoint l = lambda.apply(n, m);
                    k += d.indicator({sx - l.x, sy - l.y});
                }
            }
            ++histogram[k];
        }
    }
    long long total = static_cast<long long>(grid) * grid;
    auto best = std::max_element(histogram.begin(), histogram.end(),
                                 [](auto& a, auto& b) { return a.second < b.second; });
    double share = static_cast<double>(best->second) / static_cast<double>(total);
    if (share < opts.agreement_threshold)
        throw NonUniformCovering("covering count " + std::to_string(best->first) +
                                 " reaches only " + std::to_string(share) + " agreement");
    return best->first;
}

DyadicApproximant dyadic_approximant(int N) {
    if (N < 2) throw std::invalid_argument("dyadic approximant needs N >= 2");
    DyadicApproximant a;
    a.level = N;
    const long long q = 1ll << N;
    a.side = Rat(1, q);
    for (long long k = 0; k < q; ++k)
        for (long long l = 0; l < q / 4; ++l)
            a.bottom.push_back({Rat(k, q), Rat(l, q)});
    for (long long k = 0; k < q / 2; ++k) {
        for (long long l = 0; l < q / 4; ++l) {
            a.band.push_back({Rat(k, q), Rat(1, 4) + Rat(k + l + 1, q)});
            a.band.push_back({Rat(1, 2) + Rat(k, q), Rat(q - 2 - k - l, q)});
        }
    }
    // pairwise-disjointness: lower-left vertices on the 2^-N grid are distinct
    std::unordered_set<std::string> seen;
    auto key = [](const RPoint& p) { return rat_to_string(p.x) + ";" + rat_to_string(p.y); };
    for (const auto& p : a.bottom)
        if (!seen.insert(key(p)).second) throw std::logic_error("duplicate square");
    for (const auto& p : a.band)
        if (!seen.insert(key(p)).second) throw std::logic_error("duplicate square");
    return a;
}

SignedDomain DyadicApproximant::to_domain() const {
    SignedDomain d;
    d.dimension = 2;
    d.cells.reserve(square_count());
    for (const auto* part : {&bottom, &band})
        for (const auto& p : *part)
            d.cells.push_back(SignedCell::make_rect(p.x, p.x + side, p.y, p.y + side));
    return d;
}

std::vector<std::pair<long long, long long>> DyadicApproximant::dilated_cells() const {
    std::vector<std::pair<long long, long long>> out;
    out.reserve(square_count());
    Rat scale = 1 / side;
    for (const auto* part : {&bottom, &band}) {
        for (const auto& p : *part) {
            Rat a = p.x * scale, b = p.y * scale;
            out.emplace_back(static_cast<long long>(floor_rat(a)),
                             static_cast<long long>(floor_rat(b)));
        }
    }
    return out;
}

Rat band_nesting_fraction(const DyadicApproximant& parent, const DyadicApproximant& finer) {
    if (finer.level != parent.level + 1) throw std::invalid_argument("levels must be adjacent");
    std::unordered_set<std::string> fine;
    auto key = [](const Rat& x, const Rat& y) {
        return rat_to_string(x) + ";" + rat_to_string(y);
    };
    for (const auto& p : finer.band) fine.insert(key(p.x, p.y));
    long long covered = 0, total = 0;
    Rat h = finer.side;
    for (const auto& p : parent.band) {
        for (int dx = 0; dx < 2; ++dx) {
            for (int dy = 0; dy < 2; ++dy) {
                ++total;
                if (fine.count(key(p.x + h * dx, p.y + h * dy))) ++covered;
            }
        }
    }
    return Rat(covered, total);
}

bool indicator_sane(const SignedDomain& d, int samples, std::uint64_t seed) {
    Rat x0, x1, y0, y1;
    d.bbox(x0, x1, y0, y1);
    std::mt19937_64 gen(seed);
    for (int i = 0; i < samples; ++i) {
        Rat px = x0 + (x1 - x0) * random_unit_rat(gen);
        RPoint p = d.dimension == 2 ? RPoint{px, y0 + (y1 - y0) * random_unit_rat(gen)}
                                    : RPoint(px);
        int v = d.indicator(p);
        if (v != 0 && v != 1) return false;
    }
    return true;
}

}  // namespace rieszforge::geometry
