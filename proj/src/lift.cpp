#include "rieszforge/lift.hpp"

namespace rieszforge::lift {

void StackSpec::validate() const {
    if (rects.empty()) throw std::invalid_argument("stack has no rectangles");
    if (width < 1) throw std::invalid_argument("width bound must be a positive integer");
    for (std::size_t k = 0; k < rects.size(); ++k) {
        const auto& r = rects[k];
        if (!(r.alpha < r.beta)) throw std::invalid_argument("rectangle with alpha >= beta");
        if (r.alpha < 0 || r.beta > Rat(width))
            throw std::invalid_argument("rectangle exceeds [0, width]");
        if (r.v < 0) throw std::invalid_argument("negative row offset");
        if (k > 0 && r.v < rects[k - 1].v + 1)
            throw std::invalid_argument("row offsets must increase by at least 1");
    }
}

geometry::SignedDomain StackSpec::to_domain() const {
    validate();
    geometry::SignedDomain d;
    d.dimension = 2;
    for (const auto& r : rects)
        d.cells.push_back(geometry::SignedCell::make_rect(r.alpha, r.beta, Rat(r.v), Rat(r.v + 1)));
    return d;
}

MultiInterval unroll(const StackSpec& spec) {
    spec.validate();
    MultiInterval out;
    for (std::size_t k = 0; k < spec.rects.size(); ++k) {
        Rat shift(static_cast<long long>(k) * spec.width);
        out.parts.push_back({spec.rects[k].alpha + shift, spec.rects[k].beta + shift});
    }
    out.validate();
    return out;
}

bool compatibility_check(const StackSpec& spec, const Rat& lambda, const Rat& omega,
                         CompatVariant variant) {
    spec.validate();
    for (std::size_t k1 = 1; k1 <= spec.rects.size(); ++k1) {
        long long factor = variant == CompatVariant::stated ? static_cast<long long>(k1)
                                                            : static_cast<long long>(k1) - 1;
        Rat value = Rat(spec.width * factor) * lambda - omega * Rat(spec.rects[k1 - 1].v);
        if (!is_integer(value)) return false;
    }
    return true;
}

LiftedSpectrum lift_spectrum(const std::vector<Rat>& lambdas, const std::vector<Rat>& omegas) {
    if (lambdas.size() != omegas.size())
        throw std::invalid_argument("lambda/omega length mismatch");
    if (lambdas.empty()) throw std::invalid_argument("empty spectrum");
    LiftedSpectrum out;
    out.pairs.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        out.pairs.emplace_back(lambdas[i], omegas[i]);
    return out;
}

FrequencySet LiftedSpectrum::family() const {
    FrequencySet f;
    f.dimension = 2;
    for (const auto& [l, w] : pairs)
        f.branches.push_back({RPoint{l, w}, RPoint{Rat(0), Rat(1)}});
    return f;
}

FrequencySet lift_family(const FrequencySet& base_1d, const std::vector<Rat>& omegas) {
    if (base_1d.dimension != 1) throw std::invalid_argument("base family must be 1D");
    if (base_1d.branches.size() != omegas.size())
        throw std::invalid_argument("one omega per branch required");
    if (!base_1d.excludes.empty())
        throw std::invalid_argument("lift of filtered families is not supported");
    FrequencySet f;
    f.dimension = 2;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        f.branches.push_back({RPoint{base_1d.branches[j].offset.x, omegas[j]},
                              RPoint{base_1d.branches[j].scale.x, Rat(1)}});
    }
    return f;
}

StackSpec pipeline_stack(int N) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    StackSpec s;
    const long long g = 1ll << N;
    s.width = g;
    for (long long k = 0; k < g; ++k) s.rects.push_back({Rat(0), Rat(1), (k + 1) * g});
    return s;
}

StackSpec row_stack(int N) {
    if (N < 1) throw std::invalid_argument("N must be positive");
    StackSpec s;
    const long long g = 1ll << N;
    s.width = g;
    for (long long k = 0; k < g; ++k) s.rects.push_back({Rat(0), Rat(1), k});
    return s;
}

}  // namespace rieszforge::lift
