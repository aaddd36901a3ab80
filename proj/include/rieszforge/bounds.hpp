#ifndef RIESZFORGE_BOUNDS_HPP
#define RIESZFORGE_BOUNDS_HPP

#include <string>

namespace rieszforge {

enum class Provenance { exact_gamma, cluster_formula, finite_section };

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::exact_gamma: return "exact-gamma";
        case Provenance::cluster_formula: return "cluster-formula";
        case Provenance::finite_section: return "finite-section";
    }
    return "?";
}

/// Frame / Riesz bound pair with provenance. For finite sections the pair is
/// an inner approximation of the optimal [A, B]; it never claims optimality.
struct BoundsEstimate {
    double lower = 0.0;
    double upper = 0.0;
    Provenance provenance = Provenance::finite_section;
    double radius = 0.0;     // truncation radius, finite-section only
    int section_size = 0;    // matrix size backing the estimate
};

}  // namespace rieszforge

#endif
