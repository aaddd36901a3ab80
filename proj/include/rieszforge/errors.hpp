#ifndef RIESZFORGE_ERRORS_HPP
#define RIESZFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rieszforge {

/// Gamma matrix fails the basis criterion (lambda_min below tolerance).
struct SingularGamma : std::runtime_error {
    explicit SingularGamma(const std::string& what) : std::runtime_error(what) {}
};

/// Measured cluster angles violate the pi/2 - alpha precondition.
struct AngleConditionViolated : std::runtime_error {
    explicit AngleConditionViolated(const std::string& what) : std::runtime_error(what) {}
};

/// No single covering level reaches the agreement threshold.
struct NonUniformCovering : std::runtime_error {
    explicit NonUniformCovering(const std::string& what) : std::runtime_error(what) {}
};

/// Requested finite section exceeds the configured size cap.
struct SectionCapExceeded : std::runtime_error {
    explicit SectionCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rieszforge

#endif
