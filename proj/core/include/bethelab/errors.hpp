#ifndef BETHELAB_ERRORS_HPP
#define BETHELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bethe {

// Evaluation requested exactly at a band edge +-2*sqrt(2), where the
// square-root branch of the free m-function degenerates.
class BranchPointError : public std::domain_error {
public:
    explicit BranchPointError(const std::string& what) : std::domain_error(what) {}
};

// Real off-band evaluation landed on a pole of the m-function.
class PoleHitError : public std::runtime_error {
public:
    PoleHitError(const std::string& what, double where)
        : std::runtime_error(what), lambda(where) {}
    double lambda;
};

// Adaptive quadrature failed to reach the requested tolerance; carries the
// best estimate obtained so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double est, double err)
        : std::runtime_error(what), estimate(est), achieved_error(err) {}
    double estimate;
    double achieved_error;
};

// Request would exceed the configured memory budget (exponential tree sizes,
// oversized strip assemblies).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A root bracket could not be resolved even after grid refinement.
class BracketError : public std::runtime_error {
public:
    explicit BracketError(const std::string& what) : std::runtime_error(what) {}
};

// Richardson fit of the large-|lambda| expansion did not converge.
class ExtrapolationError : public std::runtime_error {
public:
    explicit ExtrapolationError(const std::string& what) : std::runtime_error(what) {}
};

// Spectra of the diagonal blocks are not separated as required
// (e.g. H2 - lambda singular while summing over the spectrum of H1).
class SeparationError : public std::runtime_error {
public:
    explicit SeparationError(const std::string& what) : std::runtime_error(what) {}
};

// Contour side passes through (or too close to) an eigenvalue away from the
// regularized crossing point.
class ContourError : public std::runtime_error {
public:
    explicit ContourError(const std::string& what) : std::runtime_error(what) {}
};

class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bethe

#endif
