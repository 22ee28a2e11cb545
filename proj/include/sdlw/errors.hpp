#pragma once

#include <stdexcept>
#include <string>

namespace sdlw {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// geom-core
struct NonRepresentableMatrix : Error { using Error::Error; };
struct NotScalarMatrix : Error { using Error::Error; };
struct SingularEdgeVector : Error { using Error::Error; };
struct NoCommonCircle : Error { using Error::Error; };

// holo-net / solvers
struct CollisionError : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };

// surfaces
struct DenominatorBlowup : Error { using Error::Error; };
struct DegenerateFrame : Error { using Error::Error; };
struct GenericityViolation : Error { using Error::Error; };

// curvature
struct NotParallel : Error { using Error::Error; };
struct DegenerateMixedArea : Error { using Error::Error; };
struct NotProportional : Error { using Error::Error; };
struct UmbilicDegeneracy : Error { using Error::Error; };

// singularity
struct DegeneratePlane : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct HypothesisViolation : Error { using Error::Error; };

// io / config
struct ValidationError : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };

} // namespace sdlw
