#pragma once

#include <optional>
#include <vector>

#include "sokkt/config.hpp"
#include "sokkt/model.hpp"

namespace sokkt {

// Conic generator description: cone(rays) + span(lineality).
struct RayDecomposition {
    std::vector<Vector> rays;       // unit length, pairwise non-parallel
    std::vector<Vector> lineality;  // basis, unit length
};

// Finitely many homogeneous constraints <c, w> <= 0 / <c, w> = 0. Extreme
// rays and the lineality space are computed on demand by an incremental
// double description run in exact rational arithmetic (every finite double
// is a rational, so no pivot tolerance enters).
class PolyhedralCone {
public:
    PolyhedralCone(int dim, std::vector<Vector> ineqs, std::vector<Vector> eqs);

    int dim() const { return dim_; }
    const std::vector<Vector>& ineqs() const { return ineqs_; }
    const std::vector<Vector>& eqs() const { return eqs_; }

    bool contains(const Vector& w, double tol) const;

    // Computes (and caches) the generator description. Dimension capped at
    // Config::kRayDimCap.
    const RayDecomposition& rays() const;
    bool has_rays() const { return rays_.has_value(); }

    PolyhedralCone with_extra_ineq(const Vector& c) const;

private:
    int dim_;
    std::vector<Vector> ineqs_;
    std::vector<Vector> eqs_;
    mutable std::optional<RayDecomposition> rays_;
};

enum class Positivity { Positive, NotPositive, Inconclusive };

const char* to_string(Positivity p);

struct PositivityResult {
    Positivity status = Positivity::Inconclusive;
    std::optional<Vector> witness;  // member of the cone with <c, w> <= 0 (strict mode)
    double min_ray_value = 0.0;     // min over extreme rays of <c, r>
};

// Decides <c, w> > 0 for all w in C \ {0} (strict) or <c, w> >= 0 for all
// w in C (non-strict) from the cached ray decomposition. Any nonzero
// lineality makes the strict variant impossible.
PositivityResult cone_positivity(const Vector& c, const PolyhedralCone& cone, bool strict,
                                 const Config& cfg = {});

}  // namespace sokkt
