#pragma once

#include <set>
#include <vector>

#include "sokkt/calculus.hpp"
#include "sokkt/cone_geometry.hpp"
#include "sokkt/config.hpp"
#include "sokkt/model.hpp"

namespace sokkt {

struct LexPair {
    double first = 0.0;
    double second = 0.0;
};

// a <=_lex b (strict=false) or a <_lex b (strict=true), with tolerance-aware
// equality on the first coordinate. Ties within +-tol count as equality,
// which is conservative toward flagging.
bool lex_cmp(const LexPair& a, const LexPair& b, bool strict, double tol);

struct ActiveSets {
    std::set<int> active;      // I(x): g_i(x) = 0
    std::set<int> active_dir;  // I(x; u): active with <grad g_i(x), u> = 0
    std::set<int> obj_dir;     // L(x; u): <grad f_l(x), u> = 0
};

ActiveSets active_sets(const ProblemSpec& p, const Vector& x, const Vector& u,
                       const Config& cfg = {});

// The critical set C(x) is a finite union of polyhedral branches, one per
// objective forced to equality; u is critical iff it lies in some branch.
struct CriticalCone {
    std::vector<PolyhedralCone> branches;

    bool contains(const Vector& u, double tol) const;
};

CriticalCone critical_cone(const ProblemSpec& p, const Vector& x, const Config& cfg = {});

enum class L2Variant { Upper, Lower };  // L^2 uses max-supports, L^{2-} min-supports

// v in L^2(X; x, u) resp. L^{2-}(X; x, u): G_i(u, v) <=_lex (0, 0) for every
// active constraint, with the second coordinate built from the chosen
// support value.
bool membership_L2(const ProblemSpec& p, const Vector& x, const Vector& u, const Vector& v,
                   L2Variant variant, const Config& cfg = {});

// Deterministic direction sample over the nonzero part of a critical cone:
// per branch all extreme rays, +-lineality basis vectors, pairwise ray/basis
// midpoints, plus seeded pseudo-random unit vectors projected into the
// branch. Every output is a verified unit member of some branch.
std::vector<Vector> sample_critical_directions(const CriticalCone& c, int count,
                                               std::uint64_t seed, const Config& cfg = {});

// Euclidean projection onto cone(generators) by Lawson-Hanson nonnegative
// least squares; lineality directions enter as +-generator pairs.
Vector project_onto_cone(const Vector& g, const std::vector<Vector>& rays,
                         const std::vector<Vector>& lineality);

}  // namespace sokkt
