#pragma once

#include <stdexcept>

namespace vna {

// Absolute comparison thresholds threaded through every numerical routine.
// eps guards entrywise equality checks; rank_eps guards pivot acceptance in
// rank computations (scaled by the largest entry magnitude, floored at 1).
//
// Derived thresholds keep the toolkit on a single auditable policy:
//   atom_eps (10*eps,  default 1e-8): atom orthogonality and resolution of
//                                     the identity in subalgebras
//   leq_eps  (100*eps, default 1e-7): projection membership tests e <= p and
//                                     all family / chain distance checks
struct Tolerance {
    double eps = 1e-9;
    double rank_eps = 1e-9;

    Tolerance() = default;
    Tolerance(double eps_, double rank_eps_) : eps(eps_), rank_eps(rank_eps_) {
        if (!(eps > 0.0) || !(rank_eps > 0.0))
            throw std::invalid_argument("Tolerance: eps and rank_eps must be positive");
    }

    double atom_eps() const { return 10.0 * eps; }
    double leq_eps() const { return 100.0 * eps; }
};

}  // namespace vna
