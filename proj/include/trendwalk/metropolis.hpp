#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace trendwalk {

// Classical Metropolis-Hastings acceptance probability,
// min{ f(y) q(x|y) / (f(x) q(y|x)), 1 }. All factors must be positive.
inline double mh_acceptance(double f_y, double f_x, double q_xy, double q_yx) {
    if (!(f_y > 0.0) || !(f_x > 0.0) || !(q_xy > 0.0) || !(q_yx > 0.0))
        throw std::invalid_argument("mh_acceptance requires strictly positive inputs");
    return std::min((f_y * q_xy) / (f_x * q_yx), 1.0);
}

// One transition of the classical MH kernel: propose y from q, draw
// U ~ U[0,1), move to y iff U <= rho(x, y).
//
// The proposal must offer
//   State sample(const State& x, Rng&)   and
//   double density(const State& at, const State& to)   // q(to | at)
// and the uniform source next_double() in [0,1).
template <typename State, typename Density, typename Proposal, typename Rng>
State mh_step(const State& x, Density&& f, Proposal&& q, Rng& u) {
    State y = q.sample(x, u);
    const double rho = mh_acceptance(f(y), f(x), q.density(y, x), q.density(x, y));
    if (u.next_double() <= rho) return y;
    return x;
}

}  // namespace trendwalk
