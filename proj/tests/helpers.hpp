#pragma once

#include "hkorbit/hkorbit.hpp"

#include <random>

namespace hkorbit::testing {

using M = CMatrix<double>;
using Ctx = algebra::Context<double>;

inline double dist(const M& a, const M& b) { return (a - b).norm(); }

/// Random point of the compact orbit, u D u^* - D.
inline M compact_point(const Ctx& ctx, std::mt19937_64& rng) {
  const M u = algebra::random_unitary<double>(ctx.n, rng);
  return u * ctx.D * u.adjoint() - ctx.D;
}

/// Random element of m_x with the given norm.
inline M random_mx(const Ctx& ctx, const M& x, std::uint64_t seed, double norm) {
  const M frame = orbit::compact_frame(ctx, x);
  const M a0 = algebra::random_element(ctx, SpaceTag::m0, seed, norm).mat;
  return frame * a0 * frame.adjoint();
}

/// Fibered point over a random base with fiber coordinate of the given norm.
inline mostow::FiberedPoint<double> random_fibered(const Ctx& ctx, std::mt19937_64& rng,
                                                   double a_norm) {
  const M x = compact_point(ctx, rng);
  return mostow::fibered_point(ctx, x, random_mx(ctx, x, rng(), a_norm));
}

}  // namespace hkorbit::testing
