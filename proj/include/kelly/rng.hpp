#ifndef KELLY_RNG_HPP
#define KELLY_RNG_HPP

#include <cstdint>
#include <random>

namespace kelly {

/// Repo-wide pseudo-random generator: std::mt19937_64. Every stochastic
/// operation takes an explicit seed and owns its own generator, so runs are
/// reproducible within a build (draw sequences of the std:: distributions are
/// implementation-defined, so bit-exactness across standard libraries is not
/// promised).
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace kelly

#endif
