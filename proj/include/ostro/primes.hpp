#pragma once

#include "ostro/bigint.hpp"

namespace ostro {

struct PrimalityConfig {
    // Rounds of probabilistic Miller-Rabin used above the deterministic
    // threshold 3.317e24; below it the fixed base set {2..37} is a proof.
    unsigned mr_rounds = 40;
    std::uint64_t witness_seed = 0x5eed5eed5eed5eedULL;
};

/// true iff n is prime. Deterministic below 3.317e24, probabilistic
/// (error < 4^-rounds) above.
bool is_prime(const BigInt& n, const PrimalityConfig& cfg = {});

/// Smallest prime >= n.
BigInt next_prime_at_least(const BigInt& n, const PrimalityConfig& cfg = {});

}  // namespace ostro
