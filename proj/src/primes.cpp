#include "ostro/primes.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace ostro {

namespace {

// Montgomery arithmetic for an odd modulus: squaring chains never divide,
// which dominates Miller-Rabin cost at thousand-bit sizes.
struct Montgomery {
    BigInt m;
    std::size_t rbits;
    BigInt rmask;   // R - 1
    BigInt minv;    // -m^-1 mod R
    BigInt one_m;   // R mod m

    explicit Montgomery(const BigInt& modulus) : m(modulus) {
        rbits = bit_length(m);
        rbits = ((rbits + 63) / 64) * 64;
        rmask = pow2(rbits) - 1;
        // Hensel lifting: x <- x (2 - m x) doubles the valid bit count.
        BigInt x = 1;
        for (std::size_t bits = 1; bits < rbits; bits *= 2) {
            BigInt mod = pow2(std::min(2 * bits, rbits));
            BigInt t = (2 - m * x) % mod;
            if (t < 0) t += mod;
            x = (x * t) % mod;
        }
        minv = x == 0 ? BigInt(0) : pow2(rbits) - x;  // -m^-1 mod R
        one_m = pow2(rbits) % m;
    }

    BigInt redc(const BigInt& t) const {
        BigInt u = ((t & rmask) * minv) & rmask;
        BigInt r = (t + u * m) >> rbits;
        if (r >= m) r -= m;
        return r;
    }

    BigInt to_mont(const BigInt& a) const { return (a << rbits) % m; }
    BigInt from_mont(const BigInt& a) const { return redc(a); }
    BigInt mul(const BigInt& a, const BigInt& b) const { return redc(a * b); }

    BigInt pow(const BigInt& base, const BigInt& exp) const {
        BigInt result = one_m;
        BigInt b = to_mont(base % m);
        for (long i = static_cast<long>(bit_length(exp)) - 1; i >= 0; --i) {
            result = mul(result, result);
            if (boost::multiprecision::bit_test(exp, static_cast<unsigned>(i)))
                result = mul(result, b);
        }
        return from_mont(result);
    }
};

// One Miller-Rabin round; n odd, n > 3, witness a in [2, n-2].
bool mr_round(const Montgomery& mg, const BigInt& n, const BigInt& a, const BigInt& d,
              std::size_t r) {
    BigInt x = mg.pow(a, d);
    if (x == 1 || x == n - 1) return true;
    BigInt xm = mg.to_mont(x);
    for (std::size_t i = 1; i < r; ++i) {
        xm = mg.mul(xm, xm);
        BigInt v = mg.from_mont(xm);
        if (v == n - 1) return true;
        if (v == 1) return false;
    }
    return false;
}

// splitmix64, used to derive pseudo-random witnesses deterministically.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 5000000;
        std::vector<bool> sieve(limit, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i)
                sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

}  // namespace

bool is_prime(const BigInt& n, const PrimalityConfig& cfg) {
    if (n < 2) return false;
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    std::size_t r = boost::multiprecision::lsb(d);
    d >>= r;
    Montgomery mg(n);

    static const BigInt kDeterministicLimit("3317044064679887385961981");
    if (n < kDeterministicLimit) {
        // Proven witness set for n < 3.317e24.
        for (std::uint32_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
            if (!mr_round(mg, n, BigInt(a), d, r)) return false;
        return true;
    }
    // Probabilistic: fixed small bases first, then derived witnesses.
    for (std::uint32_t a : {2u, 3u, 5u, 7u, 11u, 13u})
        if (!mr_round(mg, n, BigInt(a), d, r)) return false;
    std::uint64_t state = cfg.witness_seed;
    unsigned done = 6;
    while (done < cfg.mr_rounds) {
        BigInt a = 0;
        std::size_t need = bit_length(n) + 64;
        for (std::size_t got = 0; got < need; got += 64) {
            a <<= 64;
            a += splitmix64(state);
        }
        a = a % (n - 3) + 2;  // in [2, n-2]
        if (!mr_round(mg, n, a, d, r)) return false;
        ++done;
    }
    return true;
}

BigInt next_prime_at_least(const BigInt& n, const PrimalityConfig& cfg) {
    if (n <= 2) return 2;
    BigInt c = n;
    if (c % 2 == 0) ++c;
    const auto& primes = small_primes();
    // Windowed sieve over odd candidates: cross out small-prime multiples,
    // Miller-Rabin the survivors.
    constexpr std::size_t window = 1 << 12;
    while (true) {
        std::vector<bool> composite(window, false);
        for (std::uint32_t p : primes) {
            if (p == 2) continue;
            // first odd multiple of p that is >= c
            std::uint64_t rem = (c % p).convert_to<std::uint64_t>();
            std::uint64_t ofs = rem == 0 ? 0 : p - rem;       // c + ofs divisible by p
            if (ofs % 2 != 0) ofs += p;                       // keep candidates odd
            for (std::uint64_t i = ofs / 2; i < window; i += p) {
                if (c + 2 * i == p) continue;  // p itself
                composite[static_cast<std::size_t>(i)] = true;
            }
        }
        for (std::size_t i = 0; i < window; ++i) {
            if (composite[i]) continue;
            BigInt cand = c + 2 * static_cast<long>(i);
            if (is_prime(cand, cfg)) return cand;
        }
        c += 2 * static_cast<long>(window);
    }
}

}  // namespace ostro
