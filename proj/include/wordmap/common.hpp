#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wordmap {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Bad user input: malformed specs, words, parameters.  CLI exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A guard was exceeded (enumeration size, evaluation budget).  CLI exit code 3.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal postcondition failed; indicates a bug.  CLI exit code 4.
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Primes in [2, limit), ascending.
inline std::vector<u32> primes_below(u32 limit) {
    std::vector<bool> sieve(limit, true);
    std::vector<u32> out;
    for (u32 i = 2; i < limit; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (u64 j = u64(i) * i; j < limit; j += i) sieve[j] = false;
    }
    return out;
}

/// Writes q = p^k; false if q is not a prime power.
inline bool prime_power(u64 q, u64& p, int& k) {
    if (q < 2) return false;
    u64 b = q;
    for (u64 d = 2; d * d <= b; ++d) {
        if (b % d == 0) {
            p = d;
            k = 0;
            while (b > 1) {
                if (b % d != 0) return false;
                b /= d;
                ++k;
            }
            return true;
        }
    }
    p = q;
    k = 1;
    return true;
}

struct WilsonInterval {
    double lower = 0.0;
    double upper = 1.0;
};

/// Wilson score interval for a binomial proportion (default z: two-sided 99%).
inline WilsonInterval wilson_interval(u64 successes, u64 trials, double z = 2.5758293035489004) {
    if (trials == 0) return {0.0, 1.0};
    const double n = double(trials);
    const double phat = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = phat + z2 / (2.0 * n);
    const double rad = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    WilsonInterval w;
    w.lower = std::max(0.0, (center - rad) / denom);
    w.upper = std::min(1.0, (center + rad) / denom);
    return w;
}

}  // namespace wordmap
