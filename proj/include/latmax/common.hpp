#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace latmax {

// Global comparison tolerance for floating-point values. Instance families
// carry epsilon offsets that sit close to ties, so every inequality in
// solvers, checkers and verdicts goes through these helpers.
inline constexpr double kTol = 1e-9;

inline bool approx_eq(double a, double b) { return std::fabs(a - b) <= kTol; }
inline bool approx_ge(double a, double b) { return a >= b - kTol; }
inline bool approx_le(double a, double b) { return a <= b + kTol; }
// Strict violation: fails only with a margin beyond the tolerance.
inline bool violates_ge(double a, double b) { return a < b - kTol; }

struct enumeration_limit_error : std::runtime_error {
    explicit enumeration_limit_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Default cap on enumerated domain sizes; LATMAX_ENUM_LIMIT overrides it.
inline std::uint64_t default_enum_limit() {
    static const std::uint64_t limit = [] {
        if (const char* env = std::getenv("LATMAX_ENUM_LIMIT")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1} << 24;
    }();
    return limit;
}

// Exact rational with 64-bit numerator/denominator, used by the checkers'
// exact mode where float ties would corrupt witnesses.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }
    static Rat integer(long long n) { return Rat(n, 1); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rat operator+(Rat a, Rat b) {
        __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        return make_checked(n, d);
    }
    friend Rat operator-(Rat a, Rat b) { return a + Rat(-b.num, b.den); }
    friend Rat operator*(Rat a, Rat b) {
        return make_checked(static_cast<__int128>(a.num) * b.num,
                            static_cast<__int128>(a.den) * b.den);
    }
    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rat a, Rat b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(Rat a, Rat b) { return a == b || a < b; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }

private:
    static Rat make_checked(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rat r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a;
    }
};

// Deterministic RNG wrapper. All randomness in the artifact flows through
// this type so runs are reproducible from (seed) alone, independent of
// standard-library distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection sampling keeps this unbiased and deterministic.
        std::uint64_t threshold = (0) - n;
        threshold %= n;
        for (;;) {
            std::uint64_t r = gen_();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform integer in [lo, hi] inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 gen_;
};

// Streaming mean / standard deviation, long-double accumulation.
struct RunningStats {
    long double sum = 0.0L;
    long double sumsq = 0.0L;
    std::uint64_t n = 0;

    void add(double x) {
        sum += x;
        sumsq += static_cast<long double>(x) * x;
        ++n;
    }
    double mean() const { return n ? static_cast<double>(sum / n) : 0.0; }
    // Sample standard deviation.
    double stddev() const {
        if (n < 2) return 0.0;
        long double m = sum / n;
        long double var = (sumsq - static_cast<long double>(n) * m * m) / (n - 1);
        if (var < 0) var = 0;
        return static_cast<double>(sqrtl(var));
    }
    // 3 sigma-hat / sqrt(n): the margin used by statistical verdicts.
    double three_se() const { return n ? 3.0 * stddev() / std::sqrt(static_cast<double>(n)) : 0.0; }
};

// Fixed 12-significant-digit formatting for reports; the CSV/JSON goldens
// rely on this being the only float-to-text path.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

}  // namespace latmax
