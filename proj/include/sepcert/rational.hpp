#ifndef SEPCERT_RATIONAL_HPP
#define SEPCERT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace sepcert {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Error raised for invalid inputs, violated preconditions and failed
/// internal consistency checks. Everything user-facing catches this.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw Error(msg);
}

inline Int rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Lowest-terms "p/q" (plain "p" when q == 1).
inline std::string format_rational(const Rational& r) {
    Int num = rational_num(r), den = rational_den(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Parses "p" or "p/q". Rejects zero denominators and junk.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> Error { return Error("invalid rational '" + text + "'"); };
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) throw bad();
            return Rational(Int(text));
        }
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) throw bad();
        Int d(den);
        if (d == 0) throw Error("zero denominator in rational '" + text + "'");
        return Rational(Int(num), d);
    } catch (const std::exception& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw bad();
    }
}

inline Int ipow(Int base, unsigned long long exp) {
    Int result = 1;
    while (exp > 0) {
        if (exp & 1ULL) result *= base;
        base *= base;
        exp >>= 1ULL;
    }
    return result;
}

/// Bit length of a positive integer; bitlen(x) - 1 == floor(log2 x).
inline long long bit_length(const Int& x) {
    require(x > 0, "bit_length: argument must be positive");
    return static_cast<long long>(boost::multiprecision::msb(x)) + 1;
}

/// floor(e * log2 m) for integers m >= 1, computed exactly as
/// bitlen(m^e) - 1. Guarded so absurd parameters fail loudly instead of
/// exhausting memory.
inline long long floor_log2_pow(const Int& m, unsigned long long exp) {
    require(m >= 1, "floor_log2_pow: base must be >= 1");
    if (m == 1 || exp == 0) return 0;
    unsigned long long base_bits = static_cast<unsigned long long>(bit_length(m));
    require(base_bits * exp <= (1ULL << 33),
            "floor_log2_pow: parameters too large for exact evaluation");
    return bit_length(ipow(m, exp)) - 1;
}

/// Smallest integer k >= coef * n^(p/q), for coef >= 0 rational and
/// integers n >= 1, p >= 0, q >= 1; capped at `cap`. All comparisons are
/// exact integer cross-powers, no floating point.
inline long long ceil_coef_pow(const Rational& coef, long long n, const Int& p, const Int& q,
                               long long cap) {
    require(coef >= 0 && n >= 1 && p >= 0 && q >= 1, "ceil_coef_pow: bad arguments");
    if (coef == 0) return 0;
    Int cn = rational_num(coef), cd = rational_den(coef);
    unsigned long long pe = p.convert_to<unsigned long long>();
    unsigned long long qe = q.convert_to<unsigned long long>();
    // k >= (cn/cd) * n^(p/q)  <=>  (k*cd)^q >= cn^q * n^p
    Int rhs = ipow(cn, qe) * ipow(Int(n), pe);
    auto ok = [&](long long k) { return ipow(Int(k) * cd, qe) >= rhs; };
    if (!ok(cap)) return cap;
    long long lo = 0, hi = cap;  // ok(hi) holds; find smallest ok
    while (lo + 1 < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (ok(mid)) hi = mid;
        else lo = mid;
    }
    return ok(lo) ? lo : hi;
}

/// Largest integer k <= coef * n^(p/q) (same conventions), capped at `cap`.
inline long long floor_coef_pow(const Rational& coef, long long n, const Int& p, const Int& q,
                                long long cap) {
    require(coef >= 0 && n >= 1 && p >= 0 && q >= 1, "floor_coef_pow: bad arguments");
    if (coef == 0) return 0;
    Int cn = rational_num(coef), cd = rational_den(coef);
    unsigned long long pe = p.convert_to<unsigned long long>();
    unsigned long long qe = q.convert_to<unsigned long long>();
    // k <= (cn/cd) * n^(p/q)  <=>  (k*cd)^q <= cn^q * n^p
    Int rhs = ipow(cn, qe) * ipow(Int(n), pe);
    auto ok = [&](long long k) { return ipow(Int(k) * cd, qe) <= rhs; };
    if (ok(cap)) return cap;
    long long lo = 0, hi = cap;  // ok(lo), !ok(hi); find largest ok
    while (lo + 1 < hi) {
        long long mid = lo + (hi - lo) / 2;
        if (ok(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

}  // namespace sepcert

#endif
