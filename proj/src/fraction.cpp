#include "neuwirth/fraction.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>

namespace nw {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

BigInt parse_int(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty integer");
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) throw std::invalid_argument("malformed integer: " + std::string(s));
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw std::invalid_argument("malformed integer: " + std::string(s));
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
}

// Truncation toward zero.
BigInt trunc_div(const BigInt& a, const BigInt& b) { return a / b; }

constexpr long long kSmall = 1LL << 62;

// The value when |x| < 2^62; convert_to saturates, so larger values are rejected.
std::optional<long long> small(const BigInt& x) {
    long long v = x.convert_to<long long>();
    if (v >= kSmall || v <= -kSmall) return std::nullopt;
    return v;
}

std::optional<Fraction> fraction_of_small(const ContinuedFraction& cf) {
    long long p = 0, q = 1;
    for (std::size_t k = 0; k < cf.terms.size(); ++k) {
        auto term = small(cf.terms[k]);
        if (!term) return std::nullopt;
        long long a = *term;
        if (k == 0) {
            p = a;
            continue;
        }
        if (p == 0) return std::nullopt;
        long long np;
        if (__builtin_mul_overflow(a, p, &np) || __builtin_add_overflow(np, q, &np)) return std::nullopt;
        q = p;
        p = np;
    }
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Fraction(p, q);
}

}  // namespace

bool ContinuedFraction::is_standard() const {
    bool pos = false, neg = false;
    for (const auto& a : terms) {
        if (a > 0) pos = true;
        if (a < 0) neg = true;
    }
    return !(pos && neg);
}

Fraction make_fraction(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    // cpp_rational rejects a negative denominator in its two-argument constructor.
    return den < 0 ? Fraction(-num, -den) : Fraction(num, den);
}

BigInt numerator(const Fraction& q) { return boost::multiprecision::numerator(q); }
BigInt denominator(const Fraction& q) { return boost::multiprecision::denominator(q); }

BigInt floor_of(const Fraction& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt t = n / d;
    if (n % d != 0 && n < 0) t -= 1;
    return t;
}

BigInt ceil_of(const Fraction& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt t = n / d;
    if (n % d != 0 && n > 0) t += 1;
    return t;
}

bool is_integer(const Fraction& q) { return denominator(q) == 1; }

std::string to_string(const Fraction& q) {
    if (is_integer(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_string(const ContinuedFraction& cf) {
    std::string s = "(";
    for (std::size_t i = 0; i < cf.terms.size(); ++i) {
        if (i) s += ",";
        s += cf.terms[i].str();
    }
    return s + ")";
}

Fraction parse_fraction(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Fraction(parse_int(text));
    BigInt n = parse_int(text.substr(0, slash));
    BigInt d = parse_int(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
    return make_fraction(n, d);
}

Fraction fraction_of(const ContinuedFraction& cf) {
    if (cf.terms.empty()) throw std::invalid_argument("empty continued fraction");
    // Convergents p/q; successive convergents are coprime so no gcd is needed.
    if (auto small = fraction_of_small(cf)) return *small;
    BigInt p = cf.terms[0], q = 1;
    for (std::size_t k = 1; k < cf.terms.size(); ++k) {
        if (p == 0) throw std::domain_error("zero intermediate denominator in " + to_string(cf));
        BigInt np = cf.terms[k] * p + q;
        q = p;
        p = std::move(np);
    }
    if (q < 0) {
        p = -p;
        q = -q;
    }
    return Fraction(p, q);
}

ContinuedFraction standard_cf(const Fraction& q) {
    BigInt n = numerator(q), d = denominator(q);
    if (n == 0) throw std::domain_error("standard_cf of 0");
    std::vector<BigInt> outer_first;
    auto small_n = small(n), small_d = small(d);
    if (small_n && small_d) {
        long long sn = *small_n, sd = *small_d;
        while (true) {
            long long a = sn / sd, r = sn % sd;
            outer_first.emplace_back(a);
            if (r == 0) break;
            sn = sd;
            sd = r;
            if (sd < 0) {
                sn = -sn;
                sd = -sd;
            }
        }
        std::reverse(outer_first.begin(), outer_first.end());
        return ContinuedFraction{std::move(outer_first)};
    }
    while (true) {
        BigInt a = trunc_div(n, d);
        outer_first.push_back(a);
        BigInt r = n - a * d;
        if (r == 0) break;
        // next value is d / r
        n = d;
        d = r;
        if (d < 0) {
            n = -n;
            d = -d;
        }
    }
    std::reverse(outer_first.begin(), outer_first.end());
    return ContinuedFraction{std::move(outer_first)};
}

Fraction sum_slope(const Fraction& a, const Fraction& b) { return a + b; }

Fraction rotate_slope(const Fraction& a) {
    if (a == 0) throw std::domain_error("rotation of slope 0 is infinite");
    return Fraction(-1) / a;
}

}  // namespace nw
