#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fano {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Binomial coefficient C(n, k); zero outside the Pascal range.
inline Int binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    k = std::min(k, n - k);
    Int num(1), den(1);
    for (long long i = 1; i <= k; ++i) {
        num *= Int(n - k + i);
        den *= Int(i);
    }
    return num / den;
}

inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::invalid_argument("exact_div: division by zero");
    Int q = a / b;
    if (q * b != a) throw std::logic_error("exact_div: not divisible");
    return q;
}

inline long long to_ll(const Int& v) { return v.convert_to<long long>(); }

}  // namespace fano
