#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>

namespace ncg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

// p^e as a big integer; e kept small by construction (ball level bounds).
inline BigInt pow_int(const BigInt& p, unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

// Symmetric remainder of a modulo m: result in (-m/2, m/2].
inline BigInt symmetric_mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace ncg
