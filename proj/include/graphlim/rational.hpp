#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace graphlim {

// Exact arithmetic types. All cost/rank/measure values in the library are
// exact rationals; floating point appears only in explicitly approximate
// spectral routines and plot output.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int& v) { return v.get_str(); }

// "num/den" with positive denominator; integers render without the "/1".
inline std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline std::string num_string(const Rat& v) { return v.get_num().get_str(); }
inline std::string den_string(const Rat& v) { return v.get_den().get_str(); }

inline double to_double(const Rat& v) { return v.get_d(); }

}  // namespace graphlim
