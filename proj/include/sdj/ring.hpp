#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sdj {

using bigint = boost::multiprecision::cpp_int;

/// Coefficient ring tag: the integers, or a prime field F_p.
struct Ring {
    enum class Kind { Integers, PrimeField };
    Kind kind = Kind::Integers;
    int p = 0;  // prime, PrimeField only

    static Ring integers() { return Ring{Kind::Integers, 0}; }
    static Ring fp(int p) {
        if (p < 2) throw std::invalid_argument("F_p needs p >= 2");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("F_p needs p prime");
        return Ring{Kind::PrimeField, p};
    }

    bool is_field() const { return kind == Kind::PrimeField; }
    bool operator==(const Ring& o) const { return kind == o.kind && p == o.p; }

    std::string name() const {
        return kind == Kind::Integers ? "Z" : "F" + std::to_string(p);
    }
};

inline long long mod_pos(long long v, long long p) {
    long long r = v % p;
    return r < 0 ? r + p : r;
}

/// Inverse mod prime p via extended Euclid.
inline long long mod_inverse(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = mod_pos(a, p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::invalid_argument("not invertible");
    return mod_pos(t, p);
}

}  // namespace sdj
