#pragma once

#include <cstdint>

#include "stabcat/errors.hpp"

namespace stabcat {

using Fel = std::uint32_t;  // canonical residue in 0..p-1

/// Prime field F_p with canonical representatives. All arithmetic is exact.
class FieldSpec {
  public:
    explicit FieldSpec(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw ValidationError("field modulus " + std::to_string(p) + " is not prime");
    }

    std::uint32_t p() const { return p_; }

    Fel reduce(long long x) const {
        long long r = x % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Fel>(r);
    }
    Fel add(Fel a, Fel b) const { return static_cast<Fel>((std::uint64_t(a) + b) % p_); }
    Fel sub(Fel a, Fel b) const { return static_cast<Fel>((std::uint64_t(a) + p_ - b) % p_); }
    Fel mul(Fel a, Fel b) const { return static_cast<Fel>((std::uint64_t(a) * b) % p_); }
    Fel neg(Fel a) const { return a == 0 ? 0 : p_ - a; }
    Fel inv(Fel a) const {
        if (a == 0) throw Error("division by zero in F_p");
        // extended Euclid on (a, p)
        long long t = 0, new_t = 1;
        long long r = p_, new_r = a;
        while (new_r != 0) {
            long long q = r / new_r;
            long long tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += p_;
        return static_cast<Fel>(t);
    }

    bool operator==(const FieldSpec& o) const = default;

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

  private:
    std::uint32_t p_;
};

}  // namespace stabcat
