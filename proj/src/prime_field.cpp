#include "cfa/prime_field.hpp"

#include "cfa/errors.hpp"

namespace cfa {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p)) {
        throw BadParams("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    }
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const noexcept {
    Scalar result = 1 % p_;
    Scalar base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Scalar PrimeField::inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    // Fermat: a^(p-2)
    return pow(a, p_ - 2);
}

Scalar PrimeField::from_int(long long v) const noexcept {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<Scalar>(m);
}

}  // namespace cfa
