#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cfa {

using Scalar = std::uint32_t;
using Vector = std::vector<Scalar>;

/// The prime field F_p, 2 <= p < 2^31. Values are canonical representatives
/// in [0, p); every operation returns a canonical representative.
class PrimeField {
public:
    /// Throws BadParams if p is not a prime in range.
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const noexcept { return p_; }

    Scalar add(Scalar a, Scalar b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Scalar neg(Scalar a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const noexcept {
        return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    /// a * b + c
    Scalar fma(Scalar a, Scalar b, Scalar c) const noexcept {
        return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b + c) % p_);
    }
    Scalar pow(Scalar a, std::uint64_t e) const noexcept;
    /// Multiplicative inverse; a must be nonzero.
    Scalar inv(Scalar a) const;
    /// Reduces an arbitrary signed integer.
    Scalar from_int(long long v) const noexcept;

    bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// An element of F_p carrying its modulus.
class Fp {
public:
    Fp(const PrimeField& field, long long value) : p_(field.modulus()), v_(field.from_int(value)) {}

    std::uint32_t modulus() const noexcept { return p_; }
    Scalar value() const noexcept { return v_; }

    bool operator==(const Fp&) const = default;

private:
    std::uint32_t p_;
    Scalar v_;
};

}  // namespace cfa
