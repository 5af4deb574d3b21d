#pragma once

#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace cfa {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);

/// Polynomial fit of an integer sequence by Newton forward differences.
struct PolynomialFit {
    int degree = 0;   ///< δ
    Rational leading; ///< α = Δ^δ / δ!
    int start = 0;    ///< n0: the polynomial reproduces the sequence for n >= n0
    /// P(n) = sum_k binomial[k] * C(n - n0, k)
    std::vector<Rational> binomial;
    /// P(n) = sum_k power[k] * n^k
    std::vector<Rational> power;

    Rational evaluate(long long n) const;
};

/// Smallest order d whose d-th differences agree on the last `window`
/// entries. When `exact` is set the sequence is known to be constant past
/// its end and is padded with `window` copies of its last value first.
/// Throws PrecisionTooLow when no order stabilizes.
PolynomialFit fit_sequence(const std::vector<long long>& seq, int window, bool exact);

}  // namespace cfa
