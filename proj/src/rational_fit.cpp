#include "cfa/rational_fit.hpp"

#include "cfa/errors.hpp"

namespace cfa {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational PolynomialFit::evaluate(long long n) const {
    Rational acc = 0;
    Rational x = 1;
    for (const auto& c : power) {
        acc += c * x;
        x *= n;
    }
    return acc;
}

namespace {

std::vector<long long> differences(const std::vector<long long>& s) {
    std::vector<long long> d;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) d.push_back(s[i + 1] - s[i]);
    return d;
}

// power-basis coefficients of C(n - n0, k)
std::vector<Rational> binomial_in_powers(int k, long long n0) {
    std::vector<Rational> poly{Rational(1)};
    for (int i = 0; i < k; ++i) {
        // multiply by (n - n0 - i) / (i + 1)
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        const Rational shift(-(n0 + i));
        for (std::size_t e = 0; e < poly.size(); ++e) {
            next[e + 1] += poly[e];
            next[e] += poly[e] * shift;
        }
        for (auto& c : next) c /= (i + 1);
        poly = std::move(next);
    }
    return poly;
}

}  // namespace

PolynomialFit fit_sequence(const std::vector<long long>& seq, int window, bool exact) {
    if (window < 1) throw BadParams("stability window must be positive");
    std::vector<long long> s = seq;
    if (exact && !s.empty()) s.insert(s.end(), static_cast<std::size_t>(window), s.back());
    if (s.empty()) throw PrecisionTooLow("empty sequence");

    std::vector<std::vector<long long>> table{s};
    for (int d = 0;; ++d) {
        const auto& cur = table.back();
        if (cur.size() < static_cast<std::size_t>(window)) break;
        const long long last = cur.back();
        bool constant = true;
        for (std::size_t i = cur.size() - static_cast<std::size_t>(window); i < cur.size(); ++i)
            constant = constant && cur[i] == last;
        if (constant) {
            PolynomialFit fit;
            fit.degree = d;
            fit.start = static_cast<int>(cur.size()) - window;
            Rational fact = 1;
            for (int i = 2; i <= d; ++i) fact *= i;
            fit.leading = Rational(last) / fact;
            for (int k = 0; k <= d; ++k) fit.binomial.emplace_back(table[static_cast<std::size_t>(k)][static_cast<std::size_t>(fit.start)]);
            fit.power.assign(static_cast<std::size_t>(d) + 1, Rational(0));
            for (int k = 0; k <= d; ++k) {
                auto b = binomial_in_powers(k, fit.start);
                for (std::size_t e = 0; e < b.size(); ++e) fit.power[e] += fit.binomial[static_cast<std::size_t>(k)] * b[e];
            }
            // earliest n from which the polynomial matches the data
            while (fit.start > 0 && fit.evaluate(fit.start - 1) == Rational(s[static_cast<std::size_t>(fit.start - 1)])) --fit.start;
            for (int k = 0; k <= d; ++k) fit.binomial[static_cast<std::size_t>(k)] = Rational(table[static_cast<std::size_t>(k)][static_cast<std::size_t>(fit.start)]);
            return fit;
        }
        table.push_back(differences(cur));
    }
    throw PrecisionTooLow("no difference order is constant over the last " + std::to_string(window) +
                          " entries of a sequence of length " + std::to_string(seq.size()));
}

}  // namespace cfa
