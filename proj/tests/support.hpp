#pragma once

#include <string>

#include "cfa/families.hpp"
#include "cfa/presentation.hpp"

namespace cfa::test {

inline AlgebraPtr family(const std::string& spec, std::uint32_t p, int N) {
    return build_family(parse_family(spec), PrimeField(p), N);
}

inline Vector el(const AlgebraPtr& ring, const std::string& text) { return parse_ring_element(*ring, text); }

inline std::string fmt(const AlgebraPtr& ring, const Vector& v) { return ring->coords()->format(v); }

}  // namespace cfa::test
