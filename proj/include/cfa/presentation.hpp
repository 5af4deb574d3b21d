#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfa/algebra.hpp"
#include "cfa/errors.hpp"
#include "cfa/space.hpp"

namespace cfa {

struct Diagnostic {
    int line = 0;    ///< 1-based
    int column = 0;  ///< 1-based
    std::string message;
    std::string format() const;
};

class ParseError : public Error {
public:
    explicit ParseError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

using Terms = std::vector<std::pair<std::string, long long>>;

/// Declarative content of a .cfa file. Equality is structural.
struct Presentation {
    struct ProductLine {
        std::string left, right;
        Terms terms;
        bool operator==(const ProductLine&) const = default;
    };

    std::uint32_t prime = 0;
    int precision = 0;
    std::string kind = "algebra";  ///< algebra | space | extension
    std::optional<bool> exact;     ///< mode exact | tower; absent means tower

    std::optional<std::string> family;
    std::vector<std::pair<std::string, int>> basis;
    std::string unit;
    std::vector<ProductLine> mul;

    /// derive regular | ideal e.. | quotient e.. | cyclic e
    std::optional<std::pair<std::string, std::vector<std::string>>> derive;
    std::vector<std::pair<std::string, int>> space_basis;
    std::vector<ProductLine> act;

    std::optional<std::string> t_multiply;  ///< T = multiplication by a ring element
    std::vector<std::pair<std::string, Terms>> t_columns;

    bool operator==(const Presentation&) const = default;
};

/// Collects every diagnostic before throwing ParseError.
Presentation parse_presentation(const std::string& text);
std::string serialize_presentation(const Presentation& p);

/// "2*x^2 + t - y"; names may themselves contain * and ^.
Terms parse_terms(const std::string& text, const std::vector<std::string>& names);
std::string format_terms(const Terms& terms);

/// Ring element from an expression. A term that is not a basis name is split
/// on * into factors (each a name or name^k) multiplied left-nested; a bare
/// integer is a multiple of the unit. Throws BadParams.
Vector parse_ring_element(const TruncatedFilteredAlgebra& ring, const std::string& text);
/// Space element: F_p-combination of space basis names.
Vector parse_space_element(const Coordinates& coords, const std::string& text);

struct LoadedObject {
    AlgebraPtr ring;
    std::optional<FilteredSpace> space;
    std::optional<Matrix> t_op;
    /// ring element -> space element, for derived spaces only
    std::function<Vector(const Vector&)> from_ring;
};

/// Builds the presentation's objects. Throws BadParams on semantic errors.
LoadedObject build_presentation(const Presentation& p);

}  // namespace cfa
