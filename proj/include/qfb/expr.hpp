#pragma once

#include "qfb/horizontal.hpp"

namespace qfb {

class ParseError : public std::runtime_error {
public:
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Parses an element of a presented algebra. Generators appear by their
/// declared names (a trailing `*` picks the star partner when that name is
/// declared), `^n` is a positive power, juxtaposition multiplies, and
/// scalars use `+ - * / i` with rationals and declared parameters. When
/// `values` has an entry for a parameter the constant is substituted during
/// parsing.
NcPoly parse_element(const PresentedAlgebra& alg, const std::string& text,
                     const std::map<std::string, Rat>* values = nullptr);

/// Parses a pure scalar; parameter names resolve through the table.
Scalar parse_scalar(const std::shared_ptr<const ParamTable>& tab, const std::string& text,
                    const std::map<std::string, Rat>* values = nullptr);

/// Parses a horizontal element: generator names resolve against the total
/// algebra first, then the exterior basis; juxtaposition is the horizontal
/// product.
Hor parse_hor(const Bundle& P, const std::string& text,
              const std::map<std::string, Rat>* values = nullptr);

}  // namespace qfb
