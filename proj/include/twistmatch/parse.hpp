#pragma once

#include <string>

#include "twistmatch/curves.hpp"

namespace twistmatch {

// "x^2+1", "x^3-2x+5"
NumberField parse_field(const std::string& text);

// polynomial in theta with rational coefficients: "θ", "theta^2-1/2", "0"
FieldElem parse_field_elem(const NumberField& K, const std::string& text);

// "y^2 = x^3 + (A)x + (B)" with A, B polynomials in theta
EllipticCurveOverK parse_curve(const NumberField& K, const std::string& text);

}  // namespace twistmatch
