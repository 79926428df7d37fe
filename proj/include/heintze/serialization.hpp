#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "heintze/maps.hpp"
#include "heintze/spectral_basis.hpp"

namespace heintze {

using Json = nlohmann::json;

/// {"blocks":[{"alpha":1.0,"sizes":[2,1]}, ...]}. A nonzero "imag" part on a
/// block, or an alpha written as [re, im] with im != 0, is a SpecError.
JordanSpec parse_jordan_spec(const Json& j);
Json to_json(const JordanSpec& spec);

/// Map descriptor kinds: identity, dilation {"t"}, translation {"v"},
/// affine_qsim {"s","rotation","translation"[,"scale"]}, linear {"matrix"},
/// unipotent_shear {"B":[{"i","expr":"poly","coeffs":[{"out","coef","powers"}]}]}.
/// The shear index i numbers levels from 1 in storage order; "out" is 0-based.
MapDescriptor parse_map(const OrderedBasis& basis, const Json& j);

/// "a,l" or "(a,l)".
Level parse_level_text(std::string_view text);
/// [a, l] or {"alpha": a, "ell": l}.
Level parse_level(const Json& j);
/// Comma or whitespace separated numbers, optional brackets.
Vector parse_vector_text(std::string_view text);
Vector parse_vector(const Json& j);
Matrix parse_matrix(const Json& j);

Json to_json(const Vector& v);
Json to_json(const Level& level);

/// Canonical rendering: object keys sorted, no whitespace, every floating
/// value printed with "%.12e", non-finite values written as the strings
/// "inf", "-inf" and "nan". Integers print as integers.
std::string canonical_dump(const Json& j);

}  // namespace heintze
