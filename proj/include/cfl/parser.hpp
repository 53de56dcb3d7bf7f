#pragma once

#include <string_view>

#include "cfl/formula.hpp"
#include "cfl/signature.hpp"

namespace cfl {

/// Parses the ASCII formula grammar:
///
///   formula := ("sup"|"inf") VAR "." formula | or
///   or      := and ( "\/" and )*
///   and     := sub ( "/\" sub )*
///   sub     := unary ( "-." unary )*            (left-associative)
///   unary   := "~" unary | "1/2" unary | primary
///   primary := "(" formula ")" | "|" formula "-" formula "|"
///            | INT "/2^" INT | IDENT [ "(" term ("," term)* ")" ]
///   term    := IDENT [ "(" term ("," term)* ")" ]
///
/// Derived forms (/\, \/, |a-b|, inf) expand into the five primitives.
/// When a signature is given, identifiers in term position that name its
/// function symbols parse as constants/applications (with arity checks);
/// all other term identifiers are variables.
///
/// Throws ParseError with the byte offset of the failure.
Formula parse(std::string_view text, const Signature& sig = Signature());

/// Term-only entry point (same conventions).
Term parse_term(std::string_view text, const Signature& sig = Signature());

}  // namespace cfl
