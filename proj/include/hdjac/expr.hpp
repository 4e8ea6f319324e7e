#pragma once

#include "hdjac/poly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hdjac {

// Parse error with the byte offset of the offending token.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
          offset(offset) {}
    std::size_t offset;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' NAT)?
//   atom   := NAT | VAR | '(' expr ')'
// No implicit multiplication; "-x^2" parses as -(x^2); whitespace ignored.
PolyZ parse_poly_z(std::string_view text, const std::vector<std::string>& vars);
PolyMod parse_poly_mod(std::string_view text, const std::vector<std::string>& vars,
                       std::uint32_t p);

// Deterministic printer, ascending graded-lex term order; round-trips
// through the parser to an equal polynomial.
std::string format_poly(const PolyZ& g, const std::vector<std::string>& vars);
std::string format_poly(const PolyMod& g, const std::vector<std::string>& vars);

// Comma-separated variable list ("x,y") -> names, validated as identifiers.
std::vector<std::string> split_var_names(std::string_view list);

}  // namespace hdjac
