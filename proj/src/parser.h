#ifndef REWLANG_PARSER_H
#define REWLANG_PARSER_H

#include <string>
#include <string_view>

#include "ast.h"
#include "term.h"

namespace rewlang {

/// Parses a `.trs` program. Throws ParseError on the first syntax or
/// name-resolution error.
Program parse_program(std::string_view source, std::string file = "<input>");

/// Parses a ground query term over the symbols of p.
Term parse_query(std::string_view source, const Program& p);

/// Parses a single aterm without resolving names; bare identifiers stay
/// variables. Used by tests and tools that build fragments.
ATerm parse_aterm(std::string_view source);

}  // namespace rewlang

#endif
