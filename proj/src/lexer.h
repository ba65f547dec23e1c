#ifndef REWLANG_LEXER_H
#define REWLANG_LEXER_H

#include <string>
#include <string_view>
#include <vector>

#include "term.h"

namespace rewlang {

struct Token {
  enum class Kind : unsigned char { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;

  bool is(std::string_view punct) const { return kind == Kind::Punct && text == punct; }
  bool is_ident(std::string_view word) const { return kind == Kind::Ident && text == word; }
};

bool is_keyword(std::string_view word);

/// Splits source text into tokens. `#` starts a comment running to end of
/// line. `<-` and `->` are single tokens, so `x<-1` is an assignment.
std::vector<Token> tokenize(std::string_view source);

}  // namespace rewlang

#endif
