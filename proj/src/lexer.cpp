#include "lexer.h"

#include <array>
#include <cctype>

namespace rewlang {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {
    "if", "then", "else", "for", "step", "until", "do", "while",
    "and", "or", "not", "constructors", "rewrite", "flat",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.pos = {line, col};
    std::size_t start = i;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(src.substr(start, j - start));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && ident_start(src[j]))
        throw ParseError(tok.pos, "malformed number");
      tok.kind = Token::Kind::Int;
      tok.text = std::string(src.substr(start, j - start));
      advance(j - i);
    } else {
      static constexpr std::array<std::string_view, 6> kTwo = {"<-", "->", "<=", ">=", "==", "!="};
      tok.kind = Token::Kind::Punct;
      for (auto two : kTwo) {
        if (src.substr(i, 2) == two) {
          tok.text = std::string(two);
          break;
        }
      }
      if (tok.text.empty()) {
        static constexpr std::string_view kOne = "(){}[]<>,;=+-*/@";
        if (kOne.find(c) == std::string_view::npos)
          throw ParseError(tok.pos, std::string("unexpected character '") + c + "'");
        tok.text = std::string(1, c);
      }
      advance(tok.text.size());
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace rewlang
