#ifndef REWLANG_TERM_H
#define REWLANG_TERM_H

#include <boost/multiprecision/cpp_int.hpp>

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewlang {

using BigInt = boost::multiprecision::cpp_int;

struct SourcePos {
  int line = 0;
  int column = 0;
  auto operator<=>(const SourcePos&) const = default;
};

/// A plain (undecorated) first-order term. Symbols are identified by name and
/// argument count; integers are constructor constants carrying a value.
struct Term {
  enum class Kind : unsigned char { Var, Int, App };

  Kind kind = Kind::App;
  std::string name;
  BigInt value;
  std::vector<Term> args;

  static Term var(std::string name);
  static Term integer(BigInt value);
  static Term app(std::string name, std::vector<Term> args = {});
  static Term tuple(std::vector<Term> args);

  bool is_var() const { return kind == Kind::Var; }
  bool is_int() const { return kind == Kind::Int; }
  bool is_app() const { return kind == Kind::App; }
  bool is_tuple() const;
  bool is_ground() const;
  std::size_t size() const;

  bool operator==(const Term& other) const;
};

void collect_vars(const Term& t, std::vector<std::string>& out);
std::set<std::string> vars_of(const Term& t);

/// Base for all errors raised by the core; carries a short machine code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message)
      : Error("parse", std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos) {}
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

}  // namespace rewlang

#endif
