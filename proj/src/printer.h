#ifndef REWLANG_PRINTER_H
#define REWLANG_PRINTER_H

#include <string>

#include "ast.h"
#include "term.h"

namespace rewlang {

// All printers emit the concrete syntax accepted by the parser, so printed
// terms, rules and programs can be read back in.

std::string to_string(const Term& t);
std::string to_string(const ATerm& a);
std::string to_string(const Rule& r);
std::string to_string(const Procedure& p);
std::string to_string(const Program& p);

}  // namespace rewlang

#endif
