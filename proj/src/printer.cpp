#include "printer.h"

#include <sstream>

namespace rewlang {

namespace {

// Precedence levels, loosest first.
enum Level : int {
  kStmt = 0,
  kIf = 1,
  kOr = 2,
  kAnd = 3,
  kNot = 4,
  kCmp = 5,
  kAdd = 6,
  kMul = 7,
  kAtom = 8,
};

struct OpInfo {
  const char* text;
  int level;
};

const OpInfo* binary_op(const std::string& name) {
  static const std::pair<const char*, OpInfo> kOps[] = {
      {"sum", {"+", kAdd}}, {"sub", {"-", kAdd}},   {"mul", {"*", kMul}},
      {"div", {"/", kMul}}, {"lt", {"<", kCmp}},    {"le", {"<=", kCmp}},
      {"gt", {">", kCmp}},  {"ge", {">=", kCmp}},   {"eq", {"==", kCmp}},
      {"and", {" and ", kAnd}}, {"or", {" or ", kOr}},
  };
  for (const auto& [n, info] : kOps)
    if (name == n) return &info;
  return nullptr;
}

std::string int_text(const BigInt& v, int min_level) {
  std::string s = v.str();
  if (v < 0 && min_level > kStmt) return "(" + s + ")";
  return s;
}

template <typename Node, typename Print>
std::string print_app(const std::string& name, const std::vector<Node>& args, int min_level,
                      Print&& print) {
  std::string out;
  int level = kAtom;
  if (name == kTupleName) {
    out = "<";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += print(args[i], kAdd);
    }
    out += ">";
  } else if (args.size() == 2 && binary_op(name)) {
    const OpInfo* op = binary_op(name);
    level = op->level;
    int left_min = level == kCmp ? level + 1 : level;
    out = print(args[0], left_min) + op->text + print(args[1], level + 1);
  } else if (args.size() == 1 && name == "not") {
    level = kNot;
    out = "not " + print(args[0], kNot);
  } else if (args.size() == 3 && name == kIfName) {
    level = kIf;
    out = "if " + print(args[0], kIf + 1) + " then " + print(args[1], kIf + 1) + " else " +
          print(args[2], kStmt);
  } else {
    out = name;
    if (!args.empty()) {
      out += "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += print(args[i], kStmt);
      }
      out += ")";
    }
  }
  if (level < min_level) return "(" + out + ")";
  return out;
}

std::string print_term(const Term& t, int min_level) {
  switch (t.kind) {
    case Term::Kind::Var: return t.name;
    case Term::Kind::Int: return int_text(t.value, min_level);
    case Term::Kind::App: break;
  }
  return print_app(t.name, t.args, min_level,
                   [](const Term& a, int lvl) { return print_term(a, lvl); });
}

class ATermPrinter {
 public:
  explicit ATermPrinter(bool multiline) : multiline_(multiline) {}

  std::string print(const ATerm& a, int min_level, int indent) {
    using K = ATerm::Kind;
    switch (a.kind) {
      case K::Var: return a.name;
      case K::Int: return int_text(a.value, min_level);
      case K::App:
        return print_app(a.name, a.kids, min_level,
                         [&](const ATerm& k, int lvl) { return print(k, lvl, indent); });
      case K::If: {
        // Nested conditionals and statement chains are parenthesized except
        // for a trailing `else if`.
        const ATerm& e = a.kids[2];
        std::string s = "if " + print(a.kids[0], kIf + 1, indent) + " then " +
                        print(a.kids[1], kIf + 1, indent) + " else " +
                        print(e, e.is_statement() ? kIf + 1 : kStmt, indent);
        return min_level > kIf ? "(" + s + ")" : s;
      }
      case K::Hole: return "";
      default: break;
    }
    // Statement chain. Parenthesized chains are always printed inline.
    bool inline_chain = !multiline_ || min_level > kStmt;
    std::string s = chain(a, inline_chain, indent);
    return min_level > kStmt ? "(" + s + ")" : s;
  }

 private:
  std::string newline(int indent) const { return "\n" + std::string(indent, ' '); }

  std::string chain(const ATerm& a, bool inline_chain, int indent) {
    std::string out;
    const ATerm* cur = &a;
    while (true) {
      if (cur->kind == ATerm::Kind::Hole) break;
      if (!cur->is_statement()) {
        out += print(*cur, kStmt, indent);
        break;
      }
      out += head(*cur, inline_chain, indent);
      cur = &cur->rest();
      if (cur->kind == ATerm::Kind::Hole) break;
      out += inline_chain ? "; " : ";" + newline(indent);
    }
    return out;
  }

  std::string block(const ATerm& body, bool inline_chain, int indent) {
    if (body.kind == ATerm::Kind::Hole) return "{}";
    if (inline_chain) return "{ " + chain(body, true, indent) + " }";
    return "{" + newline(indent + 2) + chain(body, false, indent + 2) + newline(indent) + "}";
  }

  std::string head(const ATerm& a, bool inline_chain, int indent) {
    using K = ATerm::Kind;
    switch (a.kind) {
      case K::Assign: {
        std::string lhs;
        if (a.tuple_target) {
          lhs = "<";
          for (std::size_t i = 0; i < a.targets.size(); ++i) lhs += (i ? "," : "") + a.targets[i];
          lhs += ">";
        } else {
          lhs = a.targets.at(0);
        }
        return lhs + " <- " + print(a.kids[0], kIf, indent);
      }
      case K::StmtIf:
        return "if " + print(a.kids[0], kIf, indent) + " then " +
               block(a.kids[1], inline_chain, indent) + " else " + block(a.kids[2], inline_chain, indent);
      case K::For:
        return "for " + a.name + " = " + print(a.kids[0], kIf, indent) + " step 1 until " +
               print(a.kids[1], kIf, indent) + " do " + block(a.kids[2], inline_chain, indent);
      case K::While:
        return "while " + print(a.kids[0], kIf, indent) + " do " + block(a.kids[1], inline_chain, indent);
      case K::Until:
        return "do " + block(a.kids[0], inline_chain, indent) + " until " + print(a.kids[1], kIf, indent);
      default:
        return "";
    }
  }

  bool multiline_;
};

}  // namespace

std::string to_string(const Term& t) { return print_term(t, kStmt); }

std::string to_string(const ATerm& a) { return ATermPrinter(false).print(a, kStmt, 0); }

std::string to_string(const Rule& r) {
  return print_term(r.lhs, kStmt) + " -> " + ATermPrinter(false).print(r.rhs, kStmt, 0);
}

std::string to_string(const Procedure& p) {
  std::ostringstream out;
  if (!p.origin.empty()) out << "# lowered from " << p.origin << "\n";
  if (p.kind == Procedure::Kind::Rewrite) {
    out << "rewrite " << p.name << (p.innermost ? " @innermost" : "") << " {\n";
    for (const auto& r : p.rules) out << "  " << to_string(r) << ";\n";
    out << "}\n";
  } else {
    out << "flat " << p.name << "(";
    for (std::size_t i = 0; i < p.params.size(); ++i) out << (i ? ", " : "") << p.params[i];
    out << ") {\n  " << ATermPrinter(true).print(p.body, kStmt, 2) << "\n}\n";
  }
  return out.str();
}

std::string to_string(const Program& p) {
  std::ostringstream out;
  if (!p.constructors.empty()) {
    out << "constructors ";
    for (std::size_t i = 0; i < p.constructors.size(); ++i) {
      const auto& c = p.constructors[i];
      out << (i ? ", " : "") << c.name << "/";
      if (c.variadic)
        out << "*";
      else
        out << c.arity;
    }
    out << ";\n";
  }
  for (const auto& proc : p.procedures) out << "\n" << to_string(proc);
  return out.str();
}

}  // namespace rewlang
