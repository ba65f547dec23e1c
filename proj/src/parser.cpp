#include "parser.h"

#include <set>

#include "lexer.h"

namespace rewlang {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view source) : toks_(tokenize(source)) {}

  Program program(std::string file) {
    Program p;
    p.file = std::move(file);
    while (!peek().kind_is_end()) {
      if (accept_ident("constructors")) {
        constructors(p);
      } else if (accept_ident("rewrite")) {
        p.procedures.push_back(rewrite_proc());
      } else if (accept_ident("flat")) {
        p.procedures.push_back(flat_proc());
      } else {
        fail("expected 'constructors', 'rewrite' or 'flat'");
      }
      accept(";");
    }
    return p;
  }

  ATerm whole_aterm() {
    ATerm a = aterm();
    expect_end();
    return a;
  }

  ATerm whole_expr() {
    ATerm a = expr();
    expect_end();
    return a;
  }

 private:
  struct Cursor {
    const Token& tok;
    bool kind_is_end() const { return tok.kind == Token::Kind::End; }
  };

  Cursor peek() const { return {toks_[pos_]}; }
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = cur();
    std::string near = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.pos, msg + " near " + near);
  }

  bool accept(std::string_view punct) {
    if (cur().is(punct)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_ident(std::string_view word) {
    if (cur().is_ident(word)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  void expect_ident(std::string_view word) {
    if (!accept_ident(word)) fail("expected '" + std::string(word) + "'");
  }
  void expect_end() {
    if (cur().kind != Token::Kind::End) fail("unexpected trailing input");
  }
  std::string name() {
    if (cur().kind != Token::Kind::Ident || is_keyword(cur().text)) fail("expected identifier");
    return take().text;
  }

  void constructors(Program& p) {
    do {
      ConstructorDecl d;
      d.pos = cur().pos;
      d.name = name();
      expect("/");
      if (accept("*")) {
        d.variadic = true;
      } else {
        if (cur().kind != Token::Kind::Int) fail("expected arity");
        d.arity = std::stoul(take().text);
      }
      p.constructors.push_back(std::move(d));
    } while (accept(","));
    expect(";");
  }

  Procedure rewrite_proc() {
    Procedure proc;
    proc.kind = Procedure::Kind::Rewrite;
    proc.pos = cur().pos;
    proc.name = name();
    if (accept("@")) {
      SourcePos at = cur().pos;
      std::string strategy = name();
      if (strategy != "innermost") throw ParseError(at, "unsupported strategy '" + strategy + "'");
      proc.innermost = true;
    }
    expect("{");
    while (!accept("}")) {
      Rule r;
      r.pos = cur().pos;
      ATerm lhs = or_expr();
      auto t = lhs.to_term();
      if (!t || !t->is_app() || lhs.kind != ATerm::Kind::App)
        throw ParseError(r.pos, "rule left-hand side must be an application");
      r.lhs = std::move(*t);
      expect("->");
      r.rhs = aterm();
      expect(";");
      proc.rules.push_back(std::move(r));
    }
    if (proc.rules.empty()) throw ParseError(proc.pos, "rewrite procedure '" + proc.name + "' has no rules");
    proc.arity = proc.rules.front().lhs.args.size();
    return proc;
  }

  Procedure flat_proc() {
    Procedure proc;
    proc.kind = Procedure::Kind::Flat;
    proc.pos = cur().pos;
    proc.name = name();
    expect("(");
    std::set<std::string> seen;
    if (!accept(")")) {
      do {
        SourcePos at = cur().pos;
        std::string param = name();
        if (!seen.insert(param).second) throw ParseError(at, "duplicate parameter '" + param + "'");
        proc.params.push_back(std::move(param));
      } while (accept(","));
      expect(")");
    }
    proc.arity = proc.params.size();
    expect("{");
    proc.body = aterm();
    expect("}");
    return proc;
  }

  // aterm := stmt ';' aterm | expr
  ATerm aterm() {
    if (auto s = statement()) {
      if (!accept(";")) fail("statement must be followed by ';' and an expression");
      s->rest() = aterm();
      return std::move(*s);
    }
    return expr();
  }

  // '{' stmt { ';' stmt } [';'] '}' ; the chain ends in a Hole.
  ATerm block() {
    expect("{");
    std::vector<ATerm> stmts;
    while (!cur().is("}")) {
      auto s = statement();
      if (!s) fail("expected statement");
      stmts.push_back(std::move(*s));
      if (!accept(";")) break;
    }
    expect("}");
    ATerm chain = ATerm::hole();
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
      it->rest() = std::move(chain);
      chain = std::move(*it);
    }
    return chain;
  }

  // Returns a statement whose rest is a Hole, or nullopt (position
  // unchanged) when the input does not start a statement.
  std::optional<ATerm> statement() {
    const Token& t = cur();
    SourcePos at = t.pos;
    if (t.is_ident("for")) {
      take();
      std::string counter = name();
      expect("=");
      ATerm start = expr();
      expect_ident("step");
      if (cur().kind != Token::Kind::Int || cur().text != "1") fail("only 'step 1' is supported");
      take();
      expect_ident("until");
      ATerm end = expr();
      expect_ident("do");
      ATerm body = block();
      return ATerm::for_loop(std::move(counter), std::move(start), std::move(end), std::move(body),
                             ATerm::hole(), at);
    }
    if (t.is_ident("while")) {
      take();
      ATerm c = expr();
      expect_ident("do");
      ATerm body = block();
      return ATerm::while_loop(std::move(c), std::move(body), ATerm::hole(), at);
    }
    if (t.is_ident("do")) {
      take();
      ATerm body = block();
      expect_ident("until");
      ATerm c = expr();
      return ATerm::until_loop(std::move(body), std::move(c), ATerm::hole(), at);
    }
    if (t.is_ident("if")) {
      std::size_t save = pos_;
      take();
      ATerm c = expr();
      expect_ident("then");
      if (!cur().is("{")) {
        pos_ = save;
        return std::nullopt;
      }
      ATerm then_block = block();
      expect_ident("else");
      ATerm else_block = block();
      return ATerm::stmt_if(std::move(c), std::move(then_block), std::move(else_block), ATerm::hole(), at);
    }
    if (t.is("<") && tuple_assign_ahead()) {
      take();
      std::vector<std::string> targets;
      do targets.push_back(name());
      while (accept(","));
      expect(">");
      expect("<-");
      ATerm rhs = assignment_rhs();
      return ATerm::tuple_assign(std::move(targets), std::move(rhs), ATerm::hole(), at);
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      if (ahead(1).is("<-")) {
        std::string target = name();
        take();
        ATerm rhs = assignment_rhs();
        return ATerm::assign(std::move(target), std::move(rhs), ATerm::hole(), at);
      }
      if (ahead(1).is("[")) {
        // A[i] <- v  is  A <- d_replace(i, v, A)
        std::size_t save = pos_;
        std::string target = name();
        take();
        ATerm index = aterm();
        expect("]");
        if (!cur().is("<-")) {
          pos_ = save;
          return std::nullopt;
        }
        take();
        ATerm value = assignment_rhs();
        ATerm rhs = ATerm::app("d_replace", {std::move(index), std::move(value), ATerm::var(target, at)}, at);
        return ATerm::assign(std::move(target), std::move(rhs), ATerm::hole(), at);
      }
    }
    return std::nullopt;
  }

  bool tuple_assign_ahead() const {
    std::size_t i = 1;
    while (true) {
      const Token& id = ahead(i);
      if (id.kind != Token::Kind::Ident || is_keyword(id.text)) return false;
      const Token& sep = ahead(i + 1);
      if (sep.is(">")) return ahead(i + 2).is("<-");
      if (!sep.is(",")) return false;
      i += 2;
    }
  }

  ATerm assignment_rhs() {
    SourcePos at = cur().pos;
    ATerm rhs = expr();
    if (rhs.contains(ATerm::Kind::Assign) || rhs.contains(ATerm::Kind::StmtIf) ||
        rhs.contains(ATerm::Kind::For) || rhs.contains(ATerm::Kind::While) ||
        rhs.contains(ATerm::Kind::Until))
      throw ParseError(at, "assignment statements are not allowed on the right-hand side of an assignment");
    return rhs;
  }

  // expr := 'if' expr 'then' aterm 'else' aterm | or_expr
  ATerm expr() {
    if (cur().is_ident("if")) {
      SourcePos at = take().pos;
      ATerm c = expr();
      expect_ident("then");
      if (cur().is("{")) fail("statement conditional used as a value");
      ATerm then_branch = aterm();
      expect_ident("else");
      ATerm else_branch = aterm();
      return ATerm::cond(std::move(c), std::move(then_branch), std::move(else_branch), at);
    }
    return or_expr();
  }

  ATerm binary(std::string op, ATerm lhs, ATerm rhs, SourcePos at) {
    std::vector<ATerm> args;
    args.push_back(std::move(lhs));
    args.push_back(std::move(rhs));
    return ATerm::app(std::move(op), std::move(args), at);
  }

  ATerm or_expr() {
    ATerm lhs = and_expr();
    while (cur().is_ident("or")) {
      SourcePos at = take().pos;
      lhs = binary("or", std::move(lhs), and_expr(), at);
    }
    return lhs;
  }

  ATerm and_expr() {
    ATerm lhs = not_expr();
    while (cur().is_ident("and")) {
      SourcePos at = take().pos;
      lhs = binary("and", std::move(lhs), not_expr(), at);
    }
    return lhs;
  }

  ATerm not_expr() {
    if (cur().is_ident("not")) {
      SourcePos at = take().pos;
      return ATerm::app("not", {not_expr()}, at);
    }
    return cmp_expr();
  }

  ATerm cmp_expr() {
    ATerm lhs = add_expr();
    static const std::pair<const char*, const char*> kCmp[] = {
        {"<", "lt"}, {"<=", "le"}, {">", "gt"}, {">=", "ge"}, {"==", "eq"}};
    for (const auto& [tok, op] : kCmp) {
      if (cur().is(tok)) {
        SourcePos at = take().pos;
        return binary(op, std::move(lhs), add_expr(), at);
      }
    }
    return lhs;
  }

  ATerm add_expr() {
    ATerm lhs = mul_expr();
    while (cur().is("+") || cur().is("-")) {
      const Token& op = take();
      lhs = binary(op.text == "+" ? "sum" : "sub", std::move(lhs), mul_expr(), op.pos);
    }
    return lhs;
  }

  ATerm mul_expr() {
    ATerm lhs = unary();
    while (cur().is("*") || cur().is("/")) {
      const Token& op = take();
      lhs = binary(op.text == "*" ? "mul" : "div", std::move(lhs), unary(), op.pos);
    }
    return lhs;
  }

  ATerm unary() {
    if (cur().is("-")) {
      SourcePos at = take().pos;
      if (cur().kind == Token::Kind::Int) return ATerm::integer(-BigInt(take().text), at);
      return binary("sub", ATerm::integer(0, at), postfix(), at);
    }
    return postfix();
  }

  ATerm postfix() {
    ATerm base = primary();
    while (cur().is("[")) {
      SourcePos at = take().pos;
      ATerm index = aterm();
      expect("]");
      base = ATerm::app("arg", {std::move(index), std::move(base)}, at);
    }
    return base;
  }

  ATerm primary() {
    const Token& t = cur();
    SourcePos at = t.pos;
    if (t.kind == Token::Kind::Int) {
      take();
      return ATerm::integer(BigInt(t.text), at);
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      std::string n = take().text;
      if (accept("(")) {
        std::vector<ATerm> args;
        if (!accept(")")) {
          do args.push_back(aterm());
          while (accept(","));
          expect(")");
        }
        return ATerm::app(std::move(n), std::move(args), at);
      }
      return ATerm::var(std::move(n), at);
    }
    if (t.is("<")) {
      take();
      std::vector<ATerm> elems;
      do elems.push_back(add_expr());
      while (accept(","));
      expect(">");
      return ATerm::app(std::string(kTupleName), std::move(elems), at);
    }
    if (t.is("(")) {
      take();
      ATerm inner = aterm();
      expect(")");
      return inner;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Name resolution: bare identifiers that name constants become applications,
// every application must name a known symbol with a matching arity.
class Resolver {
 public:
  explicit Resolver(const Program& p) : prog_(p), table_(make_symbol_table(p)) {}

  void check_declarations() {
    std::set<std::pair<std::string, std::size_t>> ctors;
    for (const auto& c : prog_.constructors) {
      if (is_reserved_name(c.name) || c.name == kTupleName)
        throw ParseError(c.pos, "'" + c.name + "' is a reserved name");
      if (!ctors.insert({c.name, c.variadic ? SIZE_MAX : c.arity}).second)
        throw ParseError(c.pos, "constructor " + c.name + " declared twice");
    }
    std::set<std::string> procs;
    for (const auto& p : prog_.procedures) {
      if (is_reserved_name(p.name)) throw ParseError(p.pos, "'" + p.name + "' is a reserved name");
      if (!procs.insert(p.name).second) throw ParseError(p.pos, "procedure " + p.name + " defined twice");
      for (const auto& r : p.rules)
        if (r.lhs.args.size() != p.arity)
          throw ParseError(r.pos, "rules of " + p.name + " disagree on arity");
    }
  }

  bool is_constant(const std::string& n) {
    if (table_.is_constant_name(n)) return true;
    for (const auto& p : prog_.procedures)
      if (p.name == n && p.arity == 0) return true;
    return n.size() > 2 && n.compare(0, 2, "c_") == 0 && table_.resolve(n, 0).has_value();
  }

  void check_app(const std::string& n, std::size_t arity, SourcePos at) {
    if (known(n, arity)) return;
    for (std::size_t k = 0; k < 8; ++k)
      if (k != arity && known(n, k))
        throw ParseError(at, "arity mismatch: " + n + " applied to " + std::to_string(arity) + " arguments");
    throw ParseError(at, "unknown symbol " + n + "/" + std::to_string(arity));
  }

  Term term(Term t, SourcePos at) {
    if (t.is_var()) {
      if (is_constant(t.name)) return Term::app(t.name);
      return t;
    }
    if (t.is_app()) {
      check_app(t.name, t.args.size(), at);
      for (auto& a : t.args) a = term(std::move(a), at);
    }
    return t;
  }

  void binder(const std::string& n, SourcePos at) {
    if (is_constant(n)) throw ParseError(at, "constant '" + n + "' used as a variable");
  }

  void aterm(ATerm& a) {
    using K = ATerm::Kind;
    switch (a.kind) {
      case K::Var:
        if (is_constant(a.name)) a = ATerm::app(a.name, {}, a.pos);
        return;
      case K::App:
        check_app(a.name, a.kids.size(), a.pos);
        break;
      case K::Assign:
        for (const auto& t : a.targets) binder(t, a.pos);
        break;
      case K::For:
        binder(a.name, a.pos);
        break;
      default:
        break;
    }
    for (auto& k : a.kids) aterm(k);
  }

  void resolve(Program& p) {
    check_declarations();
    for (auto& proc : p.procedures) {
      for (auto& r : proc.rules) {
        r.lhs = term(std::move(r.lhs), r.pos);
        aterm(r.rhs);
      }
      if (proc.kind == Procedure::Kind::Flat) {
        for (const auto& x : proc.params) binder(x, proc.pos);
        aterm(proc.body);
      }
    }
  }

 private:
  bool known(const std::string& n, std::size_t arity) {
    for (const auto& p : prog_.procedures)
      if (p.name == n && p.arity == arity) return true;
    for (const auto& c : prog_.constructors)
      if (c.name == n && (c.variadic || c.arity == arity)) return true;
    return table_.resolve(n, arity).has_value();
  }

  const Program& prog_;
  SymbolTable table_;
};

}  // namespace

Program parse_program(std::string_view source, std::string file) {
  Parser parser(source);
  Program p = parser.program(std::move(file));
  Resolver(p).resolve(p);
  return p;
}

Term parse_query(std::string_view source, const Program& p) {
  Parser parser(source);
  ATerm a = parser.whole_expr();
  auto t = a.to_term();
  if (!t) throw ParseError(a.pos, "query must be a term");
  Resolver r(p);
  Term resolved = r.term(std::move(*t), a.pos);
  if (!resolved.is_ground()) {
    auto vars = vars_of(resolved);
    throw ParseError(a.pos, "query is not ground (variable '" + *vars.begin() + "')");
  }
  return resolved;
}

ATerm parse_aterm(std::string_view source) {
  Parser parser(source);
  return parser.whole_aterm();
}

}  // namespace rewlang
