#include "imml/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace imml {

struct Formula::Node {
  Op op;
  unsigned atom = 0;
  Formula l, r;
  std::size_t hash = 0;
  std::size_t size = 1;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return (h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2))) * 0x100000001b3ull;
}

}  // namespace

bool is_binary(Op op) { return op == Op::And || op == Op::Or || op == Op::Implies; }

bool is_modal(Op op) { return op >= Op::Box; }

bool op_in_dialect(Op op, Dialect d) {
  if (!is_modal(op)) return true;
  switch (d) {
    case Dialect::Modal:
      return op == Op::Box || op == Op::Dia;
    case Dialect::Nabla:
      return op == Op::Nabla;
    case Dialect::Bimodal:
      return op == Op::BoxN || op == Op::DiaN || op == Op::BoxE || op == Op::DiaE;
  }
  return false;
}

std::string_view dialect_name(Dialect d) {
  switch (d) {
    case Dialect::Modal:
      return "modal";
    case Dialect::Nabla:
      return "nabla";
    case Dialect::Bimodal:
      return "bimodal";
  }
  return "?";
}

Dialect dialect_from_name(std::string_view name) {
  if (name == "modal") return Dialect::Modal;
  if (name == "nabla") return Dialect::Nabla;
  if (name == "bimodal") return Dialect::Bimodal;
  throw std::invalid_argument("unknown dialect '" + std::string(name) + "'");
}

Formula::Formula() : node_(falsum().node_) {}

Formula Formula::atom(unsigned index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->atom = index;
  n->hash = mix(1, index);
  // Children of leaves are never inspected; avoid recursive default construction.
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::falsum() {
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::shared_ptr<Node>(new Node{Op::Falsum, 0, Formula(nullptr), Formula(nullptr), 2, 1});
    return std::shared_ptr<const Node>(n);
  }();
  return Formula(node);
}

Formula Formula::unary(Op op, Formula sub) {
  if (!is_modal(op)) throw std::invalid_argument("Formula::unary needs a modality");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->hash = mix(static_cast<std::size_t>(op) + 16, sub.hash());
  n->size = 1 + sub.size();
  n->l = std::move(sub);
  n->r = Formula(nullptr);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Formula Formula::binary(Op op, Formula l, Formula r) {
  if (!is_binary(op)) throw std::invalid_argument("Formula::binary needs a connective");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->hash = mix(mix(static_cast<std::size_t>(op) + 16, l.hash()), r.hash());
  n->size = 1 + l.size() + r.size();
  n->l = std::move(l);
  n->r = std::move(r);
  return Formula(std::shared_ptr<const Node>(std::move(n)));
}

Op Formula::op() const { return node_->op; }
unsigned Formula::atom_index() const { return node_->atom; }
const Formula& Formula::left() const { return node_->l; }
const Formula& Formula::right() const { return node_->r; }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }

bool Formula::is_top() const {
  return op() == Op::Implies && left().op() == Op::Falsum && right().op() == Op::Falsum;
}

bool Formula::is_negation() const {
  return op() == Op::Implies && right().op() == Op::Falsum && left().op() != Op::Falsum;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Atom:
      return a.atom_index() == b.atom_index();
    case Op::Falsum:
      return true;
    default:
      if (!(a.left() == b.left())) return false;
      return !is_binary(a.op()) || a.right() == b.right();
  }
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.op() != b.op()) return a.op() <=> b.op();
  switch (a.op()) {
    case Op::Atom:
      return a.atom_index() <=> b.atom_index();
    case Op::Falsum:
      return std::strong_ordering::equal;
    default: {
      auto c = a.left() <=> b.left();
      if (c != 0 || !is_binary(a.op())) return c;
      return a.right() <=> b.right();
    }
  }
}

Formula atom(unsigned i) { return Formula::atom(i); }
Formula falsum() { return Formula::falsum(); }
Formula top() { return imp(falsum(), falsum()); }
Formula neg(Formula f) { return imp(std::move(f), falsum()); }
Formula conj(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
Formula box(Formula f) { return Formula::unary(Op::Box, std::move(f)); }
Formula dia(Formula f) { return Formula::unary(Op::Dia, std::move(f)); }
Formula nabla(Formula f) { return Formula::unary(Op::Nabla, std::move(f)); }
Formula box_n(Formula f) { return Formula::unary(Op::BoxN, std::move(f)); }
Formula dia_n(Formula f) { return Formula::unary(Op::DiaN, std::move(f)); }
Formula box_e(Formula f) { return Formula::unary(Op::BoxE, std::move(f)); }
Formula dia_e(Formula f) { return Formula::unary(Op::DiaE, std::move(f)); }

SyntaxError::SyntaxError(std::size_t position, const std::string& what)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + what),
      pos_(position) {}

// ---------------------------------------------------------------------------
// Lexer and recursive-descent parser.

namespace {

enum class Tok { Atom, Falsum, Top, Not, And, Or, Arrow, LParen, RParen, Modal, Comma, Turnstile, End };

struct Token {
  Tok kind;
  std::size_t pos;
  unsigned atom = 0;
  Op modal = Op::Box;
};

struct Utf8Symbol {
  std::string_view bytes;
  Tok kind;
  Op modal;
};

constexpr Utf8Symbol kUtf8[] = {
    {"\xE2\x96\xA1", Tok::Modal, Op::Box},     // □
    {"\xE2\x97\x87", Tok::Modal, Op::Dia},     // ◇
    {"\xE2\x96\xBD", Tok::Modal, Op::Nabla},   // ▽
    {"\xE2\x8A\xA5", Tok::Falsum, Op::Box},    // ⊥
    {"\xE2\x8A\xA4", Tok::Top, Op::Box},       // ⊤
    {"\xC2\xAC", Tok::Not, Op::Box},           // ¬
    {"\xE2\x88\xA7", Tok::And, Op::Box},       // ∧
    {"\xE2\x88\xA8", Tok::Or, Op::Box},        // ∨
    {"\xE2\x86\x92", Tok::Arrow, Op::Box},     // →
    {"\xE2\x8A\xA2", Tok::Turnstile, Op::Box}, // ⊢
};

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    bool matched = false;
    for (const auto& sym : kUtf8) {
      if (starts(sym.bytes)) {
        out.push_back({sym.kind, at, 0, sym.modal});
        i += sym.bytes.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (starts("[]")) {
      out.push_back({Tok::Modal, at, 0, Op::Box});
      i += 2;
    } else if (starts("<>")) {
      out.push_back({Tok::Modal, at, 0, Op::Dia});
      i += 2;
    } else if (starts("[N]")) {
      out.push_back({Tok::Modal, at, 0, Op::BoxN});
      i += 3;
    } else if (starts("<N>")) {
      out.push_back({Tok::Modal, at, 0, Op::DiaN});
      i += 3;
    } else if (starts("[E]")) {
      out.push_back({Tok::Modal, at, 0, Op::BoxE});
      i += 3;
    } else if (starts("<E>")) {
      out.push_back({Tok::Modal, at, 0, Op::DiaE});
      i += 3;
    } else if (starts("->")) {
      out.push_back({Tok::Arrow, at});
      i += 2;
    } else if (starts("|-")) {
      out.push_back({Tok::Turnstile, at});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Not, at});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, at});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::Or, at});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, at});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, at});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, at});
      ++i;
    } else if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      std::string_view word = s.substr(i, j - i);
      if (word == "F") {
        out.push_back({Tok::Falsum, at});
      } else if (word == "T") {
        out.push_back({Tok::Top, at});
      } else if (word == "nabla") {
        out.push_back({Tok::Modal, at, 0, Op::Nabla});
      } else if (word.size() >= 2 && word[0] == 'p' &&
                 std::all_of(word.begin() + 1, word.end(), [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
        unsigned long v = 0;
        for (char d : word.substr(1)) {
          v = v * 10 + static_cast<unsigned long>(d - '0');
          if (v > 1'000'000) throw SyntaxError(at, "atom index too large");
        }
        out.push_back({Tok::Atom, at, static_cast<unsigned>(v)});
      } else {
        throw SyntaxError(at, "unknown identifier '" + std::string(word) + "'");
      }
      i = j;
    } else {
      throw SyntaxError(at, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, Dialect d) : t_(std::move(toks)), d_(d) {}

  Formula formula() { return implication(); }

  const Token& peek() const { return t_[i_]; }
  Token next() { return t_[i_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) throw SyntaxError(peek().pos, std::string("expected ") + what);
    ++i_;
  }

 private:
  Formula implication() {
    Formula l = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return imp(std::move(l), implication());
    }
    return l;
  }
  Formula disjunction() {
    Formula l = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      l = disj(std::move(l), conjunction());
    }
    return l;
  }
  Formula conjunction() {
    Formula l = unary();
    while (peek().kind == Tok::And) {
      next();
      l = conj(std::move(l), unary());
    }
    return l;
  }
  Formula unary() {
    Token t = next();
    switch (t.kind) {
      case Tok::Atom:
        return atom(t.atom);
      case Tok::Falsum:
        return falsum();
      case Tok::Top:
        return top();
      case Tok::Not:
        return neg(unary());
      case Tok::Modal:
        if (!op_in_dialect(t.modal, d_))
          throw SyntaxError(t.pos, "modality not available in the " + std::string(dialect_name(d_)) + " dialect");
        return Formula::unary(t.modal, unary());
      case Tok::LParen: {
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw SyntaxError(t.pos, t.kind == Tok::End ? "unexpected end of input" : "expected a formula");
    }
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  Dialect d_;
};

// Binding strength used by the printer: -> 1, | 2, & 3, prefix 4.
int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Implies:
      return (f.is_top() || f.is_negation()) ? 4 : 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    default:
      return 4;
  }
}

std::string_view prefix(Op op) {
  switch (op) {
    case Op::Box:
      return "[]";
    case Op::Dia:
      return "<>";
    case Op::Nabla:
      return "nabla ";
    case Op::BoxN:
      return "[N]";
    case Op::DiaN:
      return "<N>";
    case Op::BoxE:
      return "[E]";
    case Op::DiaE:
      return "<E>";
    default:
      return "";
  }
}

void print_into(const Formula& f, int ctx, std::string& out) {
  const int p = precedence(f);
  const bool paren = p < ctx;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::Atom:
      out += 'p';
      out += std::to_string(f.atom_index());
      break;
    case Op::Falsum:
      out += 'F';
      break;
    case Op::And:
      print_into(f.left(), 3, out);
      out += " & ";
      print_into(f.right(), 4, out);
      break;
    case Op::Or:
      print_into(f.left(), 2, out);
      out += " | ";
      print_into(f.right(), 3, out);
      break;
    case Op::Implies:
      if (f.is_top()) {
        out += 'T';
      } else if (f.is_negation()) {
        out += '~';
        print_into(f.left(), 4, out);
      } else {
        print_into(f.left(), 2, out);
        out += " -> ";
        print_into(f.right(), 1, out);
      }
      break;
    default:
      out += prefix(f.op());
      print_into(f.sub(), 4, out);
      break;
  }
  if (paren) out += ')';
}

template <class Fn>
Formula rebuild(const Formula& f, Fn&& modal) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Falsum:
      return f;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return Formula::binary(f.op(), rebuild(f.left(), modal), rebuild(f.right(), modal));
    default:
      return modal(f.op(), rebuild(f.sub(), modal));
  }
}

}  // namespace

Formula parse(std::string_view text, Dialect dialect) {
  Parser p(lex(text), dialect);
  Formula f = p.formula();
  if (p.peek().kind != Tok::End) throw SyntaxError(p.peek().pos, "unexpected trailing input");
  return f;
}

std::string print(const Formula& f) {
  std::string out;
  print_into(f, 0, out);
  return out;
}

bool in_dialect(const Formula& f, Dialect d) {
  if (!op_in_dialect(f.op(), d)) return false;
  switch (f.op()) {
    case Op::Atom:
    case Op::Falsum:
      return true;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return in_dialect(f.left(), d) && in_dialect(f.right(), d);
    default:
      return in_dialect(f.sub(), d);
  }
}

Formula substitute(const Formula& schema, const Substitution& sigma) {
  switch (schema.op()) {
    case Op::Atom: {
      auto it = sigma.find(schema.atom_index());
      return it == sigma.end() ? schema : it->second;
    }
    case Op::Falsum:
      return schema;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return Formula::binary(schema.op(), substitute(schema.left(), sigma), substitute(schema.right(), sigma));
    default:
      return Formula::unary(schema.op(), substitute(schema.sub(), sigma));
  }
}

std::size_t modal_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Falsum:
      return 0;
    case Op::And:
    case Op::Or:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case Op::Implies:
      if (f.is_top()) return 0;
      return 1 + std::max(modal_depth(f.left()), modal_depth(f.right()));
    default:
      return 1 + modal_depth(f.sub());
  }
}

std::size_t modality_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Falsum:
      return 0;
    case Op::And:
    case Op::Or:
    case Op::Implies:
      return std::max(modality_depth(f.left()), modality_depth(f.right()));
    default:
      return 1 + modality_depth(f.sub());
  }
}

std::set<unsigned> atoms_of(const Formula& f) {
  std::set<unsigned> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Atom:
        out.insert(g.atom_index());
        break;
      case Op::Falsum:
        break;
      case Op::And:
      case Op::Or:
      case Op::Implies:
        go(g.left());
        go(g.right());
        break;
      default:
        go(g.sub());
    }
  };
  go(f);
  return out;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (seen.count(g)) return;
    if (g.op() != Op::Atom && g.op() != Op::Falsum) {
      go(g.left());
      if (is_binary(g.op())) go(g.right());
    }
    seen.insert(g);
    out.push_back(g);
  };
  go(f);
  return out;
}

Formula embed_box(const Formula& f) {
  return rebuild(f, [](Op op, Formula s) {
    if (op != Op::Nabla) throw std::invalid_argument("embed_box expects a nabla-dialect formula");
    return box(std::move(s));
  });
}

Formula embed_dia(const Formula& f) {
  return rebuild(f, [](Op op, Formula s) {
    if (op != Op::Nabla) throw std::invalid_argument("embed_dia expects a nabla-dialect formula");
    return dia(std::move(s));
  });
}

Formula translate_bimodal(const Formula& f) {
  return rebuild(f, [](Op op, Formula s) {
    if (op == Op::Box) return dia_n(box_e(std::move(s)));
    if (op == Op::Dia) return box_n(dia_e(std::move(s)));
    throw std::invalid_argument("translate_bimodal expects a modal-dialect formula");
  });
}

Consecution::Consecution(std::vector<Formula> context, Formula formula)
    : context_(std::move(context)), formula_(std::move(formula)) {
  std::sort(context_.begin(), context_.end());
  context_.erase(std::unique(context_.begin(), context_.end()), context_.end());
}

bool Consecution::contains(const Formula& f) const {
  return std::binary_search(context_.begin(), context_.end(), f);
}

Consecution parse_consecution(std::string_view text, Dialect dialect) {
  Parser p(lex(text), dialect);
  std::vector<Formula> ctx;
  // Either "ψ", "|- ψ" or "φ1, ..., φn |- ψ".
  if (p.peek().kind == Tok::Turnstile) {
    p.next();
    Formula f = p.formula();
    if (p.peek().kind != Tok::End) throw SyntaxError(p.peek().pos, "unexpected trailing input");
    return Consecution({}, f);
  }
  Formula first = p.formula();
  if (p.peek().kind == Tok::End) return Consecution({}, first);
  ctx.push_back(first);
  while (p.peek().kind == Tok::Comma) {
    p.next();
    ctx.push_back(p.formula());
  }
  p.expect(Tok::Turnstile, "',' or '|-'");
  Formula f = p.formula();
  if (p.peek().kind != Tok::End) throw SyntaxError(p.peek().pos, "unexpected trailing input");
  return Consecution(std::move(ctx), f);
}

std::string print(const Consecution& c) {
  std::string out;
  for (std::size_t i = 0; i < c.context().size(); ++i) {
    if (i) out += ", ";
    out += print(c.context()[i]);
  }
  if (!out.empty()) out += ' ';
  out += "|- ";
  out += print(c.formula());
  return out;
}

}  // namespace imml
