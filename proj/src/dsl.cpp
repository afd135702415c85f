#include "spbw/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spbw/engine.hpp"
#include "spbw/quantum.hpp"

namespace spbw {

ParseError::ParseError(SourcePos p, const std::string& msg)
    : Error("line " + std::to_string(p.line) + ", col " + std::to_string(p.col) + ": " + msg),
      at(p) {}

namespace {

// ------------------------------------------------------------------ lexer

enum class Tok {
  end,
  newline,
  ident,
  integer,
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  plus,
  minus,
  star,
  slash,
  caret,
  equals,
  arrow,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int col = 1;
  int end_col = 1;  // one past the token, same line

  SourcePos pos() const { return {line, col}; }
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end:
      return "end of input";
    case Tok::newline:
      return "end of line";
    case Tok::ident:
    case Tok::integer:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) {
    out.push_back({k, std::move(text), l, c, c});
    out.back().end_col = c + int(out.back().text.size());
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') ++i, ++col;
      continue;
    }
    if (ch == '\n') {
      push(Tok::newline, "\n", line, col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (ident_start(ch)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      push(Tok::ident, src.substr(i, j - i), line, col);
      col += int(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::integer, src.substr(i, j - i), line, col);
      col += int(j - i);
      i = j;
      continue;
    }
    if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      push(Tok::arrow, "->", line, col);
      i += 2;
      col += 2;
      continue;
    }
    Tok k;
    switch (ch) {
      case '{': k = Tok::lbrace; break;
      case '}': k = Tok::rbrace; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '[': k = Tok::lbracket; break;
      case ']': k = Tok::rbracket; break;
      case ',': k = Tok::comma; break;
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '=': k = Tok::equals; break;
      default: {
        std::string shown = std::isprint(static_cast<unsigned char>(ch))
                                ? std::string(1, ch)
                                : "\\x" + std::to_string(int(static_cast<unsigned char>(ch)));
        throw ParseError({line, col}, "unexpected character '" + shown + "'");
      }
    }
    push(k, std::string(1, ch), line, col);
    ++i;
    ++col;
  }
  Token end;
  end.kind = Tok::end;
  end.line = line;
  end.col = col;
  end.end_col = col;
  out.push_back(end);
  return out;
}

// --------------------------------------------------- expression evaluation
//
// Shared grammar for ring elements and algebra elements:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | primary ['^' ['-'] integer]
//   primary:= integer | ident | '(' expr ')'
// '/' multiplies by the inverse on the right; the divisor must be a unit.

class ExprEval {
 public:
  ExprEval(const std::vector<Token>& toks, size_t begin, size_t end)
      : toks_(toks), i_(begin), end_(end) {}

  RingElem ring_expr(const RingPtr& ring) {
    RingElem v = ring_sum(ring);
    if (i_ != end_) throw ParseError(cur().pos(), "unexpected " + describe(cur()));
    return v;
  }

  SkewPoly poly_expr(const PresPtr& p) {
    SkewPoly v = poly_sum(p);
    if (i_ != end_) throw ParseError(cur().pos(), "unexpected " + describe(cur()));
    return v;
  }

 private:
  const std::vector<Token>& toks_;
  size_t i_;
  size_t end_;

  const Token& cur() const { return toks_[i_ < end_ ? i_ : end_]; }
  bool at(Tok k) const { return i_ < end_ && toks_[i_].kind == k; }
  const Token& take() { return toks_[i_++]; }
  void need(Tok k, const char* what) {
    if (!at(k)) throw ParseError(cur().pos(), std::string("expected ") + what);
    ++i_;
  }

  long exponent() {
    bool neg = false;
    if (at(Tok::minus)) {
      neg = true;
      ++i_;
    }
    if (!at(Tok::integer)) throw ParseError(cur().pos(), "expected an integer exponent");
    const Token& t = take();
    long k = 0;
    try {
      k = std::stol(t.text);
    } catch (const std::exception&) {
      throw ParseError(t.pos(), "exponent out of range");
    }
    if (k > 999) throw ParseError(t.pos(), "exponent out of range");
    return neg ? -k : k;
  }

  // ---- ring scope

  RingElem ring_sum(const RingPtr& r) {
    RingElem v = ring_term(r);
    while (at(Tok::plus) || at(Tok::minus)) {
      bool sub = take().kind == Tok::minus;
      RingElem w = ring_term(r);
      v = sub ? v - w : v + w;
    }
    return v;
  }

  RingElem ring_term(const RingPtr& r) {
    RingElem v = ring_factor(r);
    while (at(Tok::star) || at(Tok::slash)) {
      const Token& op = take();
      RingElem w = ring_factor(r);
      if (op.kind == Tok::star) {
        v = v * w;
      } else {
        auto inv = w.try_invert();
        if (!inv) throw ParseError(op.pos(), "division by a non-unit");
        v = v * *inv;
      }
    }
    return v;
  }

  RingElem ring_factor(const RingPtr& r) {
    if (at(Tok::minus)) {
      ++i_;
      return -ring_factor(r);
    }
    RingElem v = ring_primary(r);
    if (at(Tok::caret)) {
      const Token& op = take();
      long k = exponent();
      if (k < 0 && !v.is_unit()) throw ParseError(op.pos(), "negative power of a non-unit");
      v = v.pow(k);
    }
    return v;
  }

  RingElem ring_primary(const RingPtr& r) {
    if (at(Tok::integer)) {
      const Token& t = take();
      return RingElem::from_mpq(r, mpq_class(mpz_class(t.text, 10)));
    }
    if (at(Tok::ident)) {
      const Token& t = take();
      if (!r->has_gen(t.text))
        throw ParseError(t.pos(), "unknown name '" + t.text + "' in " + r->to_string());
      return RingElem::gen(r, t.text);
    }
    if (at(Tok::lparen)) {
      ++i_;
      RingElem v = ring_sum(r);
      need(Tok::rparen, "')'");
      return v;
    }
    throw ParseError(cur().pos(), "expected a value, found " + describe(cur()));
  }

  // ---- algebra scope

  SkewPoly poly_sum(const PresPtr& p) {
    SkewPoly v = poly_term(p);
    while (at(Tok::plus) || at(Tok::minus)) {
      bool sub = take().kind == Tok::minus;
      SkewPoly w = poly_term(p);
      v = sub ? v.sub(w) : v.add(w);
    }
    return v;
  }

  SkewPoly poly_term(const PresPtr& p) {
    SkewPoly v = poly_factor(p);
    while (at(Tok::star) || at(Tok::slash)) {
      const Token& op = take();
      SkewPoly w = poly_factor(p);
      if (op.kind == Tok::star) {
        v = mul(v, w);
      } else {
        auto inv = constant_inverse(w);
        if (!inv) throw ParseError(op.pos(), "division by a non-unit constant");
        v = mul(v, *inv);
      }
    }
    return v;
  }

  static std::optional<SkewPoly> constant_inverse(const SkewPoly& f) {
    if (f.nterms() != 1 || !f.leading().first.is_zero()) return std::nullopt;
    auto inv = coeff_try_invert(f.leading().second);
    if (!inv) return std::nullopt;
    return SkewPoly::constant(f.pres(), *inv);
  }

  SkewPoly poly_factor(const PresPtr& p) {
    if (at(Tok::minus)) {
      ++i_;
      return poly_factor(p).neg();
    }
    // remember bare variables so x^-1 can become a signed monomial
    int bare_var = -1;
    if (at(Tok::ident)) bare_var = p->var_index(cur().text);
    SkewPoly v = poly_primary(p);
    if (at(Tok::caret)) {
      const Token& op = take();
      long k = exponent();
      if (bare_var >= 0) {
        ExpVec a = ev_zero(p->nvars());
        a.e[size_t(bare_var)] = int32_t(k);
        try {
          return SkewPoly::monomial(p, coeff_one(*p), std::move(a));
        } catch (const Error& e) {
          throw ParseError(op.pos(), e.what());
        }
      }
      if (k < 0) {
        auto inv = constant_inverse(v);
        if (!inv)
          throw ParseError(op.pos(),
                           "negative powers apply to invertible variables and unit constants");
        v = *inv;
        k = -k;
      }
      if (k > 64 && v.nterms() > 1) throw ParseError(op.pos(), "exponent out of range");
      SkewPoly acc = SkewPoly::constant(p, coeff_one(*p));
      for (long t = 0; t < k; ++t) acc = mul(acc, v);
      return acc;
    }
    return v;
  }

  SkewPoly poly_primary(const PresPtr& p) {
    if (at(Tok::integer)) {
      const Token& t = take();
      return SkewPoly::from_ring(p, RingElem::from_mpq(p->ring(), mpq_class(mpz_class(t.text, 10))));
    }
    if (at(Tok::ident)) {
      const Token& t = take();
      int vi = p->var_index(t.text);
      if (vi >= 0) return SkewPoly::var(p, size_t(vi));
      if (p->is_nested()) {
        int ii = p->nested_base()->var_index(t.text);
        if (ii >= 0)
          return SkewPoly::constant(
              p, coeff_from_inner(*p, SkewPoly::var(p->nested_base(), size_t(ii))));
      }
      if (p->ring()->has_gen(t.text))
        return SkewPoly::from_ring(p, RingElem::gen(p->ring(), t.text));
      throw ParseError(t.pos(), "unknown name '" + t.text + "'");
    }
    if (at(Tok::lparen)) {
      ++i_;
      SkewPoly v = poly_sum(p);
      need(Tok::rparen, "')'");
      return v;
    }
    throw ParseError(cur().pos(), "expected a value, found " + describe(cur()));
  }
};

// ------------------------------------------------------------------ parser

struct Block {
  SourcePos start;
  std::string name;
  PresPtr base;  // nested coefficient algebra
  RingPtr ring;
  std::vector<std::string> vars;
  std::vector<uint8_t> invertible;
  std::map<std::string, size_t> var_index;
  std::vector<EndoSpec> sigma;
  std::vector<DerivSpec> delta;
  std::vector<char> sigma_stated;  // a sigma table or rel image was given
  std::map<std::pair<int, int>, Coeff> c;
  std::map<std::pair<int, int>, AffineTail> tails;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  BuiltAlgebra document() {
    skip_newlines();
    while (!at(Tok::end)) {
      if (at_keyword("ring")) {
        ring_statement();
      } else if (at_keyword("algebra")) {
        algebra_block();
      } else {
        throw ParseError(cur().pos(), "expected 'ring' or 'algebra', found " + describe(cur()));
      }
      skip_newlines();
    }
    if (!last_) throw ParseError(cur().pos(), "no algebra block in document");
    std::optional<QuantumPresentation> quantum;
    if (!last_->is_nested() && last_->quasi_commutative() && last_->bijective_claimed() &&
        last_->n_invertible() > 0)
      quantum = make_quantum(last_);
    return {last_, std::move(quantum)};
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
  RingPtr ring_;
  std::map<std::string, PresPtr> blocks_;
  PresPtr last_;

  const Token& cur() const { return toks_[i_]; }
  bool at(Tok k) const { return toks_[i_].kind == k; }
  bool at_keyword(const char* kw) const { return at(Tok::ident) && cur().text == kw; }
  const Token& take() { return toks_[i_ + 1 < toks_.size() ? i_++ : i_]; }
  void need(Tok k, const char* what) {
    if (!at(k)) throw ParseError(cur().pos(), std::string("expected ") + what + ", found " +
                                                  describe(cur()));
    take();
  }
  void need_keyword(const char* kw) {
    if (!at_keyword(kw))
      throw ParseError(cur().pos(),
                       std::string("expected '") + kw + "', found " + describe(cur()));
    take();
  }
  void skip_newlines() {
    while (at(Tok::newline)) take();
  }
  void end_of_statement() {
    if (at(Tok::rbrace) || at(Tok::end)) return;
    need(Tok::newline, "end of line");
  }

  // names such as catalog keys may contain '-': merge adjacent ident/integer
  // tokens joined by '-'
  std::string take_name() {
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a name");
    Token t = take();
    std::string name = t.text;
    int edge = t.end_col;
    int line = t.line;
    while (at(Tok::minus) && cur().line == line && cur().col == edge) {
      const Token& dash = toks_[i_];
      const Token& next = toks_[i_ + 1];
      if ((next.kind != Tok::ident && next.kind != Tok::integer) || next.line != line ||
          next.col != dash.end_col)
        break;
      take();
      Token part = take();
      name += "-" + part.text;
      edge = part.end_col;
    }
    return name;
  }

  // ---- ring statements

  void ring_statement() {
    take();  // 'ring'
    ring_ = ring_descriptor();
    end_of_statement();
  }

  RingPtr ring_descriptor() {
    const Token& head = cur();
    if (!at(Tok::ident) || head.text != "QQ")
      throw ParseError(head.pos(), "ring descriptors start with QQ");
    SourcePos at_pos = head.pos();
    take();
    RingPtr r;
    try {
      if (at(Tok::lparen)) {
        take();
        std::vector<std::string> gens;
        gens.push_back(gen_name());
        while (at(Tok::comma)) {
          take();
          gens.push_back(gen_name());
        }
        need(Tok::rparen, "')'");
        r = RingDesc::rational_functions(std::move(gens));
      } else {
        r = RingDesc::rationals();
      }
      while (at(Tok::lbracket)) {
        SourcePos group_pos = cur().pos();
        take();
        std::vector<std::string> gens;
        bool laurent = false;
        bool first = true;
        for (;;) {
          gens.push_back(gen_name());
          bool mark = laurent_mark();
          if (first) {
            laurent = mark;
            first = false;
          } else if (mark != laurent) {
            throw ParseError(group_pos,
                             "mixed polynomial and Laurent generators in one bracket group");
          }
          if (!at(Tok::comma)) break;
          take();
        }
        need(Tok::rbracket, "']'");
        r = laurent ? RingDesc::laurent(std::move(r), std::move(gens))
                    : RingDesc::poly(std::move(r), std::move(gens));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(at_pos, e.what());
    }
    return r;
  }

  std::string gen_name() {
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a generator name");
    return take().text;
  }

  bool laurent_mark() {
    if (!at(Tok::caret)) return false;
    take();
    need(Tok::plus, "'+'");
    need(Tok::minus, "'-'");
    return true;
  }

  // ---- algebra blocks

  void algebra_block() {
    SourcePos start = cur().pos();
    take();  // 'algebra'
    Block b;
    b.start = start;
    b.name = take_name();
    b.ring = ring_;  // an 'over' statement replaces this with the base's ring
    if (blocks_.count(b.name))
      throw ParseError(start, "algebra '" + b.name + "' is already defined");
    need(Tok::lbrace, "'{'");
    skip_newlines();
    while (!at(Tok::rbrace)) {
      if (at(Tok::end)) throw ParseError(cur().pos(), "missing '}'");
      statement(b);
      skip_newlines();
    }
    take();  // '}'
    end_of_statement();

    if (b.vars.empty())
      throw ParseError(start, "algebra '" + b.name + "' declares no variables");
    if (!b.ring) {
      if (!ring_) throw ParseError(start, "no ring declared before algebra '" + b.name + "'");
      b.ring = ring_;
    }
    // a variable with no stated sigma data is fixed by the identity, which
    // carries its own inverse
    for (size_t i = 0; i < b.vars.size(); ++i) {
      if (!b.sigma_stated[i] && !b.sigma[i].inverse_images) b.sigma[i].inverse_images.emplace();
    }
    Presentation::Data d;
    d.name = b.name;
    d.ring = b.ring;
    d.nested_base = b.base;
    d.vars = std::move(b.vars);
    d.invertible = std::move(b.invertible);
    d.sigma = std::move(b.sigma);
    d.delta = std::move(b.delta);
    d.c = std::move(b.c);
    d.tails = std::move(b.tails);
    PresPtr p;
    try {
      p = Presentation::make(std::move(d));
    } catch (const Error& e) {
      throw ParseError(start, e.what());
    }
    blocks_[p->name()] = p;
    last_ = p;
  }

  void statement(Block& b) {
    if (at_keyword("over")) {
      over_statement(b);
    } else if (at_keyword("var")) {
      var_statement(b);
    } else if (at_keyword("sigma")) {
      sigma_statement(b);
    } else if (at_keyword("delta")) {
      delta_statement(b);
    } else if (at_keyword("rel")) {
      rel_statement(b);
    } else {
      throw ParseError(cur().pos(),
                       "expected 'over', 'var', 'sigma', 'delta', or 'rel', found " +
                           describe(cur()));
    }
  }

  void over_statement(Block& b) {
    SourcePos pos = cur().pos();
    take();
    need_keyword("algebra");
    std::string base = take_name();
    if (b.base || !b.vars.empty())
      throw ParseError(pos, "'over' must be the first statement of the block");
    auto it = blocks_.find(base);
    if (it == blocks_.end()) throw ParseError(pos, "unknown algebra '" + base + "'");
    if (it->second->is_nested())
      throw ParseError(pos, "nesting deeper than one level is unsupported");
    b.base = it->second;
    b.ring = b.base->ring();
    end_of_statement();
  }

  void var_statement(Block& b) {
    take();
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a variable name");
    Token t = take();
    if (b.var_index.count(t.text))
      throw ParseError(t.pos(), "variable '" + t.text + "' is already declared");
    bool inv = false;
    if (at_keyword("invertible")) {
      take();
      inv = true;
    }
    b.var_index[t.text] = b.vars.size();
    b.vars.push_back(t.text);
    b.invertible.push_back(inv ? 1 : 0);
    b.sigma.emplace_back();
    b.delta.emplace_back();
    b.sigma_stated.push_back(0);
    end_of_statement();
  }

  size_t block_var(const Block& b, const Token& t) const {
    auto it = b.var_index.find(t.text);
    if (it == b.var_index.end())
      throw ParseError(t.pos(), "unknown variable '" + t.text + "'");
    return it->second;
  }

  enum class KeyKind { ring_gen, inner_var };

  KeyKind key_kind(const Block& b, const Token& t) const {
    if (b.base && b.base->var_index(t.text) >= 0) return KeyKind::inner_var;
    if (b.ring && b.ring->has_gen(t.text)) return KeyKind::ring_gen;
    if (!b.ring) throw ParseError(t.pos(), "no ring declared before this block");
    throw ParseError(t.pos(), "unknown generator '" + t.text + "'");
  }

  // value of a sigma/delta image; boxed unless the key is a tower ring
  // generator under sigma, which must stay scalar
  Coeff image_value(const Block& b, KeyKind kk, bool is_sigma, size_t begin, size_t end) {
    ExprEval ev(toks_, begin, end);
    if (!b.base) return {ev.ring_expr(b.ring), nullptr};
    if (is_sigma && kk == KeyKind::ring_gen) return {ev.ring_expr(b.ring), nullptr};
    return {RingElem(), std::make_shared<const SkewPoly>(ev.poly_expr(b.base))};
  }

  // tokens up to the end of the line (or the closing brace / comma)
  std::pair<size_t, size_t> value_tokens() {
    size_t begin = i_;
    int depth = 0;
    while (!at(Tok::end)) {
      if (at(Tok::newline) && depth == 0) break;
      if (at(Tok::lparen)) ++depth;
      if (at(Tok::rparen)) --depth;
      if (depth == 0 && (at(Tok::rbrace) || at(Tok::comma))) break;
      take();
    }
    if (begin == i_) throw ParseError(cur().pos(), "expected an expression");
    return {begin, i_};
  }

  void sigma_statement(Block& b) {
    take();
    bool inverse = false;
    if (at_keyword("inverse")) {
      take();
      inverse = true;
    }
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a variable name");
    Token vt = take();
    size_t vi = block_var(b, vt);
    if (inverse && b.sigma[vi].inverse_images)
      throw ParseError(vt.pos(), "sigma inverse for '" + vt.text + "' is already given");
    std::map<std::string, Coeff> images = mapping_table(b, /*is_sigma=*/true);
    if (inverse) {
      b.sigma[vi].inverse_images = std::move(images);
    } else {
      for (auto& [key, val] : images) {
        if (!b.sigma[vi].images.emplace(key, std::move(val)).second)
          throw ParseError(vt.pos(), "sigma image of '" + key + "' under '" + vt.text +
                                         "' is already given");
      }
      b.sigma_stated[vi] = 1;
    }
    end_of_statement();
  }

  void delta_statement(Block& b) {
    take();
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a variable name");
    Token vt = take();
    size_t vi = block_var(b, vt);
    std::map<std::string, Coeff> images = mapping_table(b, /*is_sigma=*/false);
    for (auto& [key, val] : images) {
      if (!b.delta[vi].images.emplace(key, std::move(val)).second)
        throw ParseError(vt.pos(), "delta image of '" + key + "' under '" + vt.text +
                                       "' is already given");
    }
    end_of_statement();
  }

  std::map<std::string, Coeff> mapping_table(Block& b, bool is_sigma) {
    std::map<std::string, Coeff> images;
    need(Tok::lbrace, "'{'");
    skip_newlines();
    while (!at(Tok::rbrace)) {
      if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a generator name");
      Token key = take();
      KeyKind kk = key_kind(b, key);
      need(Tok::arrow, "'->'");
      auto [begin, end] = value_tokens();
      Coeff val = image_value(b, kk, is_sigma, begin, end);
      if (!images.emplace(key.text, std::move(val)).second)
        throw ParseError(key.pos(), "duplicate image for '" + key.text + "'");
      if (at(Tok::comma)) take();
      skip_newlines();
    }
    take();  // '}'
    return images;
  }

  // ---- relations
  //
  // rel x_j*x_i = c*x_i*x_j + affine tail        (both sides variables)
  // rel x*g     = sigma*x + delta                (g a ring generator or an
  //                                               inner variable)
  // The right side is read structurally, summand by summand; coefficients
  // stand left of the variables they multiply.

  struct Summand {
    bool negative = false;
    std::vector<std::pair<size_t, size_t>> coeff_chunks;  // token ranges
    std::vector<size_t> vars;                             // block variable indices
    SourcePos pos;
  };

  void rel_statement(Block& b) {
    take();
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a variable name");
    Token lt = take();
    size_t lhs_a = block_var(b, lt);
    need(Tok::star, "'*'");
    if (!at(Tok::ident)) throw ParseError(cur().pos(), "expected a variable or generator name");
    Token rt = take();
    need(Tok::equals, "'='");
    std::vector<Summand> sums = rhs_summands(b);
    end_of_statement();

    if (b.var_index.count(rt.text)) {
      size_t lhs_b = b.var_index.at(rt.text);
      pair_relation(b, lt, lhs_a, rt, lhs_b, sums);
    } else {
      KeyKind kk = key_kind(b, rt);
      action_relation(b, lt, lhs_a, rt, kk, sums);
    }
  }

  std::vector<Summand> rhs_summands(Block& b) {
    std::vector<Summand> out;
    Summand curr;
    curr.pos = cur().pos();
    bool any = false;
    size_t chunk_begin = i_;
    int depth = 0;
    auto close_chunk = [&](size_t at_tok) {
      if (chunk_begin == at_tok) throw ParseError(toks_[at_tok].pos(), "empty factor");
      classify_chunk(b, curr, chunk_begin, at_tok);
      any = true;
    };
    auto close_summand = [&](size_t at_tok) {
      close_chunk(at_tok);
      out.push_back(std::move(curr));
      curr = Summand{};
    };
    // leading sign of the first summand
    if (at(Tok::minus)) {
      curr.negative = true;
      take();
      chunk_begin = i_;
    }
    curr.pos = cur().pos();
    while (!at(Tok::newline) && !at(Tok::end) && !(depth == 0 && at(Tok::rbrace))) {
      Tok k = cur().kind;
      if (k == Tok::lparen) ++depth;
      if (k == Tok::rparen) --depth;
      bool after_caret = i_ > 0 && toks_[i_ - 1].kind == Tok::caret;
      if (depth == 0 && !after_caret && (k == Tok::plus || k == Tok::minus)) {
        close_summand(i_);
        curr.negative = k == Tok::minus;
        take();
        chunk_begin = i_;
        curr.pos = cur().pos();
        continue;
      }
      if (depth == 0 && k == Tok::star) {
        close_chunk(i_);
        take();
        chunk_begin = i_;
        continue;
      }
      take();
    }
    if (!any && chunk_begin == i_)
      throw ParseError(cur().pos(), "expected an expression");
    close_summand(i_);
    return out;
  }

  void classify_chunk(Block& b, Summand& s, size_t begin, size_t end) {
    if (end - begin == 1 && toks_[begin].kind == Tok::ident &&
        b.var_index.count(toks_[begin].text)) {
      s.vars.push_back(b.var_index.at(toks_[begin].text));
      return;
    }
    for (size_t k = begin; k < end; ++k) {
      if (toks_[k].kind == Tok::ident && b.var_index.count(toks_[k].text))
        throw ParseError(toks_[k].pos(),
                         "relation right sides must be affine in the variables ('" +
                             toks_[k].text + "' appears inside a compound factor)");
    }
    if (!s.vars.empty())
      throw ParseError(toks_[begin].pos(), "coefficients stand left of the variables");
    s.coeff_chunks.emplace_back(begin, end);
  }

  Coeff chunk_coeff(const Block& b, const Summand& s) {
    Coeff acc = b.base ? Coeff{RingElem(), std::make_shared<const SkewPoly>(SkewPoly::constant(
                                               b.base, coeff_one(*b.base)))}
                       : Coeff{RingElem::one(b.ring), nullptr};
    for (auto [begin, end] : s.coeff_chunks) {
      ExprEval ev(toks_, begin, end);
      Coeff piece = b.base ? Coeff{RingElem(), std::make_shared<const SkewPoly>(ev.poly_expr(
                                                   b.base))}
                           : Coeff{ev.ring_expr(b.ring), nullptr};
      acc = coeff_mul(acc, piece);
    }
    return s.negative ? coeff_neg(acc) : acc;
  }

  // scalar coefficient for sigma images of tower ring generators
  RingElem chunk_scalar(const Block& b, const Summand& s) {
    RingElem acc = RingElem::one(b.ring);
    for (auto [begin, end] : s.coeff_chunks) {
      ExprEval ev(toks_, begin, end);
      acc = acc * ev.ring_expr(b.ring);
    }
    return s.negative ? -acc : acc;
  }

  void pair_relation(Block& b, const Token& lt, size_t ja, const Token&, size_t ib,
                     const std::vector<Summand>& sums) {
    if (ja <= ib)
      throw ParseError(lt.pos(), "the left side must be '" + b.vars[std::max(ja, ib)] + "*" +
                                     b.vars[std::min(ja, ib)] + "' (later variable first)");
    const size_t i = ib, j = ja;
    std::pair<int, int> key{int(i), int(j)};
    if (b.c.count(key) || b.tails.count(key))
      throw ParseError(lt.pos(), "relation for '" + b.vars[j] + "*" + b.vars[i] +
                                     "' is already given");
    std::optional<Coeff> cpart;
    AffineTail tail;
    tail.constant = b.base ? Coeff{RingElem(), std::make_shared<const SkewPoly>(
                                                   SkewPoly::zero(b.base))}
                           : Coeff{RingElem::zero(b.ring), nullptr};
    for (const auto& s : sums) {
      if (s.vars.size() > 2)
        throw ParseError(s.pos, "relation tails must be affine in the variables");
      if (s.vars.size() == 2) {
        if (s.vars[0] != i || s.vars[1] != j)
          throw ParseError(s.pos, "the quadratic term must be '" + b.vars[i] + "*" + b.vars[j] +
                                      "'");
        if (cpart) throw ParseError(s.pos, "duplicate quadratic term");
        cpart = chunk_coeff(b, s);
      } else if (s.vars.size() == 1) {
        Coeff v = chunk_coeff(b, s);
        auto it = tail.linear.find(int(s.vars[0]));
        if (it == tail.linear.end())
          tail.linear.emplace(int(s.vars[0]), std::move(v));
        else
          it->second = coeff_add(it->second, v);
      } else {
        tail.constant = coeff_add(tail.constant, chunk_coeff(b, s));
      }
    }
    if (!cpart)
      throw ParseError(lt.pos(), "the relation needs a '" + b.vars[i] + "*" + b.vars[j] +
                                     "' term with a nonzero coefficient");
    for (auto it = tail.linear.begin(); it != tail.linear.end();)
      it = coeff_is_zero(it->second) ? tail.linear.erase(it) : std::next(it);
    if (!coeff_is_one(*cpart)) b.c.emplace(key, std::move(*cpart));
    if (!coeff_is_zero(tail.constant) || !tail.linear.empty())
      b.tails.emplace(key, std::move(tail));
  }

  void action_relation(Block& b, const Token& lt, size_t vi, const Token& rt, KeyKind kk,
                       const std::vector<Summand>& sums) {
    std::optional<Coeff> sig;
    std::optional<Coeff> del;
    for (const auto& s : sums) {
      if (s.vars.size() > 1 || (s.vars.size() == 1 && s.vars[0] != vi))
        throw ParseError(s.pos, "the right side of '" + lt.text + "*" + rt.text +
                                    "' must be sigma(" + rt.text + ")*" + lt.text + " + delta(" +
                                    rt.text + ")");
      if (s.vars.size() == 1) {
        Coeff v = kk == KeyKind::ring_gen && b.base ? Coeff{chunk_scalar(b, s), nullptr}
                                                    : chunk_coeff(b, s);
        sig = sig ? coeff_add(*sig, v) : std::move(v);
      } else {
        Coeff v = chunk_coeff(b, s);
        del = del ? coeff_add(*del, v) : std::move(v);
      }
    }
    if (!sig)
      throw ParseError(lt.pos(), "the right side needs a sigma(" + rt.text + ")*" + lt.text +
                                     " term");
    if (!b.sigma[vi].images.emplace(rt.text, std::move(*sig)).second)
      throw ParseError(rt.pos(),
                       "sigma image of '" + rt.text + "' under '" + lt.text + "' is already given");
    b.sigma_stated[vi] = 1;
    if (del && !coeff_is_zero(*del)) {
      if (!b.delta[vi].images.emplace(rt.text, std::move(*del)).second)
        throw ParseError(rt.pos(), "delta image of '" + rt.text + "' under '" + lt.text +
                                       "' is already given");
    }
  }
};

// ----------------------------------------------------------------- emitter

void append_term(std::string& rhs, const Coeff& c, const std::string& mono) {
  std::string s = coeff_to_string(c);
  bool neg = false;
  if (coeff_renders_as_sum(c)) {
    s = "(" + s + ")";
  } else if (!s.empty() && s[0] == '-') {
    neg = true;
    s = s.substr(1);
  }
  if (!mono.empty()) s = s == "1" ? mono : s + "*" + mono;
  if (rhs.empty())
    rhs = (neg ? "-" : "") + s;
  else
    rhs += (neg ? " - " : " + ") + s;
}

void emit_table(std::ostream& out, const std::string& head,
                const std::map<std::string, Coeff>& images) {
  if (images.size() == 1) {
    const auto& [key, val] = *images.begin();
    out << "  " << head << " { " << key << " -> " << coeff_to_string(val) << " }\n";
    return;
  }
  out << "  " << head << " {\n";
  for (const auto& [key, val] : images)
    out << "    " << key << " -> " << coeff_to_string(val) << "\n";
  out << "  }\n";
}

void emit_block(std::ostream& out, const PresPtr& p) {
  out << "algebra " << p->name() << " {\n";
  if (p->is_nested()) out << "  over algebra " << p->nested_base()->name() << "\n";
  const size_t n = p->nvars();
  for (size_t i = 0; i < n; ++i)
    out << "  var " << p->vars()[i] << (p->invertible(i) ? " invertible" : "") << "\n";
  for (size_t i = 0; i < n; ++i) {
    const EndoSpec& s = p->sigma(i);
    if (!s.images.empty()) emit_table(out, "sigma " + p->vars()[i], s.images);
    if (s.inverse_images && !s.inverse_images->empty())
      emit_table(out, "sigma inverse " + p->vars()[i], *s.inverse_images);
    const DerivSpec& d = p->delta(i);
    if (!d.images.empty()) emit_table(out, "delta " + p->vars()[i], d.images);
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const Coeff& c = p->c(i, j);
      const AffineTail* t = p->tail(i, j);
      if (coeff_is_one(c) && !t) continue;
      std::string rhs;
      append_term(rhs, c, p->vars()[i] + "*" + p->vars()[j]);
      if (t) {
        for (const auto& [k, cc] : t->linear) append_term(rhs, cc, p->vars()[size_t(k)]);
        if (!coeff_is_zero(t->constant)) append_term(rhs, t->constant, "");
      }
      out << "  rel " << p->vars()[j] << "*" << p->vars()[i] << " = " << rhs << "\n";
    }
  }
  out << "}\n";
}

}  // namespace

BuiltAlgebra parse_definition(const std::string& text) { return Parser(text).document(); }

std::string emit_definition(const BuiltAlgebra& a) {
  if (!a.pres) throw Error("emit_definition: empty algebra");
  std::vector<PresPtr> chain;
  for (PresPtr q = a.pres; q; q = q->nested_base()) chain.insert(chain.begin(), q);
  std::ostringstream out;
  RingPtr prev;
  for (const PresPtr& b : chain) {
    if (!prev || !same_ring(prev, b->ring()))
      out << "ring " << b->ring()->to_string() << "\n";
    prev = b->ring();
    emit_block(out, b);
  }
  return out.str();
}

SkewPoly parse_expr(const std::string& text, const PresPtr& p) {
  std::vector<Token> toks = lex(text);
  // expressions may span lines freely here
  toks.erase(std::remove_if(toks.begin(), toks.end(),
                            [](const Token& t) { return t.kind == Tok::newline; }),
             toks.end());
  if (toks.size() <= 1) throw ParseError({1, 1}, "expected an expression");
  ExprEval ev(toks, 0, toks.size() - 1);
  return ev.poly_expr(p);
}

}  // namespace spbw
