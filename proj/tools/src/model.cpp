#include "momentkit/cli/model.hpp"

#include <cctype>
#include <set>

namespace momentkit::cli {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message,
                       const std::string &source)
    : Error((source.empty() ? "" : source + ":") + std::to_string(line) + ":" +
            std::to_string(column) + ": " + message),
      line_(line), column_(column), message_(message)
{
}

const PointSpec *ModelFile::find_point(std::string_view name) const
{
  for (const auto &p : points)
    if (p.name == name)
      return &p;
  return nullptr;
}

bool operator==(const ModelFile &a, const ModelFile &b)
{
  return same_ring(a.ring, b.ring) && a.order == b.order && a.brackets == b.brackets &&
         a.alpha == b.alpha && a.conformal == b.conformal && a.points == b.points &&
         a.twist == b.twist;
}

namespace {

const std::set<std::string, std::less<>> kReserved = {
    "ring", "order", "bracket", "alpha", "conformal", "weight",
    "point", "twist", "unit", "t", "s"};

constexpr unsigned kMaxExponent = 1000;

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Int, Punct, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> lex(std::string_view src)
{
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l0 = line, c0 = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), l0, c0});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", l0, c0});
      advance(2);
      continue;
    }
    if (std::string_view(",;{}=():+-*/^").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l0, c0});
      advance(1);
      continue;
    }
    throw ParseError(l0, c0, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Expression values: Laurent polynomials in s over Q[x_1..x_k, t], untruncated.

struct Value {
  std::map<int, Poly> terms; // s-degree -> coefficient over the extended ring

  static Value scalar(const RingPtr &ext, const Rat &c)
  {
    Value v;
    if (c != 0)
      v.terms.emplace(0, Poly::constant(ext, c));
    return v;
  }
  static Value of_poly(Poly p, int sdeg = 0)
  {
    Value v;
    if (!p.is_zero())
      v.terms.emplace(sdeg, std::move(p));
    return v;
  }
  void add(int d, const Poly &p)
  {
    auto [it, inserted] = terms.try_emplace(d, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero())
        terms.erase(it);
    }
  }
  Value operator+(const Value &o) const
  {
    Value r = *this;
    for (const auto &[d, p] : o.terms)
      r.add(d, p);
    return r;
  }
  Value operator-() const
  {
    Value r = *this;
    for (auto &[d, p] : r.terms)
      p = -p;
    return r;
  }
  Value operator*(const Value &o) const
  {
    Value r;
    for (const auto &[d, p] : terms)
      for (const auto &[e, q] : o.terms) {
        Poly prod = p * q;
        if (!prod.is_zero())
          r.add(d + e, prod);
      }
    return r;
  }
  // A bare power of s with coefficient 1.
  std::optional<int> pure_s_degree() const
  {
    if (terms.size() != 1)
      return std::nullopt;
    const auto &[d, p] = *terms.begin();
    if (p.is_constant() && p.constant_term() == 1)
      return d;
    return std::nullopt;
  }
};

struct Located {
  Value value;
  std::size_t line, col;
};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ModelFile parse_model();
  TotElement parse_tot(const RingPtr &ring, unsigned order);

private:
  const Token &peek() const { return toks_[pos_]; }
  const Token &next() { return toks_[pos_++]; }
  bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void fail(const Token &at, const std::string &msg) const
  {
    throw ParseError(at.line, at.col, msg);
  }
  static std::string describe(const Token &t)
  {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  void expect_punct(char c)
  {
    if (!at_punct(c))
      fail(peek(), std::string("expected '") + c + "', found " + describe(peek()));
    ++pos_;
  }
  void expect_word(std::string_view w)
  {
    if (!at_word(w))
      fail(peek(), "expected '" + std::string(w) + "', found " + describe(peek()));
    ++pos_;
  }
  const Token &expect_ident()
  {
    if (peek().kind != Tok::Ident)
      fail(peek(), "expected identifier, found " + describe(peek()));
    return next();
  }
  unsigned expect_uint()
  {
    const Token &t = peek();
    if (t.kind != Tok::Int)
      fail(t, "expected integer, found " + describe(t));
    ++pos_;
    if (t.text.size() > 6 || std::stoul(t.text) > kMaxExponent)
      fail(t, "integer " + t.text + " is out of range");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Rat parse_rational();
  std::size_t generator_index(const Token &t) const;

  Located parse_expr(bool allow_s);
  Value parse_term(bool allow_s);
  Value parse_factor(bool allow_s);
  Value parse_primary(bool allow_s);

  // Converts an expression to a TPoly at `order`; `what` names the
  // construct in diagnostics.
  TPoly to_tpoly(const Located &e, unsigned order, const std::string &what,
                 const std::string &order_message) const;

  void stmt_ring();
  void stmt_order();
  void stmt_bracket();
  void stmt_alpha();
  void stmt_conformal();
  void stmt_point();
  void stmt_twist();
  void require_ring(const Token &at) const
  {
    if (!model_.ring)
      fail(at, "'ring' must be declared before '" + at.text + "'");
  }
  unsigned require_order(const Token &at) const
  {
    if (!model_.order)
      fail(at, "'order' must be declared before '" + at.text + "'");
    return *model_.order;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ModelFile model_;
  RingPtr ext_; // generators + t
};

std::size_t Parser::generator_index(const Token &t) const
{
  auto idx = model_.ring->index_of(t.text);
  if (!idx)
    fail(t, "undeclared generator " + t.text);
  return *idx;
}

Rat Parser::parse_rational()
{
  bool neg = false;
  if (at_punct('-') || at_punct('+')) {
    neg = next().text[0] == '-';
  }
  const Token &num = peek();
  if (num.kind != Tok::Int)
    fail(num, "expected rational number, found " + describe(num));
  ++pos_;
  Rat r(mpz_class(num.text));
  if (at_punct('/')) {
    ++pos_;
    const Token &den = peek();
    if (den.kind != Tok::Int)
      fail(den, "expected denominator, found " + describe(den));
    ++pos_;
    mpz_class d(den.text);
    if (d == 0)
      fail(den, "zero denominator");
    r /= Rat(d);
  }
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

Located Parser::parse_expr(bool allow_s)
{
  const Token &start = peek();
  Located out{Value{}, start.line, start.col};
  bool neg = false;
  if (at_punct('-') || at_punct('+'))
    neg = next().text[0] == '-';
  Value v = parse_term(allow_s);
  out.value = neg ? -v : v;
  while (at_punct('+') || at_punct('-')) {
    const bool minus = next().text[0] == '-';
    Value t = parse_term(allow_s);
    out.value = out.value + (minus ? -t : t);
  }
  return out;
}

Value Parser::parse_term(bool allow_s)
{
  Value v = parse_factor(allow_s);
  while (at_punct('*')) {
    ++pos_;
    v = v * parse_factor(allow_s);
  }
  return v;
}

Value Parser::parse_factor(bool allow_s)
{
  const Token &base_tok = peek();
  Value base = parse_primary(allow_s);
  if (!at_punct('^'))
    return base;
  ++pos_;
  bool neg = false;
  if (at_punct('-')) {
    neg = true;
    ++pos_;
  }
  const unsigned e = expect_uint();
  if (neg) {
    auto d = base.pure_s_degree();
    if (!d)
      fail(base_tok, "negative exponents are only allowed on s");
    Value r;
    r.terms.emplace(-*d * static_cast<int>(e), Poly::constant(ext_, Rat(1)));
    return r;
  }
  Value r = Value::scalar(ext_, Rat(1));
  for (unsigned k = 0; k < e; ++k)
    r = r * base;
  return r;
}

Value Parser::parse_primary(bool allow_s)
{
  const Token &t = peek();
  if (t.kind == Tok::Int)
    return Value::scalar(ext_, parse_rational());
  if (at_punct('(')) {
    ++pos_;
    Located inner = parse_expr(allow_s);
    expect_punct(')');
    return inner.value;
  }
  if (t.kind == Tok::Ident) {
    ++pos_;
    if (t.text == "t")
      return Value::of_poly(Poly::generator(ext_, model_.ring->arity()));
    if (t.text == "s") {
      if (!allow_s)
        fail(t, "s is only allowed in Tot expressions");
      return Value::of_poly(Poly::constant(ext_, Rat(1)), 1);
    }
    if (kReserved.count(t.text))
      fail(t, "unexpected keyword '" + t.text + "' in expression");
    return Value::of_poly(Poly::generator(ext_, generator_index(t)));
  }
  fail(t, "expected expression, found " + describe(t));
}

TPoly split_t(const Poly &p, const RingPtr &ring, unsigned order)
{
  const std::size_t k = ring->arity();
  std::vector<Poly> cs(order + 1, Poly(ring));
  for (const auto &[e, c] : p.terms()) {
    Exponents x(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k));
    cs.at(e[k]) += Poly::monomial(ring, x, c);
  }
  return TPoly::from_coefficients(std::move(cs));
}

unsigned t_degree(const Poly &p, std::size_t t_index)
{
  unsigned d = 0;
  for (const auto &[e, c] : p.terms())
    d = std::max<unsigned>(d, e[t_index]);
  return d;
}

TPoly Parser::to_tpoly(const Located &e, unsigned order, const std::string &what,
                       const std::string &order_message) const
{
  if (e.value.terms.empty())
    return TPoly(model_.ring, order);
  if (e.value.terms.size() != 1 || e.value.terms.begin()->first != 0)
    throw ParseError(e.line, e.col, "s is only allowed in Tot expressions");
  const Poly &p = e.value.terms.begin()->second;
  const unsigned td = t_degree(p, model_.ring->arity());
  if (td > order)
    throw ParseError(e.line, e.col,
                     order_message + " (" + what + " has t-order " + std::to_string(td) + ")");
  return split_t(p, model_.ring, order);
}

// ---------------------------------------------------------------------------
// Statements

void Parser::stmt_ring()
{
  const Token &kw = next();
  if (model_.ring)
    fail(kw, "ring declared twice");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (;;) {
    const Token &id = expect_ident();
    if (kReserved.count(id.text))
      fail(id, "'" + id.text + "' is reserved and cannot name a generator");
    if (!seen.insert(id.text).second)
      fail(id, "generator " + id.text + " declared twice");
    names.push_back(id.text);
    if (!at_punct(','))
      break;
    ++pos_;
  }
  expect_punct(';');
  model_.ring = make_ring(names);
  names.push_back("t");
  ext_ = make_ring(std::move(names));
}

void Parser::stmt_order()
{
  const Token &kw = next();
  if (model_.order)
    fail(kw, "order declared twice");
  if (!model_.alpha.empty() || !model_.brackets.empty())
    fail(kw, "'order' must precede bracket and alpha declarations");
  model_.order = expect_uint();
  expect_punct(';');
}

void Parser::stmt_bracket()
{
  const Token &kw = next();
  require_ring(kw);
  const unsigned n = require_order(kw);
  expect_punct('{');
  const Token &a = expect_ident();
  expect_punct(',');
  const Token &b = expect_ident();
  expect_punct('}');
  std::size_t i = generator_index(a), j = generator_index(b);
  const std::string label = "bracket {" + a.text + "," + b.text + "}";
  if (i == j)
    fail(a, label + " is zero by antisymmetry and cannot be declared");
  expect_punct('=');
  Located e = parse_expr(false);
  expect_punct(';');
  TPoly v = to_tpoly(e, n, label, "bracket order exceeds n = " + std::to_string(n));
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  if (!model_.brackets.emplace(std::make_pair(i, j), std::move(v)).second)
    fail(a, label + " declared twice");
}

void Parser::stmt_alpha()
{
  const Token &kw = next();
  require_ring(kw);
  const unsigned n = require_order(kw);
  const Token &g = expect_ident();
  const std::size_t i = generator_index(g);
  expect_punct('=');
  Located e = parse_expr(false);
  expect_punct(';');
  if (n == 0)
    throw ParseError(e.line, e.col, "alpha order exceeds n-1 (order 0 has no line module)");
  TPoly v = to_tpoly(e, n - 1, "alpha " + g.text,
                     "alpha order exceeds n-1 = " + std::to_string(n - 1));
  if (!model_.alpha.emplace(i, std::move(v)).second)
    fail(g, "alpha " + g.text + " declared twice");
}

void Parser::stmt_conformal()
{
  const Token &kw = next();
  require_ring(kw);
  if (model_.conformal)
    fail(kw, "conformal field declared twice");
  ConformalSpec spec;
  const Token &name = expect_ident();
  if (kReserved.count(name.text))
    fail(name, "'" + name.text + "' is reserved");
  spec.name = name.text;
  expect_punct(':');
  do {
    if (at_punct(','))
      ++pos_;
    const Token &g = expect_ident();
    const std::size_t i = generator_index(g);
    if (peek().kind != Tok::Arrow)
      fail(peek(), "expected '->', found " + describe(peek()));
    ++pos_;
    Located e = parse_expr(false);
    TPoly v = to_tpoly(e, 0, name.text + "(" + g.text + ")",
                       "conformal field values live on the reduction; t is not allowed");
    if (!spec.values.emplace(i, std::move(v)).second)
      fail(g, "value of " + name.text + " on " + g.text + " given twice");
  } while (!at_punct(';'));
  expect_punct(';');
  expect_word("weight");
  spec.weight = parse_rational();
  expect_punct(';');
  model_.conformal = std::move(spec);
}

void Parser::stmt_point()
{
  const Token &kw = next();
  require_ring(kw);
  const Token &name = expect_ident();
  if (kReserved.count(name.text))
    fail(name, "'" + name.text + "' is reserved");
  if (model_.find_point(name.text))
    fail(name, "point " + name.text + " declared twice");
  expect_punct('=');
  expect_punct('(');
  PointSpec pt;
  pt.name = name.text;
  std::vector<std::optional<Rat>> coords(model_.ring->arity());
  do {
    if (at_punct(','))
      ++pos_;
    const Token &id = expect_ident();
    expect_punct('=');
    Rat v = parse_rational();
    std::optional<Rat> *slot = nullptr;
    if (id.text == "s")
      slot = &pt.s;
    else if (id.text == "t")
      slot = &pt.t;
    else
      slot = &coords[generator_index(id)];
    if (*slot)
      fail(id, "coordinate " + id.text + " given twice");
    *slot = v;
  } while (!at_punct(')'));
  const Token &close = next();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i])
      fail(close, "point " + name.text + " does not assign generator " + model_.ring->name(i));
    pt.coords.push_back(*coords[i]);
  }
  expect_punct(';');
  model_.points.push_back(std::move(pt));
}

void Parser::stmt_twist()
{
  const Token &kw = next();
  require_ring(kw);
  const unsigned n = require_order(kw);
  if (n == 0)
    fail(kw, "twists need order >= 1");
  if (model_.twist)
    fail(kw, "twist declared twice");
  TwistSpec spec;
  expect_punct(':');
  while (!at_punct(';') && !at_word("unit")) {
    if (at_punct(','))
      ++pos_;
    const Token &g = expect_ident();
    const std::size_t i = generator_index(g);
    if (peek().kind != Tok::Arrow)
      fail(peek(), "expected '->', found " + describe(peek()));
    ++pos_;
    Located e = parse_expr(false);
    TPoly v = to_tpoly(e, n, "twist of " + g.text, "twist order exceeds n = " + std::to_string(n));
    if (!spec.phi.emplace(i, std::move(v)).second)
      fail(g, "twist of " + g.text + " given twice");
  }
  if (at_word("unit")) {
    ++pos_;
    Located e = parse_expr(false);
    spec.unit = to_tpoly(e, n - 1, "unit", "unit order exceeds n-1 = " + std::to_string(n - 1));
  }
  expect_punct(';');
  model_.twist = std::move(spec);
}

ModelFile Parser::parse_model()
{
  while (peek().kind != Tok::End) {
    const Token &t = peek();
    if (t.kind != Tok::Ident)
      fail(t, "expected a statement, found " + describe(t));
    if (t.text == "ring")
      stmt_ring();
    else if (t.text == "order")
      stmt_order();
    else if (t.text == "bracket")
      stmt_bracket();
    else if (t.text == "alpha")
      stmt_alpha();
    else if (t.text == "conformal")
      stmt_conformal();
    else if (t.text == "point")
      stmt_point();
    else if (t.text == "twist")
      stmt_twist();
    else
      fail(t, "unknown statement '" + t.text + "'");
  }
  if (!model_.ring)
    fail(peek(), "missing 'ring' declaration");
  return std::move(model_);
}

TotElement Parser::parse_tot(const RingPtr &ring, unsigned order)
{
  model_.ring = ring;
  std::vector<std::string> names = ring->names();
  names.push_back("t");
  ext_ = make_ring(std::move(names));
  Located e = parse_expr(true);
  if (peek().kind != Tok::End)
    fail(peek(), "unexpected " + describe(peek()) + " after expression");
  TotElement out(ring, order);
  for (const auto &[d, p] : e.value.terms) {
    const unsigned td = t_degree(p, ring->arity());
    if (td > order)
      throw ParseError(e.line, e.col,
                       "t-order " + std::to_string(td) + " exceeds n = " + std::to_string(order));
    out += TotElement::homogeneous(split_t(p, ring, order), d);
  }
  return out;
}

std::string render_generator_list(const Ring &r)
{
  std::string out;
  for (std::size_t i = 0; i < r.arity(); ++i)
    out += (i ? ", " : "") + r.name(i);
  return out;
}

} // namespace

ModelFile parse_model(std::string_view text)
{
  return Parser(lex(text)).parse_model();
}

TotElement parse_tot_expression(std::string_view text, const RingPtr &ring, unsigned order)
{
  return Parser(lex(text)).parse_tot(ring, order);
}

std::string render_model(const ModelFile &m)
{
  std::string out;
  if (!m.ring)
    return out;
  const Ring &r = *m.ring;
  out += "ring " + render_generator_list(r) + ";\n";
  if (m.order)
    out += "order " + std::to_string(*m.order) + ";\n";
  for (const auto &[ij, v] : m.brackets)
    out += "bracket {" + r.name(ij.first) + "," + r.name(ij.second) + "} = " + v.to_string() +
           ";\n";
  for (const auto &[i, v] : m.alpha)
    out += "alpha " + r.name(i) + " = " + v.to_string() + ";\n";
  if (m.conformal) {
    out += "conformal " + m.conformal->name + ":";
    bool first = true;
    for (const auto &[i, v] : m.conformal->values) {
      out += std::string(first ? " " : ", ") + r.name(i) + " -> " + v.to_string();
      first = false;
    }
    out += ";\nweight " + to_string(m.conformal->weight) + ";\n";
  }
  for (const auto &p : m.points) {
    out += "point " + p.name + " = (";
    for (std::size_t i = 0; i < p.coords.size(); ++i)
      out += (i ? ", " : "") + r.name(i) + " = " + to_string(p.coords[i]);
    if (p.s)
      out += ", s = " + to_string(*p.s);
    if (p.t)
      out += ", t = " + to_string(*p.t);
    out += ");\n";
  }
  if (m.twist) {
    out += "twist:";
    bool first = true;
    for (const auto &[i, v] : m.twist->phi) {
      out += std::string(first ? " " : ", ") + r.name(i) + " -> " + v.to_string();
      first = false;
    }
    if (m.twist->unit)
      out += " unit " + m.twist->unit->to_string();
    out += ";\n";
  }
  return out;
}

unsigned require_order(const ModelFile &m)
{
  if (!m.order)
    throw Error("model has no 'order' declaration");
  return *m.order;
}

PoissonStructure structure_of(const ModelFile &m)
{
  const unsigned n = require_order(m);
  PoissonStructure::Entries entries;
  for (const auto &[ij, v] : m.brackets)
    entries.emplace(ij, v);
  return PoissonStructure(m.ring, n, entries);
}

MomentSystem system_of(const ModelFile &m)
{
  const unsigned n = require_order(m);
  if (n == 0)
    throw Error("a moment system needs order >= 1");
  std::vector<TPoly> alpha(m.ring->arity(), TPoly(m.ring, n - 1));
  for (const auto &[i, v] : m.alpha)
    alpha[i] = v;
  return MomentSystem(structure_of(m), std::move(alpha));
}

GaugeTwist gauge_of(const ModelFile &m)
{
  const unsigned n = require_order(m);
  if (!m.twist)
    throw Error("model has no 'twist' declaration");
  GaugeTwist g = GaugeTwist::identity(m.ring, n);
  for (const auto &[i, v] : m.twist->phi)
    g.phi[i] = v;
  if (m.twist->unit)
    g.unit = *m.twist->unit;
  return g;
}

ConformalField conformal_of(const ModelFile &m)
{
  if (!m.conformal)
    throw Error("model has no 'conformal' declaration");
  std::vector<TPoly> values(m.ring->arity(), TPoly(m.ring, 0));
  for (const auto &[i, v] : m.conformal->values)
    values[i] = v;
  return {Derivation(std::move(values), std::nullopt, 0), m.conformal->weight};
}

ModelFile model_of(const MomentSystem &ms)
{
  ModelFile m;
  m.ring = ms.ring();
  m.order = ms.order();
  const auto k = ms.ring()->arity();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      TPoly v = ms.structure().entry(i, j);
      if (!v.is_zero())
        m.brackets.emplace(std::make_pair(i, j), std::move(v));
    }
  for (std::size_t i = 0; i < k; ++i)
    if (!ms.line().alpha(i).is_zero())
      m.alpha.emplace(i, ms.line().alpha(i));
  return m;
}

} // namespace momentkit::cli
