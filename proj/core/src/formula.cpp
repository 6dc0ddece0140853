#include "mg/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "mg/errors.hpp"
#include "mg/word.hpp"

namespace mg {

Term Term::var(std::string name) {
  Term t(Kind::variable);
  t.var_ = std::move(name);
  return t;
}

Term Term::product(std::vector<Term> factors) {
  if (factors.size() < 2) throw PreconditionError("product needs at least two factors");
  Term t(Kind::product);
  t.args_ = std::move(factors);
  return t;
}

Term Term::inverse_of(Term inner) {
  Term t(Kind::inverse);
  t.args_.push_back(std::move(inner));
  return t;
}

bool Term::operator==(const Term& o) const {
  return kind_ == o.kind_ && var_ == o.var_ && args_ == o.args_;
}

Formula Formula::equals(Term lhs, Term rhs) {
  Formula f(Kind::equals);
  f.terms_.push_back(std::move(lhs));
  f.terms_.push_back(std::move(rhs));
  return f;
}

Formula Formula::negation(Formula inner) {
  Formula f(Kind::negation);
  f.children_.push_back(std::move(inner));
  return f;
}

Formula Formula::conjunction(std::vector<Formula> children) {
  if (children.empty()) throw PreconditionError("empty conjunction");
  Formula f(Kind::conjunction);
  f.children_ = std::move(children);
  return f;
}

Formula Formula::disjunction(std::vector<Formula> children) {
  if (children.empty()) throw PreconditionError("empty disjunction");
  Formula f(Kind::disjunction);
  f.children_ = std::move(children);
  return f;
}

Formula Formula::forall(std::string var, Formula body) {
  Formula f(Kind::forall);
  f.var_ = std::move(var);
  f.children_.push_back(std::move(body));
  return f;
}

Formula Formula::exists(std::string var, Formula body) {
  Formula f(Kind::exists);
  f.var_ = std::move(var);
  f.children_.push_back(std::move(body));
  return f;
}

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::one:
      return;
    case Term::Kind::variable:
      out.insert(t.var_name());
      return;
    case Term::Kind::product:
    case Term::Kind::inverse:
      for (const Term& a : t.args()) collect_term_vars(a, out);
      return;
  }
}

void collect_free(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::equals: {
      std::set<std::string> vars;
      collect_term_vars(f.lhs(), vars);
      collect_term_vars(f.rhs(), vars);
      for (const auto& v : vars)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::negation:
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction:
      for (const Formula& c : f.children()) collect_free(c, bound, out);
      return;
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      bound.insert(f.quantified_var());
      collect_free(f.children()[0], std::move(bound), out);
      return;
    }
  }
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
  std::set<std::string> out;
  collect_free(*this, {}, out);
  return out;
}

std::size_t Formula::atom_count() const {
  if (kind_ == Kind::equals) return 1;
  std::size_t n = 0;
  for (const Formula& c : children_) n += c.atom_count();
  return n;
}

std::uint32_t eval_term(const FiniteGroupTable& g, const Term& t, const Environment& env) {
  switch (t.kind()) {
    case Term::Kind::one:
      return 0;
    case Term::Kind::variable: {
      const auto it = env.find(t.var_name());
      if (it == env.end()) throw PreconditionError("unbound variable '" + t.var_name() + "'");
      return it->second;
    }
    case Term::Kind::product: {
      std::uint32_t e = 0;
      for (const Term& a : t.args()) e = g.mul(e, eval_term(g, a, env));
      return e;
    }
    case Term::Kind::inverse:
      return g.inv(eval_term(g, t.args()[0], env));
  }
  throw Error("unreachable");
}

namespace {

struct EvalContext {
  const FiniteGroupTable& g;
  std::uint64_t budget;
  std::uint64_t used = 0;

  void tick() {
    if (++used > budget) throw BudgetExceeded(budget);
  }
};

bool eval_node(EvalContext& ctx, const Formula& f, Environment& env) {
  ctx.tick();
  switch (f.kind()) {
    case Formula::Kind::equals:
      return eval_term(ctx.g, f.lhs(), env) == eval_term(ctx.g, f.rhs(), env);
    case Formula::Kind::negation:
      return !eval_node(ctx, f.children()[0], env);
    case Formula::Kind::conjunction:
      for (const Formula& c : f.children())
        if (!eval_node(ctx, c, env)) return false;
      return true;
    case Formula::Kind::disjunction:
      for (const Formula& c : f.children())
        if (eval_node(ctx, c, env)) return true;
      return false;
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      const bool universal = f.kind() == Formula::Kind::forall;
      const auto var = f.quantified_var();
      const auto saved = env.find(var) != env.end() ? std::optional(env[var]) : std::nullopt;
      bool result = universal;
      for (std::uint32_t e = 0; e < ctx.g.order(); ++e) {
        env[var] = e;
        const bool v = eval_node(ctx, f.children()[0], env);
        if (universal && !v) {
          result = false;
          break;
        }
        if (!universal && v) {
          result = true;
          break;
        }
      }
      if (saved)
        env[var] = *saved;
      else
        env.erase(var);
      return result;
    }
  }
  throw Error("unreachable");
}

}  // namespace

bool eval_formula(const FiniteGroupTable& g, const Formula& f, const Environment& env,
                  std::uint64_t budget) {
  const auto free = f.free_variables();
  for (const auto& v : free)
    if (!env.count(v)) throw PreconditionError("free variable '" + v + "' not assigned");
  EvalContext ctx{g, budget};
  Environment working = env;
  return eval_node(ctx, f, working);
}

namespace {

Term var_power(const std::string& name, std::uint32_t p) {
  std::vector<Term> factors(p, Term::var(name));
  return p == 1 ? factors[0] : Term::product(std::move(factors));
}

Formula make_psi(std::uint32_t p) {
  std::vector<Formula> order_atoms;
  for (std::uint32_t i = 1; i <= p; ++i)
    order_atoms.push_back(Formula::equals(var_power("x" + std::to_string(i), p), Term::one()));
  std::vector<Formula> commute_atoms;
  for (std::uint32_t i = 1; i <= p; ++i) {
    for (std::uint32_t j = 1; j <= p; ++j) {
      const Term xi = Term::var("x" + std::to_string(i));
      const Term xj = Term::var("x" + std::to_string(j));
      commute_atoms.push_back(
          Formula::equals(Term::product({xi, xj}), Term::product({xj, xi})));
    }
  }
  return Formula::conjunction({Formula::conjunction(std::move(order_atoms)),
                               Formula::conjunction(std::move(commute_atoms))});
}

Formula make_phi(std::uint32_t p) {
  // forall g: each x_i g equals g x_j for some j.
  std::vector<Formula> permuted;
  for (std::uint32_t i = 1; i <= p; ++i) {
    std::vector<Formula> options;
    for (std::uint32_t j = 1; j <= p; ++j) {
      options.push_back(Formula::equals(
          Term::product({Term::var("x" + std::to_string(i)), Term::var("g")}),
          Term::product({Term::var("g"), Term::var("x" + std::to_string(j))})));
    }
    permuted.push_back(Formula::disjunction(std::move(options)));
  }
  Formula normality = Formula::forall("g", Formula::conjunction(std::move(permuted)));

  Formula noncentral = Formula::exists(
      "h", Formula::negation(Formula::equals(Term::product({Term::var("x1"), Term::var("h")}),
                                             Term::product({Term::var("h"), Term::var("x1")}))));

  Formula body =
      Formula::conjunction({make_psi(p), std::move(normality), std::move(noncentral)});
  for (std::uint32_t i = p; i >= 1; --i)
    body = Formula::exists("x" + std::to_string(i), std::move(body));
  return body;
}

Formula make_zeta() {
  const Term a = Term::var("a");
  const Term b = Term::var("b");
  const Term t = Term::var("t");
  Formula body = Formula::disjunction(
      {Formula::equals(a, Term::one()), Formula::equals(b, Term::one()),
       Formula::equals(Term::product({Term::inverse_of(t), a, t}), b)});
  return Formula::forall("a", Formula::forall("b", Formula::exists("t", std::move(body))));
}

}  // namespace

Formula make_named_formula(const std::string& name) {
  const std::size_t colon = name.find(':');
  const std::string head = name.substr(0, colon == std::string::npos ? name.size() : colon);
  if (head == "zeta") {
    if (colon != std::string::npos) throw PreconditionError("zeta takes no parameter");
    return make_zeta();
  }
  if (head == "psi" || head == "phi") {
    if (colon == std::string::npos)
      throw PreconditionError("'" + head + "' needs a parameter, e.g. " + head + ":3");
    const std::string param = name.substr(colon + 1);
    if (param.empty() || param.find_first_not_of("0123456789") != std::string::npos)
      throw PreconditionError("malformed formula name '" + name + "'");
    const auto p = std::stoul(param);
    if (p < 1) throw PreconditionError("parameter must be at least 1");
    return head == "psi" ? make_psi(static_cast<std::uint32_t>(p))
                         : make_phi(static_cast<std::uint32_t>(p));
  }
  throw PreconditionError("unknown formula name '" + name + "'");
}

namespace {

struct Sexp {
  std::string atom;          // nonempty for leaves
  std::vector<Sexp> children;
  bool is_atom() const { return !atom.empty(); }
};

class SexpParser {
 public:
  explicit SexpParser(std::string_view text) : text_(text) {}

  Sexp parse() {
    Sexp e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input after formula", 0, pos_ + 1);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Sexp parse_expr() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of formula", 0, pos_ + 1);
    if (text_[pos_] == '(') {
      ++pos_;
      Sexp e;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unbalanced '('", 0, pos_ + 1);
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.children.push_back(parse_expr());
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    if (pos_ == start) throw ParseError("empty token", 0, pos_ + 1);
    Sexp e;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Term sexp_to_term(const Sexp& e) {
  if (e.is_atom()) {
    if (e.atom == "e") return Term::one();
    if (!Alphabet::valid_name(e.atom) || e.atom == "e")
      throw ParseError("invalid variable name '" + e.atom + "'");
    return Term::var(e.atom);
  }
  if (e.children.empty() || !e.children[0].is_atom())
    throw ParseError("malformed term");
  const std::string& op = e.children[0].atom;
  if (op == "*") {
    if (e.children.size() < 3) throw ParseError("(*) needs at least two factors");
    std::vector<Term> factors;
    for (std::size_t i = 1; i < e.children.size(); ++i)
      factors.push_back(sexp_to_term(e.children[i]));
    return Term::product(std::move(factors));
  }
  if (op == "inv") {
    if (e.children.size() != 2) throw ParseError("(inv) takes one argument");
    return Term::inverse_of(sexp_to_term(e.children[1]));
  }
  throw ParseError("unknown term operator '" + op + "'");
}

Formula sexp_to_formula(const Sexp& e) {
  if (e.is_atom()) throw ParseError("expected formula, found atom '" + e.atom + "'");
  if (e.children.empty() || !e.children[0].is_atom()) throw ParseError("malformed formula");
  const std::string& op = e.children[0].atom;
  if (op == "=") {
    if (e.children.size() != 3) throw ParseError("(=) takes two terms");
    return Formula::equals(sexp_to_term(e.children[1]), sexp_to_term(e.children[2]));
  }
  if (op == "not") {
    if (e.children.size() != 2) throw ParseError("(not) takes one formula");
    return Formula::negation(sexp_to_formula(e.children[1]));
  }
  if (op == "and" || op == "or") {
    if (e.children.size() < 2) throw ParseError("(" + op + ") needs at least one child");
    std::vector<Formula> children;
    for (std::size_t i = 1; i < e.children.size(); ++i)
      children.push_back(sexp_to_formula(e.children[i]));
    return op == "and" ? Formula::conjunction(std::move(children))
                       : Formula::disjunction(std::move(children));
  }
  if (op == "forall" || op == "exists") {
    if (e.children.size() != 3 || !e.children[1].is_atom())
      throw ParseError("(" + op + ") takes a variable and a formula");
    const std::string& var = e.children[1].atom;
    if (!Alphabet::valid_name(var) || var == "e")
      throw ParseError("invalid variable name '" + var + "'");
    Formula body = sexp_to_formula(e.children[2]);
    return op == "forall" ? Formula::forall(var, std::move(body))
                          : Formula::exists(var, std::move(body));
  }
  throw ParseError("unknown formula operator '" + op + "'");
}

}  // namespace

Formula parse_formula(std::string_view text) {
  return sexp_to_formula(SexpParser(text).parse());
}

std::string print_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::one:
      return "e";
    case Term::Kind::variable:
      return t.var_name();
    case Term::Kind::product: {
      std::string out = "(*";
      for (const Term& a : t.args()) out += " " + print_term(a);
      return out + ")";
    }
    case Term::Kind::inverse:
      return "(inv " + print_term(t.args()[0]) + ")";
  }
  throw Error("unreachable");
}

std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::equals:
      return "(= " + print_term(f.lhs()) + " " + print_term(f.rhs()) + ")";
    case Formula::Kind::negation:
      return "(not " + print_formula(f.children()[0]) + ")";
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      std::string out = f.kind() == Formula::Kind::conjunction ? "(and" : "(or";
      for (const Formula& c : f.children()) out += " " + print_formula(c);
      return out + ")";
    }
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      const char* op = f.kind() == Formula::Kind::forall ? "forall" : "exists";
      return "(" + std::string(op) + " " + f.quantified_var() + " " +
             print_formula(f.children()[0]) + ")";
    }
  }
  throw Error("unreachable");
}

namespace {

std::uint32_t table_power(const FiniteGroupTable& g, std::uint32_t x, std::uint32_t n) {
  std::uint32_t e = 0;
  for (std::uint32_t i = 0; i < n; ++i) e = g.mul(e, x);
  return e;
}

bool tuple_matrix_holds(const FiniteGroupTable& g, const std::vector<std::uint32_t>& xs) {
  const auto p = static_cast<std::uint32_t>(xs.size());
  for (const auto x : xs)
    if (table_power(g, x, p) != 0) return false;
  for (const auto x : xs)
    for (const auto y : xs)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  for (std::uint32_t e = 0; e < g.order(); ++e) {
    for (const auto x : xs) {
      bool ok = false;
      for (const auto y : xs) {
        if (g.mul(x, e) == g.mul(e, y)) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
  }
  for (std::uint32_t h = 0; h < g.order(); ++h)
    if (g.mul(xs[0], h) != g.mul(h, xs[0])) return true;
  return false;
}

}  // namespace

std::vector<std::uint32_t> find_phi_witness(const FiniteGroupTable& g, std::uint32_t p,
                                            std::uint64_t budget) {
  if (p < 1) throw PreconditionError("parameter must be at least 1");
  std::vector<std::uint32_t> xs(p, 0);
  std::uint64_t used = 0;
  while (true) {
    if (++used > budget) throw BudgetExceeded(budget);
    if (tuple_matrix_holds(g, xs)) return xs;
    std::size_t i = p;
    while (i > 0) {
      if (++xs[i - 1] < g.order()) break;
      xs[i - 1] = 0;
      --i;
    }
    if (i == 0) return {};
  }
}

PhiWitnessCheck verify_phi_witness(const FiniteGroupTable& g,
                                   const std::vector<std::uint32_t>& witness) {
  PhiWitnessCheck out;
  if (witness.empty()) return out;

  // Subgroup generated by the tuple: closure under multiplication (finite
  // order makes inverses automatic).
  std::vector<bool> in(g.order(), false);
  std::vector<std::uint32_t> elems = {0};
  in[0] = true;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto x : witness) {
      const std::uint32_t next = g.mul(elems[head], x);
      if (!in[next]) {
        in[next] = true;
        elems.push_back(next);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  out.subgroup_elements = elems;

  out.subgroup_normal = true;
  for (std::uint32_t e = 0; e < g.order() && out.subgroup_normal; ++e)
    for (const auto k : elems)
      if (!in[g.mul(g.mul(g.inv(e), k), e)]) {
        out.subgroup_normal = false;
        break;
      }

  out.tuple_closed_under_conjugation = true;
  for (std::uint32_t e = 0; e < g.order() && out.tuple_closed_under_conjugation; ++e) {
    for (const auto x : witness) {
      const std::uint32_t conj = g.mul(g.mul(g.inv(e), x), e);
      if (std::find(witness.begin(), witness.end(), conj) == witness.end()) {
        out.tuple_closed_under_conjugation = false;
        break;
      }
    }
  }

  for (std::uint32_t h = 0; h < g.order(); ++h)
    if (g.mul(witness[0], h) != g.mul(h, witness[0])) {
      out.noncentral_witness_found = true;
      break;
    }
  return out;
}

}  // namespace mg
