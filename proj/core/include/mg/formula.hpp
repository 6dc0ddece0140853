#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mg/finite_table.hpp"

namespace mg {

/// First-order term over the group signature {1, *, ^-1}.
class Term {
 public:
  enum class Kind { one, variable, product, inverse };

  static Term one() { return Term(Kind::one); }
  static Term var(std::string name);
  static Term product(std::vector<Term> factors);
  static Term inverse_of(Term t);

  Kind kind() const { return kind_; }
  const std::string& var_name() const { return var_; }
  const std::vector<Term>& args() const { return args_; }

  bool operator==(const Term& o) const;

 private:
  explicit Term(Kind k) : kind_(k) {}
  Kind kind_;
  std::string var_;
  std::vector<Term> args_;
};

/// Finite first-order formula: atoms t1 = t2, n-ary conjunction and
/// disjunction, negation, and the two quantifiers.
class Formula {
 public:
  enum class Kind { equals, negation, conjunction, disjunction, forall, exists };

  static Formula equals(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const { return kind_; }
  const Term& lhs() const { return terms_[0]; }
  const Term& rhs() const { return terms_[1]; }
  const std::vector<Formula>& children() const { return children_; }
  const std::string& quantified_var() const { return var_; }

  std::set<std::string> free_variables() const;
  bool is_sentence() const { return free_variables().empty(); }
  /// Number of equality atoms in the whole tree.
  std::size_t atom_count() const;

 private:
  explicit Formula(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<Term> terms_;       // equals
  std::vector<Formula> children_; // negation (1), conjunction/disjunction (n), quantifiers (1)
  std::string var_;               // quantifiers
};

using Environment = std::map<std::string, std::uint32_t>;

/// Tarskian evaluation over a finite group table; quantifiers range over all
/// elements. Every node evaluation counts against `budget`
/// (BudgetExceeded when exhausted). Unbound variables throw
/// PreconditionError.
bool eval_formula(const FiniteGroupTable& g, const Formula& f, const Environment& env = {},
                  std::uint64_t budget = 100'000'000);

std::uint32_t eval_term(const FiniteGroupTable& g, const Term& t, const Environment& env);

/// Named formulas:
///   psi:P  commuting order-P tuple, free variables x1..xP
///   phi:P  sentence: some normal tuple satisfying psi_P whose members are
///          permuted by every conjugation, with a non-central witness
///   zeta   forall a forall b exists t (a=1 or b=1 or t^-1 a t = b)
Formula make_named_formula(const std::string& name);

/// Prefix text syntax, e.g. (forall a (exists t (= (* (inv t) a t) a))).
/// `e` is the identity constant; (* ...) takes two or more factors.
Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

/// Searches for the outermost witness tuple of phi:P on a table: the
/// lexicographically first (x_1, ..., x_p) making the matrix of phi_p true.
/// Empty when the table does not satisfy phi:P.
std::vector<std::uint32_t> find_phi_witness(const FiniteGroupTable& g, std::uint32_t p,
                                            std::uint64_t budget = 100'000'000);

/// Independent confirmation of a phi:P witness: the generated subgroup, its
/// normality, closure of the tuple under conjugation, and a non-central
/// element. Never contradicts the eval_formula verdict.
struct PhiWitnessCheck {
  bool tuple_closed_under_conjugation = false;
  bool subgroup_normal = false;
  bool noncentral_witness_found = false;
  std::vector<std::uint32_t> subgroup_elements;

  bool all_ok() const {
    return tuple_closed_under_conjugation && subgroup_normal && noncentral_witness_found;
  }
};

PhiWitnessCheck verify_phi_witness(const FiniteGroupTable& g,
                                   const std::vector<std::uint32_t>& witness);

}  // namespace mg
