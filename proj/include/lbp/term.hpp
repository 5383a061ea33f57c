#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lbp/types.hpp"

namespace lbp {

/// Binder/occurrence annotation: exponential (ordinary) or linear (the single
/// tracked variable of a Neg-typed abstraction).
enum class Ann : uint8_t { Exp, Lin };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind : uint8_t { Var, Num, Lam, App, Pair, LetPair, ESub, Sum, FunApp, Mult };

/// Immutable term node. Children are stored in textual order:
///   Lam{body}, App{fun,arg}, Pair{fst,snd}, LetPair{bound,body},
///   ESub{bound,body} ("let x = bound in body", i.e. body[x <- bound]),
///   Sum{l,r}, Mult{l,r}, FunApp{args...}.
/// Binder types on ESub/LetPair are optional annotations (filled by
/// typing::annotate); they are ignored by alpha_eq.
struct Term {
  TermKind kind;
  Ann ann = Ann::Exp;            // Var annotation / Lam / ESub binder annotation
  std::string name;              // Var name / Lam binder / ESub binder / LetPair fst binder / FunApp symbol
  std::string name2;             // LetPair snd binder
  TypePtr btype;                 // Lam binder type (required), ESub / LetPair fst (optional)
  TypePtr btype2;                // LetPair snd (optional)
  double num = 0.0;              // Num
  std::vector<TermPtr> kids;
  std::vector<std::string> fvs;  // sorted, unique free variable names
  std::size_t nsize = 0;         // node count
};

// Factories (compute fvs/nsize eagerly).
TermPtr mk_var(std::string name, Ann ann = Ann::Exp);
TermPtr mk_num(double value);
TermPtr mk_lam(std::string binder, Ann ann, TypePtr btype, TermPtr body);
TermPtr mk_app(TermPtr fun, TermPtr arg);
TermPtr mk_pair(TermPtr fst, TermPtr snd);
TermPtr mk_letpair(std::string x, std::string y, TypePtr tx, TypePtr ty, TermPtr bound, TermPtr body);
TermPtr mk_esub(std::string binder, Ann ann, TypePtr btype, TermPtr bound, TermPtr body);
TermPtr mk_sum(TermPtr l, TermPtr r);
TermPtr mk_mult(TermPtr l, TermPtr r);
TermPtr mk_funapp(std::string sym, std::vector<TermPtr> args);

/// Right-nested ⟨0,...,0⟩ of dimension d (d = 1 is the numeral 0).
TermPtr zero_vec(int d);
bool is_zero_vec(const TermPtr& t);

inline std::size_t term_size(const TermPtr& t) { return t->nsize; }
bool occurs_free(const TermPtr& t, const std::string& x);

/// Free variables with their annotations (a set; annotations are determined
/// by the binding discipline).
std::set<std::pair<std::string, Ann>> free_vars(const TermPtr& t);
/// Free variable names in first-occurrence (preorder, textual) order.
std::vector<std::string> free_vars_ordered(const TermPtr& t);
/// Every name appearing anywhere in t (free, bound, binders).
std::set<std::string> all_names(const TermPtr& t);

/// Equality up to consistent renaming of bound variables. Lam binder types
/// and annotations are compared; ESub/LetPair binder-type annotations are not.
bool alpha_eq(const TermPtr& a, const TermPtr& b);

/// Canonical serialization (de Bruijn-style binders); equal strings iff alpha_eq.
std::string canon_string(const TermPtr& t);

/// Capture-avoiding meta-level substitution t{v/x} of every free occurrence.
TermPtr subst_meta(const TermPtr& t, const std::string& x, const TermPtr& v);

/// Capture-avoiding replacement of the leftmost free occurrence of x only
/// (rule 20's micro-step). Empty result if x does not occur.
std::optional<TermPtr> replace_leftmost(const TermPtr& t, const std::string& x, const TermPtr& v);

/// Number of free occurrences of x in t.
std::size_t count_occurrences(const TermPtr& t, const std::string& x);

/// Globally fresh name derived from base; contains '#', which the surface
/// grammar rejects, so generated binders cannot collide with parsed input.
std::string fresh_name(const std::string& base);

/// Rename all binders to parseable, human-readable names (deterministic).
TermPtr display_names(const TermPtr& t);

/// Alpha-rename binders so that all binder names in the result are distinct
/// from each other and from the given avoid set.
TermPtr rename_binders_apart(const TermPtr& t, const std::set<std::string>& avoid);

/// Erase types: all Lam binder types become R, ESub/LetPair annotations drop.
TermPtr type_erase(const TermPtr& t);

// Paths address subterms by child index (textual order).
using Path = std::vector<int>;
TermPtr subterm_at(const TermPtr& t, const Path& p);
TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& sub);
std::string show_path(const Path& p);

/// Values per the grammar: variables, numerals, abstractions, pairs of values.
bool is_value(const TermPtr& t);

/// Rebuild a node with new children (same head data).
TermPtr with_kids(const TermPtr& t, std::vector<TermPtr> kids);

}  // namespace lbp
