#pragma once

#include <memory>
#include <string>

namespace lbp {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

enum class TypeKind { Real, Product, Arrow, Neg };

/// Simple types: R | A * B | A -> B | Neg(d). Euclidean types R^d are
/// right-nested products of R (d = 1 is R itself).
struct Type {
  TypeKind kind;
  TypePtr left;   // Product / Arrow
  TypePtr right;  // Product / Arrow
  int dim = 0;    // Neg

  Type(TypeKind k, TypePtr l, TypePtr r, int d) : kind(k), left(std::move(l)), right(std::move(r)), dim(d) {}
};

TypePtr t_real();
TypePtr t_prod(TypePtr a, TypePtr b);
TypePtr t_arrow(TypePtr a, TypePtr b);
TypePtr t_neg(int dim);

bool type_equal(const TypePtr& a, const TypePtr& b);

/// True for R and any product tree of R's.
bool is_euclidean(const TypePtr& t);
/// Number of R leaves of a Euclidean type.
int euclidean_dim(const TypePtr& t);
/// The canonical right-nested R^d.
TypePtr euclidean(int d);

bool contains_neg(const TypePtr& t);

std::string show_type(const TypePtr& t);

}  // namespace lbp
