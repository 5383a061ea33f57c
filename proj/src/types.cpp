#include "lbp/types.hpp"

namespace lbp {

TypePtr t_real() {
  static const TypePtr r = std::make_shared<Type>(TypeKind::Real, nullptr, nullptr, 0);
  return r;
}

TypePtr t_prod(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(TypeKind::Product, std::move(a), std::move(b), 0);
}

TypePtr t_arrow(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(TypeKind::Arrow, std::move(a), std::move(b), 0);
}

TypePtr t_neg(int dim) { return std::make_shared<Type>(TypeKind::Neg, nullptr, nullptr, dim); }

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Real: return true;
    case TypeKind::Neg: return a->dim == b->dim;
    default: return type_equal(a->left, b->left) && type_equal(a->right, b->right);
  }
}

bool is_euclidean(const TypePtr& t) {
  if (!t) return false;
  if (t->kind == TypeKind::Real) return true;
  if (t->kind == TypeKind::Product) return is_euclidean(t->left) && is_euclidean(t->right);
  return false;
}

int euclidean_dim(const TypePtr& t) {
  if (t->kind == TypeKind::Real) return 1;
  return euclidean_dim(t->left) + euclidean_dim(t->right);
}

TypePtr euclidean(int d) {
  TypePtr t = t_real();
  for (int i = 1; i < d; ++i) t = t_prod(t_real(), t);
  return t;
}

bool contains_neg(const TypePtr& t) {
  if (!t) return false;
  if (t->kind == TypeKind::Neg) return true;
  if (t->kind == TypeKind::Real) return false;
  return contains_neg(t->left) || contains_neg(t->right);
}

std::string show_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Real: return "R";
    case TypeKind::Neg: return "Neg(" + std::to_string(t->dim) + ")";
    case TypeKind::Product: {
      // '*' binds tighter than '->' and right-associates.
      std::string l = show_type(t->left);
      if (t->left->kind == TypeKind::Arrow || t->left->kind == TypeKind::Product) l = "(" + l + ")";
      std::string r = show_type(t->right);
      if (t->right->kind == TypeKind::Arrow) r = "(" + r + ")";
      return l + " * " + r;
    }
    case TypeKind::Arrow: {
      std::string l = show_type(t->left);
      if (t->left->kind == TypeKind::Arrow) l = "(" + l + ")";
      return l + " -> " + show_type(t->right);
    }
  }
  return "?";
}

}  // namespace lbp
