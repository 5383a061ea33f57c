#include "lbp/typing.hpp"

#include "lbp/printer.hpp"

namespace lbp {

namespace {

[[noreturn]] void err(const std::string& msg) { throw TypeError(msg); }

struct Checker {
  const Registry& reg;
  bool rebuild;

  // Γ ⊢ t : A
  std::pair<TermPtr, TypePtr> plain(Ctx& ctx, const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Var: {
        if (t->ann == Ann::Lin) err("linear variable '" + t->name + "' used outside its linear spine");
        auto it = ctx.find(t->name);
        if (it == ctx.end()) err("unbound variable '" + t->name + "'");
        return {t, it->second};
      }
      case TermKind::Num: return {t, t_real()};
      case TermKind::Lam: {
        if (t->ann == Ann::Lin) {
          if (t->btype && t->btype->kind != TypeKind::Real) err("linear binder '" + t->name + "' must have type R");
          auto [body, bt] = linear(ctx, t->name, t->kids[0]);
          if (!is_euclidean(bt)) err("body of linear abstraction must have Euclidean type");
          TermPtr out = rebuild ? mk_lam(t->name, Ann::Lin, t_real(), body) : t;
          return {out, t_neg(euclidean_dim(bt))};
        }
        if (!t->btype) err("abstraction binder '" + t->name + "' lacks a type annotation");
        auto saved = save(ctx, t->name);
        ctx[t->name] = t->btype;
        auto [body, bt] = plain(ctx, t->kids[0]);
        restore(ctx, t->name, saved);
        TermPtr out = rebuild ? mk_lam(t->name, Ann::Exp, t->btype, body) : t;
        return {out, t_arrow(t->btype, bt)};
      }
      case TermKind::App: {
        auto [f, ft] = plain(ctx, t->kids[0]);
        if (ft->kind == TypeKind::Arrow) {
          auto [a, at] = plain(ctx, t->kids[1]);
          if (!type_equal(ft->left, at))
            err("application argument has type " + show_type(at) + ", expected " + show_type(ft->left));
          return {rebuild ? mk_app(f, a) : t, ft->right};
        }
        if (ft->kind == TypeKind::Neg) {
          auto [a, at] = plain(ctx, t->kids[1]);
          if (at->kind != TypeKind::Real) err("linear application argument must have type R");
          return {rebuild ? mk_app(f, a) : t, euclidean(ft->dim)};
        }
        err("cannot apply a term of type " + show_type(ft));
      }
      case TermKind::Pair: {
        auto [l, lt] = plain(ctx, t->kids[0]);
        auto [r, rt] = plain(ctx, t->kids[1]);
        return {rebuild ? mk_pair(l, r) : t, t_prod(lt, rt)};
      }
      case TermKind::LetPair: {
        auto [bound, bt] = plain(ctx, t->kids[0]);
        if (bt->kind != TypeKind::Product) err("let-pair expects a product, got " + show_type(bt));
        check_ann(t->btype, bt->left, t->name);
        check_ann(t->btype2, bt->right, t->name2);
        auto s1 = save(ctx, t->name);
        auto s2 = save(ctx, t->name2);
        ctx[t->name] = bt->left;
        ctx[t->name2] = bt->right;
        auto [body, ct] = plain(ctx, t->kids[1]);
        restore(ctx, t->name2, s2);
        restore(ctx, t->name, s1);
        TermPtr out = rebuild ? mk_letpair(t->name, t->name2, bt->left, bt->right, bound, body) : t;
        return {out, ct};
      }
      case TermKind::ESub: {
        if (t->ann == Ann::Lin) {
          // Γ ⊢ u : R   Γ ⊢_z t : R^d   ⇒   Γ ⊢ t[z <- u] : R^d
          auto [bound, ut] = plain(ctx, t->kids[0]);
          if (ut->kind != TypeKind::Real) err("term substituted for linear '" + t->name + "' must have type R");
          auto [body, dt] = linear(ctx, t->name, t->kids[1]);
          TermPtr out = rebuild ? mk_esub(t->name, Ann::Lin, t_real(), bound, body) : t;
          return {out, dt};
        }
        auto [bound, ut] = plain(ctx, t->kids[0]);
        check_ann(t->btype, ut, t->name);
        auto saved = save(ctx, t->name);
        ctx[t->name] = ut;
        auto [body, ct] = plain(ctx, t->kids[1]);
        restore(ctx, t->name, saved);
        TermPtr out = rebuild ? mk_esub(t->name, Ann::Exp, ut, bound, body) : t;
        return {out, ct};
      }
      case TermKind::Sum: {
        auto [l, lt] = plain(ctx, t->kids[0]);
        auto [r, rt] = plain(ctx, t->kids[1]);
        if (!type_equal(lt, rt)) err("sum of unequal types " + show_type(lt) + " and " + show_type(rt));
        if (!is_euclidean(lt)) err("sum requires a Euclidean type, got " + show_type(lt));
        return {rebuild ? mk_sum(l, r) : t, lt};
      }
      case TermKind::Mult: {
        auto [l, lt] = plain(ctx, t->kids[0]);
        auto [r, rt] = plain(ctx, t->kids[1]);
        if (lt->kind != TypeKind::Real || rt->kind != TypeKind::Real) err("product arguments must have type R");
        return {rebuild ? mk_mult(l, r) : t, t_real()};
      }
      case TermKind::FunApp: {
        const FuncSym& f = reg.get(t->name);
        if (static_cast<int>(t->kids.size()) != f.arity)
          err("arity mismatch: '" + t->name + "' expects " + std::to_string(f.arity) + " arguments");
        std::vector<TermPtr> kids;
        for (const auto& a : t->kids) {
          auto [aa, at] = plain(ctx, a);
          if (at->kind != TypeKind::Real) err("arguments of '" + t->name + "' must have type R");
          kids.push_back(aa);
        }
        return {rebuild ? mk_funapp(t->name, std::move(kids)) : t, t_real()};
      }
    }
    err("malformed term");
  }

  // Γ ⊢_z t : R^d. The judgment exists only at Euclidean types.
  std::pair<TermPtr, TypePtr> linear(Ctx& ctx, const std::string& z, const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Var:
        if (t->name == z) return {t, t_real()};
        err(occurs_in_ctx(ctx, t->name)
                ? "variable '" + t->name + "' is not usable on the linear spine of '" + z + "'"
                : "unbound variable '" + t->name + "' on a linear spine");
      case TermKind::Num:
        if (t->num == 0.0) return {t, t_real()};  // the zero map
        err("numeral " + show_num(t->num) + " cannot be used linearly (only the zero vector can)");
      case TermKind::Pair: {
        auto [l, lt] = linear(ctx, z, t->kids[0]);
        auto [r, rt] = linear(ctx, z, t->kids[1]);
        return {rebuild ? mk_pair(l, r) : t, t_prod(lt, rt)};
      }
      case TermKind::Sum: {
        auto [l, lt] = linear(ctx, z, t->kids[0]);
        auto [r, rt] = linear(ctx, z, t->kids[1]);
        if (!type_equal(lt, rt)) err("sum of unequal types on a linear spine");
        return {rebuild ? mk_sum(l, r) : t, lt};
      }
      case TermKind::Mult: {
        bool in_l = occurs_free(t->kids[0], z);
        bool in_r = occurs_free(t->kids[1], z);
        if (in_l && in_r) err("linear variable '" + z + "' occurs in both factors of a product");
        if (in_l) return mult_linear(ctx, z, t, /*left=*/true);
        if (in_r) return mult_linear(ctx, z, t, /*left=*/false);
        // z occurs in neither factor: one factor must still be a zero spine.
        try {
          return mult_linear(ctx, z, t, /*left=*/true);
        } catch (const TypeError&) {
          return mult_linear(ctx, z, t, /*left=*/false);
        }
      }
      case TermKind::App: {
        auto [f, ft] = plain(ctx, t->kids[0]);
        if (ft->kind != TypeKind::Neg) err("only Neg-typed terms may be applied on a linear spine");
        auto [a, at] = linear(ctx, z, t->kids[1]);
        if (at->kind != TypeKind::Real) err("linear application argument must have type R");
        return {rebuild ? mk_app(f, a) : t, euclidean(ft->dim)};
      }
      case TermKind::ESub: {
        if (t->ann == Ann::Lin) {
          // Γ ⊢_{z} u : R    Γ ⊢_{z2} t : R^d   ⇒   Γ ⊢_{z} t[z2 <- u] : R^d
          auto [bound, ut] = linear(ctx, z, t->kids[0]);
          if (ut->kind != TypeKind::Real) err("term substituted for linear '" + t->name + "' must have type R");
          auto [body, dt] = linear(ctx, t->name, t->kids[1]);
          TermPtr out = rebuild ? mk_esub(t->name, Ann::Lin, t_real(), bound, body) : t;
          return {out, dt};
        }
        auto [bound, ut] = plain(ctx, t->kids[0]);
        check_ann(t->btype, ut, t->name);
        auto saved = save(ctx, t->name);
        ctx[t->name] = ut;
        auto [body, ct] = linear(ctx, z, t->kids[1]);
        restore(ctx, t->name, saved);
        TermPtr out = rebuild ? mk_esub(t->name, Ann::Exp, ut, bound, body) : t;
        return {out, ct};
      }
      case TermKind::LetPair: {
        auto [bound, bt] = plain(ctx, t->kids[0]);
        if (bt->kind != TypeKind::Product) err("let-pair expects a product, got " + show_type(bt));
        check_ann(t->btype, bt->left, t->name);
        check_ann(t->btype2, bt->right, t->name2);
        auto s1 = save(ctx, t->name);
        auto s2 = save(ctx, t->name2);
        ctx[t->name] = bt->left;
        ctx[t->name2] = bt->right;
        auto [body, ct] = linear(ctx, z, t->kids[1]);
        restore(ctx, t->name2, s2);
        restore(ctx, t->name, s1);
        TermPtr out = rebuild ? mk_letpair(t->name, t->name2, bt->left, bt->right, bound, body) : t;
        return {out, ct};
      }
      case TermKind::Lam: err("abstractions cannot appear on a linear spine");
      case TermKind::FunApp: err("function symbols cannot appear on a linear spine (not linear in '" + z + "')");
    }
    err("malformed term");
  }

  std::pair<TermPtr, TypePtr> mult_linear(Ctx& ctx, const std::string& z, const TermPtr& t, bool left) {
    auto [lin_part, lt] = linear(ctx, z, t->kids[left ? 0 : 1]);
    if (lt->kind != TypeKind::Real) err("linear factor of a product must have type R");
    auto [plain_part, pt] = plain(ctx, t->kids[left ? 1 : 0]);
    if (pt->kind != TypeKind::Real) err("product arguments must have type R");
    TermPtr out = !rebuild ? t : (left ? mk_mult(lin_part, plain_part) : mk_mult(plain_part, lin_part));
    return {out, t_real()};
  }

  static void check_ann(const TypePtr& ann, const TypePtr& actual, const std::string& name) {
    if (ann && !type_equal(ann, actual))
      err("binder '" + name + "' annotated " + show_type(ann) + " but bound to " + show_type(actual));
  }

  static bool occurs_in_ctx(const Ctx& ctx, const std::string& n) { return ctx.count(n) != 0; }

  static std::optional<TypePtr> save(Ctx& ctx, const std::string& n) {
    auto it = ctx.find(n);
    return it == ctx.end() ? std::nullopt : std::optional<TypePtr>(it->second);
  }
  static void restore(Ctx& ctx, const std::string& n, const std::optional<TypePtr>& saved) {
    if (saved) ctx[n] = *saved; else ctx.erase(n);
  }
};

}  // namespace

TypePtr infer(const Ctx& ctx, const TermPtr& t, const Registry& reg) {
  Checker c{reg, false};
  Ctx work = ctx;
  return c.plain(work, t).second;
}

std::pair<TermPtr, TypePtr> infer_annotate(const Ctx& ctx, const TermPtr& t, const Registry& reg) {
  Checker c{reg, true};
  Ctx work = ctx;
  return c.plain(work, t);
}

Ctx ground_ctx(const TermPtr& t) {
  Ctx ctx;
  for (const auto& v : t->fvs) ctx[v] = t_real();
  return ctx;
}

bool is_ground(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return t->ann == Ann::Exp;
    case TermKind::Num: return true;
    case TermKind::Sum: return is_ground(t->kids[0]) && is_ground(t->kids[1]);
    case TermKind::ESub:
      return t->ann == Ann::Exp && (!t->btype || t->btype->kind == TypeKind::Real) &&
             is_ground(t->kids[0]) && is_ground(t->kids[1]);
    case TermKind::FunApp:
    case TermKind::Mult: {
      // arguments desugar to variables bound by explicit substitutions
      for (const auto& a : t->kids)
        if (!is_ground(a)) return false;
      return true;
    }
    default: return false;
  }
}

}  // namespace lbp
