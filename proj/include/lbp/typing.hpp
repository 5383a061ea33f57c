#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "lbp/registry.hpp"
#include "lbp/term.hpp"
#include "lbp/types.hpp"

namespace lbp {

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& m) : std::runtime_error(m) {}
};

/// Exponential typing context Γ.
using Ctx = std::map<std::string, TypePtr>;

/// Γ ⊢ t : A. Checks the linear discipline of any `lin` abstractions inside
/// (a single tracked linear variable per spine).
TypePtr infer(const Ctx& ctx, const TermPtr& t, const Registry& reg);

/// Like infer, but returns a copy of t with every ESub/LetPair binder-type
/// annotation filled in (Lam annotations are already Church-style).
std::pair<TermPtr, TypePtr> infer_annotate(const Ctx& ctx, const TermPtr& t, const Registry& reg);

/// Context assigning R to every free variable of t.
Ctx ground_ctx(const TermPtr& t);

/// Membership in the first-order fragment
///   x | F[x<-G] | f(x1,...,xk) | r | F + G
/// modulo the desugaring of compound function arguments.
bool is_ground(const TermPtr& t);

}  // namespace lbp
