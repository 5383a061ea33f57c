#include "lbp/term.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lbp {

namespace {

std::vector<std::string> merge_fvs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> remove_fv(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
  return v;
}

TermPtr finish(Term t) {
  std::size_t n = 1;
  for (const auto& k : t.kids) n += k->nsize;
  t.nsize = n;
  return std::make_shared<Term>(std::move(t));
}

}  // namespace

TermPtr mk_var(std::string name, Ann ann) {
  Term t;
  t.kind = TermKind::Var;
  t.ann = ann;
  t.fvs = {name};
  t.name = std::move(name);
  return finish(std::move(t));
}

TermPtr mk_num(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("numeral must be a finite real");
  Term t;
  t.kind = TermKind::Num;
  t.num = value;
  return finish(std::move(t));
}

TermPtr mk_lam(std::string binder, Ann ann, TypePtr btype, TermPtr body) {
  Term t;
  t.kind = TermKind::Lam;
  t.ann = ann;
  t.btype = std::move(btype);
  t.fvs = remove_fv(body->fvs, binder);
  t.name = std::move(binder);
  t.kids = {std::move(body)};
  return finish(std::move(t));
}

TermPtr mk_app(TermPtr fun, TermPtr arg) {
  Term t;
  t.kind = TermKind::App;
  t.fvs = merge_fvs(fun->fvs, arg->fvs);
  t.kids = {std::move(fun), std::move(arg)};
  return finish(std::move(t));
}

TermPtr mk_pair(TermPtr fst, TermPtr snd) {
  Term t;
  t.kind = TermKind::Pair;
  t.fvs = merge_fvs(fst->fvs, snd->fvs);
  t.kids = {std::move(fst), std::move(snd)};
  return finish(std::move(t));
}

TermPtr mk_letpair(std::string x, std::string y, TypePtr tx, TypePtr ty, TermPtr bound, TermPtr body) {
  if (x == y) throw std::invalid_argument("let-pair binders must be distinct");
  Term t;
  t.kind = TermKind::LetPair;
  t.btype = std::move(tx);
  t.btype2 = std::move(ty);
  t.fvs = merge_fvs(bound->fvs, remove_fv(remove_fv(body->fvs, x), y));
  t.name = std::move(x);
  t.name2 = std::move(y);
  t.kids = {std::move(bound), std::move(body)};
  return finish(std::move(t));
}

TermPtr mk_esub(std::string binder, Ann ann, TypePtr btype, TermPtr bound, TermPtr body) {
  Term t;
  t.kind = TermKind::ESub;
  t.ann = ann;
  t.btype = std::move(btype);
  t.fvs = merge_fvs(bound->fvs, remove_fv(body->fvs, binder));
  t.name = std::move(binder);
  t.kids = {std::move(bound), std::move(body)};
  return finish(std::move(t));
}

TermPtr mk_sum(TermPtr l, TermPtr r) {
  Term t;
  t.kind = TermKind::Sum;
  t.fvs = merge_fvs(l->fvs, r->fvs);
  t.kids = {std::move(l), std::move(r)};
  return finish(std::move(t));
}

TermPtr mk_mult(TermPtr l, TermPtr r) {
  Term t;
  t.kind = TermKind::Mult;
  t.fvs = merge_fvs(l->fvs, r->fvs);
  t.kids = {std::move(l), std::move(r)};
  return finish(std::move(t));
}

TermPtr mk_funapp(std::string sym, std::vector<TermPtr> args) {
  Term t;
  t.kind = TermKind::FunApp;
  for (const auto& a : args) t.fvs = merge_fvs(t.fvs, a->fvs);
  t.name = std::move(sym);
  t.kids = std::move(args);
  return finish(std::move(t));
}

TermPtr zero_vec(int d) {
  if (d <= 1) return mk_num(0.0);
  return mk_pair(mk_num(0.0), zero_vec(d - 1));
}

bool is_zero_vec(const TermPtr& t) {
  if (t->kind == TermKind::Num) return t->num == 0.0;
  if (t->kind == TermKind::Pair) return is_zero_vec(t->kids[0]) && is_zero_vec(t->kids[1]);
  return false;
}

bool occurs_free(const TermPtr& t, const std::string& x) {
  return std::binary_search(t->fvs.begin(), t->fvs.end(), x);
}

namespace {
void free_vars_rec(const TermPtr& t, std::vector<std::string>& scope,
                   std::set<std::pair<std::string, Ann>>& out, std::vector<std::string>* order) {
  auto bound = [&scope](const std::string& n) {
    return std::find(scope.rbegin(), scope.rend(), n) != scope.rend();
  };
  switch (t->kind) {
    case TermKind::Var:
      if (!bound(t->name)) {
        if (order && std::find(order->begin(), order->end(), t->name) == order->end())
          order->push_back(t->name);
        out.insert({t->name, t->ann});
      }
      return;
    case TermKind::Num: return;
    case TermKind::Lam:
      scope.push_back(t->name);
      free_vars_rec(t->kids[0], scope, out, order);
      scope.pop_back();
      return;
    case TermKind::ESub:
      free_vars_rec(t->kids[0], scope, out, order);
      scope.push_back(t->name);
      free_vars_rec(t->kids[1], scope, out, order);
      scope.pop_back();
      return;
    case TermKind::LetPair:
      free_vars_rec(t->kids[0], scope, out, order);
      scope.push_back(t->name);
      scope.push_back(t->name2);
      free_vars_rec(t->kids[1], scope, out, order);
      scope.pop_back();
      scope.pop_back();
      return;
    default:
      for (const auto& k : t->kids) free_vars_rec(k, scope, out, order);
      return;
  }
}
}  // namespace

std::set<std::pair<std::string, Ann>> free_vars(const TermPtr& t) {
  std::set<std::pair<std::string, Ann>> out;
  std::vector<std::string> scope;
  free_vars_rec(t, scope, out, nullptr);
  return out;
}

std::vector<std::string> free_vars_ordered(const TermPtr& t) {
  std::set<std::pair<std::string, Ann>> out;
  std::vector<std::string> scope, order;
  free_vars_rec(t, scope, out, &order);
  return order;
}

namespace {
void names_rec(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var: out.insert(t->name); break;
    case TermKind::Lam:
    case TermKind::ESub: out.insert(t->name); break;
    case TermKind::LetPair:
      out.insert(t->name);
      out.insert(t->name2);
      break;
    default: break;
  }
  for (const auto& k : t->kids) names_rec(k, out);
}
}  // namespace

std::set<std::string> all_names(const TermPtr& t) {
  std::set<std::string> out;
  names_rec(t, out);
  return out;
}

namespace {

// Binder maps for alpha comparison: name -> binder index.
struct AlphaEnv {
  std::map<std::string, int> m;
  int next = 0;
};

bool alpha_rec(const TermPtr& a, const TermPtr& b, AlphaEnv& ea, AlphaEnv& eb) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      if (a->ann != b->ann) return false;
      auto ia = ea.m.find(a->name);
      auto ib = eb.m.find(b->name);
      if ((ia == ea.m.end()) != (ib == eb.m.end())) return false;
      if (ia == ea.m.end()) return a->name == b->name;  // both free
      return ia->second == ib->second;
    }
    case TermKind::Num: return a->num == b->num;
    case TermKind::Lam: {
      if (a->ann != b->ann) return false;
      if (!type_equal(a->btype, b->btype)) return false;
      auto sa = ea.m.count(a->name) ? std::optional<int>(ea.m[a->name]) : std::nullopt;
      auto sb = eb.m.count(b->name) ? std::optional<int>(eb.m[b->name]) : std::nullopt;
      ea.m[a->name] = ea.next++;
      eb.m[b->name] = eb.next++;
      bool ok = alpha_rec(a->kids[0], b->kids[0], ea, eb);
      if (sa) ea.m[a->name] = *sa; else ea.m.erase(a->name);
      if (sb) eb.m[b->name] = *sb; else eb.m.erase(b->name);
      ea.next--; eb.next--;
      return ok;
    }
    case TermKind::ESub: {
      if (a->ann != b->ann) return false;
      if (!alpha_rec(a->kids[0], b->kids[0], ea, eb)) return false;
      auto sa = ea.m.count(a->name) ? std::optional<int>(ea.m[a->name]) : std::nullopt;
      auto sb = eb.m.count(b->name) ? std::optional<int>(eb.m[b->name]) : std::nullopt;
      ea.m[a->name] = ea.next++;
      eb.m[b->name] = eb.next++;
      bool ok = alpha_rec(a->kids[1], b->kids[1], ea, eb);
      if (sa) ea.m[a->name] = *sa; else ea.m.erase(a->name);
      if (sb) eb.m[b->name] = *sb; else eb.m.erase(b->name);
      ea.next--; eb.next--;
      return ok;
    }
    case TermKind::LetPair: {
      if (!alpha_rec(a->kids[0], b->kids[0], ea, eb)) return false;
      auto keep = [](AlphaEnv& e, const std::string& n) {
        return e.m.count(n) ? std::optional<int>(e.m[n]) : std::nullopt;
      };
      auto sa1 = keep(ea, a->name), sa2 = keep(ea, a->name2);
      auto sb1 = keep(eb, b->name), sb2 = keep(eb, b->name2);
      ea.m[a->name] = ea.next++;
      eb.m[b->name] = eb.next++;
      ea.m[a->name2] = ea.next++;
      eb.m[b->name2] = eb.next++;
      bool ok = alpha_rec(a->kids[1], b->kids[1], ea, eb);
      auto restore = [](AlphaEnv& e, const std::string& n, std::optional<int> s) {
        if (s) e.m[n] = *s; else e.m.erase(n);
      };
      restore(ea, a->name2, sa2);
      restore(ea, a->name, sa1);
      restore(eb, b->name2, sb2);
      restore(eb, b->name, sb1);
      ea.next -= 2; eb.next -= 2;
      return ok;
    }
    case TermKind::FunApp: {
      if (a->name != b->name || a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!alpha_rec(a->kids[i], b->kids[i], ea, eb)) return false;
      return true;
    }
    default: {
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!alpha_rec(a->kids[i], b->kids[i], ea, eb)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  AlphaEnv ea, eb;
  return alpha_rec(a, b, ea, eb);
}

namespace {
void canon_rec(const TermPtr& t, std::map<std::string, int>& env, int& next, std::ostream& os) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) os << "F:" << t->name;
      else os << "B:" << it->second;
      os << (t->ann == Ann::Lin ? "l" : "e");
      return;
    }
    case TermKind::Num: os << "N:" << t->num; return;
    case TermKind::Lam: {
      os << (t->ann == Ann::Lin ? "lin(" : ("lam[" + show_type(t->btype) + "]("));
      auto saved = env.count(t->name) ? std::optional<int>(env[t->name]) : std::nullopt;
      env[t->name] = next++;
      canon_rec(t->kids[0], env, next, os);
      if (saved) env[t->name] = *saved; else env.erase(t->name);
      next--;
      os << ")";
      return;
    }
    case TermKind::ESub: {
      os << (t->ann == Ann::Lin ? "esubl(" : "esub(");
      canon_rec(t->kids[0], env, next, os);
      os << ",";
      auto saved = env.count(t->name) ? std::optional<int>(env[t->name]) : std::nullopt;
      env[t->name] = next++;
      canon_rec(t->kids[1], env, next, os);
      if (saved) env[t->name] = *saved; else env.erase(t->name);
      next--;
      os << ")";
      return;
    }
    case TermKind::LetPair: {
      os << "letp(";
      canon_rec(t->kids[0], env, next, os);
      os << ",";
      auto s1 = env.count(t->name) ? std::optional<int>(env[t->name]) : std::nullopt;
      auto s2 = env.count(t->name2) ? std::optional<int>(env[t->name2]) : std::nullopt;
      env[t->name] = next++;
      env[t->name2] = next++;
      canon_rec(t->kids[1], env, next, os);
      if (s2) env[t->name2] = *s2; else env.erase(t->name2);
      if (s1) env[t->name] = *s1; else env.erase(t->name);
      next -= 2;
      os << ")";
      return;
    }
    case TermKind::App: os << "app("; break;
    case TermKind::Pair: os << "pair("; break;
    case TermKind::Sum: os << "sum("; break;
    case TermKind::Mult: os << "mult("; break;
    case TermKind::FunApp: os << "f:" << t->name << "("; break;
  }
  bool first = true;
  for (const auto& k : t->kids) {
    if (!first) os << ",";
    first = false;
    canon_rec(k, env, next, os);
  }
  os << ")";
}
}  // namespace

std::string canon_string(const TermPtr& t) {
  std::ostringstream os;
  std::map<std::string, int> env;
  int next = 0;
  canon_rec(t, env, next, os);
  return os.str();
}

namespace {

TermPtr rename_binder_1(const TermPtr& node, const std::string& fresh);

// Substitute every free occurrence; capture avoided by renaming binders that
// clash with fv(v) on paths where x stays free.
TermPtr subst_rec(const TermPtr& t, const std::string& x, const TermPtr& v) {
  if (!occurs_free(t, x)) return t;
  switch (t->kind) {
    case TermKind::Var: return t->name == x ? v : t;
    case TermKind::Lam: {
      TermPtr node = t;
      if (node->name != x && occurs_free(v, node->name))
        node = rename_binder_1(node, fresh_name(node->name));
      if (node->name == x) return node;
      return mk_lam(node->name, node->ann, node->btype, subst_rec(node->kids[0], x, v));
    }
    case TermKind::ESub: {
      TermPtr node = t;
      TermPtr bound = subst_rec(node->kids[0], x, v);
      if (node->name != x && occurs_free(node->kids[1], x) && occurs_free(v, node->name))
        node = rename_binder_1(node, fresh_name(node->name));
      TermPtr body = node->name == x ? node->kids[1] : subst_rec(node->kids[1], x, v);
      return mk_esub(node->name, node->ann, node->btype, bound, body);
    }
    case TermKind::LetPair: {
      TermPtr node = t;
      TermPtr bound = subst_rec(node->kids[0], x, v);
      bool binds_x = node->name == x || node->name2 == x;
      if (!binds_x && occurs_free(node->kids[1], x)) {
        if (occurs_free(v, node->name)) node = rename_binder_1(node, fresh_name(node->name));
        if (occurs_free(v, node->name2)) {
          // rename the second binder
          std::string nf = fresh_name(node->name2);
          TermPtr nb = subst_rec(node->kids[1], node->name2, mk_var(nf, Ann::Exp));
          node = mk_letpair(node->name, nf, node->btype, node->btype2, node->kids[0], nb);
        }
      }
      binds_x = node->name == x || node->name2 == x;
      TermPtr body = binds_x ? node->kids[1] : subst_rec(node->kids[1], x, v);
      return mk_letpair(node->name, node->name2, node->btype, node->btype2, bound, body);
    }
    default: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& k : t->kids) kids.push_back(subst_rec(k, x, v));
      return with_kids(t, std::move(kids));
    }
  }
}

// Rename the (first) binder of a Lam/ESub/LetPair node to `fresh`.
TermPtr rename_binder_1(const TermPtr& node, const std::string& fresh) {
  Ann occ_ann = node->kind == TermKind::Lam || node->kind == TermKind::ESub
                    ? node->ann
                    : Ann::Exp;
  switch (node->kind) {
    case TermKind::Lam:
      return mk_lam(fresh, node->ann, node->btype, subst_rec(node->kids[0], node->name, mk_var(fresh, occ_ann)));
    case TermKind::ESub:
      return mk_esub(fresh, node->ann, node->btype, node->kids[0],
                     subst_rec(node->kids[1], node->name, mk_var(fresh, occ_ann)));
    case TermKind::LetPair:
      return mk_letpair(fresh, node->name2, node->btype, node->btype2, node->kids[0],
                        subst_rec(node->kids[1], node->name, mk_var(fresh, Ann::Exp)));
    default: throw std::logic_error("rename_binder_1: not a binder");
  }
}

}  // namespace

TermPtr subst_meta(const TermPtr& t, const std::string& x, const TermPtr& v) {
  return subst_rec(t, x, v);
}

std::size_t count_occurrences(const TermPtr& t, const std::string& x) {
  if (!occurs_free(t, x)) return 0;
  switch (t->kind) {
    case TermKind::Var: return t->name == x ? 1 : 0;
    case TermKind::Lam: return t->name == x ? 0 : count_occurrences(t->kids[0], x);
    case TermKind::ESub:
      return count_occurrences(t->kids[0], x) + (t->name == x ? 0 : count_occurrences(t->kids[1], x));
    case TermKind::LetPair:
      return count_occurrences(t->kids[0], x) +
             (t->name == x || t->name2 == x ? 0 : count_occurrences(t->kids[1], x));
    default: {
      std::size_t n = 0;
      for (const auto& k : t->kids) n += count_occurrences(k, x);
      return n;
    }
  }
}

namespace {
std::optional<TermPtr> replace_one_rec(const TermPtr& t, const std::string& x, const TermPtr& v) {
  if (!occurs_free(t, x)) return std::nullopt;
  switch (t->kind) {
    case TermKind::Var: return t->name == x ? std::optional<TermPtr>(v) : std::nullopt;
    case TermKind::Lam: {
      TermPtr node = t;
      if (node->name == x) return std::nullopt;
      if (occurs_free(v, node->name)) node = rename_binder_1(node, fresh_name(node->name));
      auto r = replace_one_rec(node->kids[0], x, v);
      if (!r) return std::nullopt;
      return mk_lam(node->name, node->ann, node->btype, *r);
    }
    case TermKind::ESub: {
      // bound is textually first
      if (auto r = replace_one_rec(t->kids[0], x, v))
        return mk_esub(t->name, t->ann, t->btype, *r, t->kids[1]);
      TermPtr node = t;
      if (node->name == x) return std::nullopt;
      if (occurs_free(node->kids[1], x) && occurs_free(v, node->name))
        node = rename_binder_1(node, fresh_name(node->name));
      auto r = replace_one_rec(node->kids[1], x, v);
      if (!r) return std::nullopt;
      return mk_esub(node->name, node->ann, node->btype, node->kids[0], *r);
    }
    case TermKind::LetPair: {
      if (auto r = replace_one_rec(t->kids[0], x, v))
        return mk_letpair(t->name, t->name2, t->btype, t->btype2, *r, t->kids[1]);
      TermPtr node = t;
      if (node->name == x || node->name2 == x) return std::nullopt;
      if (occurs_free(node->kids[1], x)) {
        if (occurs_free(v, node->name)) node = rename_binder_1(node, fresh_name(node->name));
        if (occurs_free(v, node->name2)) {
          std::string nf = fresh_name(node->name2);
          TermPtr nb = subst_meta(node->kids[1], node->name2, mk_var(nf, Ann::Exp));
          node = mk_letpair(node->name, nf, node->btype, node->btype2, node->kids[0], nb);
        }
      }
      auto r = replace_one_rec(node->kids[1], x, v);
      if (!r) return std::nullopt;
      return mk_letpair(node->name, node->name2, node->btype, node->btype2, node->kids[0], *r);
    }
    default: {
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        if (auto r = replace_one_rec(t->kids[i], x, v)) {
          std::vector<TermPtr> kids = t->kids;
          kids[i] = *r;
          return with_kids(t, std::move(kids));
        }
      }
      return std::nullopt;
    }
  }
}
}  // namespace

std::optional<TermPtr> replace_leftmost(const TermPtr& t, const std::string& x, const TermPtr& v) {
  return replace_one_rec(t, x, v);
}

namespace {
std::atomic<std::uint64_t> g_fresh_counter{0};

std::string base_of(const std::string& name) {
  auto pos = name.find('#');
  return pos == std::string::npos ? name : name.substr(0, pos);
}
}  // namespace

std::string fresh_name(const std::string& base) {
  return base_of(base) + "#" + std::to_string(++g_fresh_counter);
}

namespace {
TermPtr display_rec(const TermPtr& t, std::map<std::string, std::string>& ren, std::set<std::string>& used) {
  auto pick = [&used](const std::string& old) {
    std::string base = base_of(old);
    if (base.empty() || !(std::isalpha(static_cast<unsigned char>(base[0])) || base[0] == '_')) base = "v";
    std::string cand = base;
    int i = 1;
    while (used.count(cand)) cand = base + std::to_string(i++);
    used.insert(cand);
    return cand;
  };
  switch (t->kind) {
    case TermKind::Var: {
      auto it = ren.find(t->name);
      return it == ren.end() || it->second == t->name ? t : mk_var(it->second, t->ann);
    }
    case TermKind::Num: return t;
    case TermKind::Lam: {
      std::string nn = pick(t->name);
      auto saved = ren.count(t->name) ? std::optional<std::string>(ren[t->name]) : std::nullopt;
      ren[t->name] = nn;
      TermPtr body = display_rec(t->kids[0], ren, used);
      if (saved) ren[t->name] = *saved; else ren.erase(t->name);
      return mk_lam(nn, t->ann, t->btype, body);
    }
    case TermKind::ESub: {
      TermPtr bound = display_rec(t->kids[0], ren, used);
      std::string nn = pick(t->name);
      auto saved = ren.count(t->name) ? std::optional<std::string>(ren[t->name]) : std::nullopt;
      ren[t->name] = nn;
      TermPtr body = display_rec(t->kids[1], ren, used);
      if (saved) ren[t->name] = *saved; else ren.erase(t->name);
      return mk_esub(nn, t->ann, t->btype, bound, body);
    }
    case TermKind::LetPair: {
      TermPtr bound = display_rec(t->kids[0], ren, used);
      std::string n1 = pick(t->name), n2 = pick(t->name2);
      auto s1 = ren.count(t->name) ? std::optional<std::string>(ren[t->name]) : std::nullopt;
      ren[t->name] = n1;
      auto s2 = ren.count(t->name2) ? std::optional<std::string>(ren[t->name2]) : std::nullopt;
      ren[t->name2] = n2;
      TermPtr body = display_rec(t->kids[1], ren, used);
      if (s2) ren[t->name2] = *s2; else ren.erase(t->name2);
      if (s1) ren[t->name] = *s1; else ren.erase(t->name);
      return mk_letpair(n1, n2, t->btype, t->btype2, bound, body);
    }
    default: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& k : t->kids) kids.push_back(display_rec(k, ren, used));
      return with_kids(t, std::move(kids));
    }
  }
}
}  // namespace

TermPtr display_names(const TermPtr& t) {
  std::map<std::string, std::string> ren;
  std::set<std::string> used;
  for (const auto& fv : t->fvs) used.insert(fv);
  return display_rec(t, ren, used);
}

namespace {
TermPtr apart_rec(const TermPtr& t, std::map<std::string, std::string>& ren, std::set<std::string>& taken) {
  auto pick = [&taken](const std::string& old) {
    if (!taken.count(old)) {
      taken.insert(old);
      return old;
    }
    std::string nn = fresh_name(old);
    taken.insert(nn);
    return nn;
  };
  switch (t->kind) {
    case TermKind::Var: {
      auto it = ren.find(t->name);
      return it == ren.end() || it->second == t->name ? t : mk_var(it->second, t->ann);
    }
    case TermKind::Num: return t;
    case TermKind::Lam: {
      std::string nn = pick(t->name);
      auto saved = ren.count(t->name) ? std::optional<std::string>(ren[t->name]) : std::nullopt;
      ren[t->name] = nn;
      TermPtr body = apart_rec(t->kids[0], ren, taken);
      if (saved) ren[t->name] = *saved; else ren.erase(t->name);
      return mk_lam(nn, t->ann, t->btype, body);
    }
    case TermKind::ESub: {
      TermPtr bound = apart_rec(t->kids[0], ren, taken);
      std::string nn = pick(t->name);
      auto saved = ren.count(t->name) ? std::optional<std::string>(ren[t->name]) : std::nullopt;
      ren[t->name] = nn;
      TermPtr body = apart_rec(t->kids[1], ren, taken);
      if (saved) ren[t->name] = *saved; else ren.erase(t->name);
      return mk_esub(nn, t->ann, t->btype, bound, body);
    }
    case TermKind::LetPair: {
      TermPtr bound = apart_rec(t->kids[0], ren, taken);
      std::string n1 = pick(t->name), n2 = pick(t->name2);
      auto s1 = ren.count(t->name) ? std::optional<std::string>(ren[t->name]) : std::nullopt;
      ren[t->name] = n1;
      auto s2 = ren.count(t->name2) ? std::optional<std::string>(ren[t->name2]) : std::nullopt;
      ren[t->name2] = n2;
      TermPtr body = apart_rec(t->kids[1], ren, taken);
      if (s2) ren[t->name2] = *s2; else ren.erase(t->name2);
      if (s1) ren[t->name] = *s1; else ren.erase(t->name);
      return mk_letpair(n1, n2, t->btype, t->btype2, bound, body);
    }
    default: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (const auto& k : t->kids) kids.push_back(apart_rec(k, ren, taken));
      return with_kids(t, std::move(kids));
    }
  }
}
}  // namespace

TermPtr rename_binders_apart(const TermPtr& t, const std::set<std::string>& avoid) {
  std::map<std::string, std::string> ren;
  std::set<std::string> taken = avoid;
  for (const auto& fv : t->fvs) taken.insert(fv);
  return apart_rec(t, ren, taken);
}

TermPtr type_erase(const TermPtr& t) {
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  for (const auto& k : t->kids) kids.push_back(type_erase(k));
  switch (t->kind) {
    case TermKind::Lam: return mk_lam(t->name, t->ann, t_real(), kids[0]);
    case TermKind::ESub: return mk_esub(t->name, t->ann, nullptr, kids[0], kids[1]);
    case TermKind::LetPair: return mk_letpair(t->name, t->name2, nullptr, nullptr, kids[0], kids[1]);
    default: return t->kids.empty() ? t : with_kids(t, std::move(kids));
  }
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (int i : p) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->kids.size())
      throw std::out_of_range("invalid path");
    cur = cur->kids[i];
  }
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& sub) {
  if (p.empty()) return sub;
  if (p[0] < 0 || static_cast<std::size_t>(p[0]) >= t->kids.size())
    throw std::out_of_range("invalid path");
  std::vector<TermPtr> kids = t->kids;
  kids[p[0]] = replace_at(kids[p[0]], Path(p.begin() + 1, p.end()), sub);
  return with_kids(t, std::move(kids));
}

std::string show_path(const Path& p) {
  if (p.empty()) return "/";
  std::string s;
  for (int i : p) s += "/" + std::to_string(i);
  return s;
}

bool is_value(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Num:
    case TermKind::Lam: return true;
    case TermKind::Pair: return is_value(t->kids[0]) && is_value(t->kids[1]);
    default: return false;
  }
}

TermPtr with_kids(const TermPtr& t, std::vector<TermPtr> kids) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Num: return t;
    case TermKind::Lam: return mk_lam(t->name, t->ann, t->btype, std::move(kids[0]));
    case TermKind::App: return mk_app(std::move(kids[0]), std::move(kids[1]));
    case TermKind::Pair: return mk_pair(std::move(kids[0]), std::move(kids[1]));
    case TermKind::LetPair:
      return mk_letpair(t->name, t->name2, t->btype, t->btype2, std::move(kids[0]), std::move(kids[1]));
    case TermKind::ESub: return mk_esub(t->name, t->ann, t->btype, std::move(kids[0]), std::move(kids[1]));
    case TermKind::Sum: return mk_sum(std::move(kids[0]), std::move(kids[1]));
    case TermKind::Mult: return mk_mult(std::move(kids[0]), std::move(kids[1]));
    case TermKind::FunApp: return mk_funapp(t->name, std::move(kids));
  }
  throw std::logic_error("with_kids: bad kind");
}

}  // namespace lbp
