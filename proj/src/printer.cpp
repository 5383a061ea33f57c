#include "lbp/printer.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace lbp {

std::string show_num(double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

// Precedence: binder bodies 0 < sum 1 < mult 2 < application 3 < atom 4.
constexpr int kLow = 0, kSum = 1, kMult = 2, kApp = 3, kAtom = 4;

int prec(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Lam:
    case TermKind::ESub:
    case TermKind::LetPair: return kLow;
    case TermKind::Sum: return kSum;
    case TermKind::Mult: return kMult;
    case TermKind::App: return kApp;
    default: return kAtom;
  }
}

void print(const TermPtr& t, int min_prec, std::ostream& os) {
  bool paren = prec(t) < min_prec;
  if (paren) os << "(";
  switch (t->kind) {
    case TermKind::Var: os << t->name; break;
    case TermKind::Num: os << show_num(t->num); break;
    case TermKind::Lam:
      if (t->ann == Ann::Lin) {
        os << "lin " << t->name << ". ";
      } else {
        os << "\\" << t->name << ":" << show_type(t->btype) << ". ";
      }
      print(t->kids[0], kLow, os);
      break;
    case TermKind::ESub:
      os << "let " << t->name << " = ";
      print(t->kids[0], kSum, os);
      os << " in ";
      print(t->kids[1], kLow, os);
      break;
    case TermKind::LetPair:
      os << "let (" << t->name << ", " << t->name2 << ") = ";
      print(t->kids[0], kSum, os);
      os << " in ";
      print(t->kids[1], kLow, os);
      break;
    case TermKind::App:
      print(t->kids[0], kApp, os);
      os << " ";
      print(t->kids[1], kAtom, os);
      break;
    case TermKind::Pair:
      os << "(";
      print(t->kids[0], kLow, os);
      os << ", ";
      print(t->kids[1], kLow, os);
      os << ")";
      break;
    case TermKind::Sum:
      print(t->kids[0], kSum, os);
      os << " + ";
      print(t->kids[1], kMult, os);
      break;
    case TermKind::Mult:
      print(t->kids[0], kMult, os);
      os << " * ";
      print(t->kids[1], kApp, os);
      break;
    case TermKind::FunApp: {
      os << t->name << "(";
      bool first = true;
      for (const auto& a : t->kids) {
        if (!first) os << ", ";
        first = false;
        print(a, kLow, os);
      }
      os << ")";
      break;
    }
  }
  if (paren) os << ")";
}

}  // namespace

std::string pretty(const TermPtr& t) {
  std::ostringstream os;
  print(t, kLow, os);
  return os.str();
}

}  // namespace lbp
