#pragma once

#include <pathcheck/error.hpp>
#include <pathcheck/formula.hpp>

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace pathcheck {

/* Grammar (whitespace-insensitive), loosest binding first:
 *
 *   temporal := disj ( TOP temporal )?         right-associative
 *   disj     := conj ( "|" conj )*
 *   conj     := unary ( "&" unary )*
 *   unary    := PREFIX unary | "(" temporal ")" | atom
 *   TOP      := "U" | "R" | "S" | "T"   optionally followed by "[" nat "]"
 *   PREFIX   := "!" | "X" | "wX" | "Y" | "wY" | "F" | "G" | "O" | "H"
 *               (F, G, O, H optionally followed by "[" nat "]")
 *
 * `true` and `false` denote the reserved atoms; F, G, O and H are desugared
 * into Until, Release, Since and Trigger with a constant left operand.
 */
namespace detail {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = temporal();
    skip_space();
    if (pos_ < text_.size()) {
      auto word = peek_word();
      if (word && !is_keyword(*word))
        fail("unknown operator '" + std::string(*word) + "'");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return f;
  }

private:
  static bool is_keyword(std::string_view w) {
    return w == "U" || w == "R" || w == "S" || w == "T" || w == "X" ||
           w == "wX" || w == "Y" || w == "wY" || w == "F" || w == "G" ||
           w == "O" || w == "H";
  }

  static std::optional<Op> temporal_op(std::string_view w) {
    if (w == "U") return Op::Until;
    if (w == "R") return Op::Release;
    if (w == "S") return Op::Since;
    if (w == "T") return Op::Trigger;
    return std::nullopt;
  }

  Formula temporal() {
    Formula lhs = disjunction();
    auto word = peek_word();
    if (!word)
      return lhs;
    auto op = temporal_op(*word);
    if (!op) {
      if (!is_keyword(*word))
        fail("unknown operator '" + std::string(*word) + "'");
      return lhs;
    }
    pos_ += word->size();
    auto bound = optional_bound();
    Formula rhs = temporal();
    if (bound)
      return Formula::binary(bounded_of(*op), lhs, rhs, *bound);
    return Formula::binary(*op, lhs, rhs);
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (consume('|'))
      lhs = disj(lhs, conjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (consume('&'))
      lhs = conj(lhs, unary());
    return lhs;
  }

  Formula unary() {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    if (consume('!'))
      return negation(unary());
    if (consume('(')) {
      Formula f = temporal();
      if (!consume(')'))
        fail("expected ')'");
      return f;
    }
    auto word = peek_word();
    if (!word)
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    const std::string w(*word);
    if (temporal_op(w))
      fail("binary operator '" + w + "' is missing its left operand");
    pos_ += w.size();
    if (w == "X") return Formula::unary(Op::NextStrong, unary());
    if (w == "wX") return Formula::unary(Op::NextWeak, unary());
    if (w == "Y") return Formula::unary(Op::YesterdayStrong, unary());
    if (w == "wY") return Formula::unary(Op::YesterdayWeak, unary());
    if (w == "F" || w == "G" || w == "O" || w == "H") {
      auto bound = optional_bound();
      Formula operand = unary();
      const bool future = w == "F" || w == "G";
      const bool existential = w == "F" || w == "O";
      Op op = existential ? (future ? Op::Until : Op::Since)
                          : (future ? Op::Release : Op::Trigger);
      Formula constant = existential ? Formula::truth() : Formula::falsity();
      if (bound)
        return Formula::binary(bounded_of(op), constant, operand, *bound);
      return Formula::binary(op, constant, operand);
    }
    if (w == "true") return Formula::truth();
    if (w == "false") return Formula::falsity();
    return atom(w);
  }

  std::optional<Bound> optional_bound() {
    if (!consume('['))
      return std::nullopt;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) {
      pos_ = start;
      fail("bound is not a decimal natural");
    }
    Bound value = 0;
    if (std::from_chars(text_.data() + start, text_.data() + pos_, value).ec !=
        std::errc()) {
      pos_ = start;
      fail("bound is not a decimal natural");
    }
    if (!consume(']'))
      fail("expected ']' after bound");
    return value;
  }

  std::optional<std::string_view> peek_word() {
    skip_space();
    if (pos_ >= text_.size())
      return std::nullopt;
    const char c = text_[pos_];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      return std::nullopt;
    std::size_t end = pos_ + 1;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      ++end;
    return text_.substr(pos_, end - pos_);
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(msg, line, column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline const char *op_symbol(Op op) {
  switch (op) {
  case Op::Not: return "!";
  case Op::And: return "&";
  case Op::Or: return "|";
  case Op::NextStrong: return "X";
  case Op::NextWeak: return "wX";
  case Op::YesterdayStrong: return "Y";
  case Op::YesterdayWeak: return "wY";
  case Op::Until: case Op::BoundedUntil: return "U";
  case Op::Release: case Op::BoundedRelease: return "R";
  case Op::Since: case Op::BoundedSince: return "S";
  case Op::Trigger: case Op::BoundedTrigger: return "T";
  case Op::Atom: break;
  }
  return "?";
}

inline void print_to(const Formula &f, std::string &out) {
  const Op op = f.op();
  if (op == Op::Atom) {
    if (f.name() == kTrueAtom)
      out += "true";
    else if (f.name() == kFalseAtom)
      out += "false";
    else
      out += f.name();
    return;
  }
  out += '(';
  if (is_unary(op)) {
    out += op_symbol(op);
    out += ' ';
    print_to(f.child(), out);
  } else {
    print_to(f.left(), out);
    out += ' ';
    out += op_symbol(op);
    if (is_bounded(op))
      out += '[' + std::to_string(f.bound()) + ']';
    out += ' ';
    print_to(f.right(), out);
  }
  out += ')';
}

} // namespace detail

/// Parse formula text. Throws ParseError carrying line and column.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse(); }

/// Fully parenthesized rendering; `parse(print(f)) == f`.
inline std::string print(const Formula &f) {
  std::string out;
  detail::print_to(f, out);
  return out;
}

/// Operator symbol as accepted by the parser, e.g. "U" or "wX".
inline std::string op_name(Op op) {
  std::string s = detail::op_symbol(op);
  return s;
}

} // namespace pathcheck
