#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "glex/error.hpp"

namespace glex {

inline bool is_type_name(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok) return false;
  }
  return true;
}

// A node label of the type hierarchy: [a-z][a-z0-9-]*
class TypeName {
 public:
  TypeName() : name_("top") {}

  explicit TypeName(std::string name) : name_(std::move(name)) {
    if (!is_type_name(name_))
      throw InvalidArgument("invalid type name '" + name_ + "'");
  }

  const std::string& str() const noexcept { return name_; }

  auto operator<=>(const TypeName&) const = default;
  bool operator==(const TypeName&) const = default;

 private:
  std::string name_;
};

inline const TypeName& top_type() {
  static const TypeName top{"top"};
  return top;
}

enum class Sort { Individual, Event };

// e, e1, e12, s, s2 ... denote events (s for states); anything else is an
// individual.
inline Sort sort_of_variable(std::string_view var) {
  if (var.empty() || (var[0] != 'e' && var[0] != 's')) return Sort::Individual;
  for (std::size_t i = 1; i < var.size(); ++i)
    if (var[i] < '0' || var[i] > '9') return Sort::Individual;
  return Sort::Event;
}

struct TypedArg {
  std::string var;
  TypeName type;

  Sort sort() const { return sort_of_variable(var); }
  bool is_event() const { return sort() == Sort::Event; }

  bool operator==(const TypedArg&) const = default;
};

struct Predicate {
  std::string name;
  std::vector<TypedArg> args;

  // Arguments of sort individual, in order. "First" and "second" argument
  // positions are counted over this list.
  std::vector<TypedArg> individual_args() const {
    std::vector<TypedArg> out;
    for (const auto& a : args)
      if (!a.is_event()) out.push_back(a);
    return out;
  }

  bool operator==(const Predicate&) const = default;
};

namespace detail {

inline bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

inline bool is_ident_char(char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class PredicateParser {
 public:
  explicit PredicateParser(std::string_view text) : text_(text) {}

  Predicate parse() {
    Predicate p;
    skip_space();
    p.name = identifier("predicate name");
    skip_space();
    expect('(');
    std::unordered_set<std::string> seen;
    for (;;) {
      skip_space();
      std::size_t var_pos = pos_;
      TypedArg arg{identifier("variable"), top_type()};
      skip_space();
      if (peek() == ':') {
        ++pos_;
        skip_space();
        arg.type = type_name();
        skip_space();
      }
      if (!seen.insert(arg.var).second)
        throw DuplicateVariable("variable '" + arg.var +
                                "' repeated at offset " +
                                std::to_string(var_pos));
      p.args.push_back(std::move(arg));
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      break;
    }
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "trailing input");
    return p;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  void expect(char c) {
    if (peek() != c || pos_ >= text_.size())
      throw SyntaxError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_]))
      throw SyntaxError(pos_, std::string("expected ") + what);
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  TypeName type_name() {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || text_[pos_] < 'a' || text_[pos_] > 'z')
      throw SyntaxError(pos_, "expected type name");
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')
        ++pos_;
      else
        break;
    }
    return TypeName(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// name '(' arg (',' arg)* ')' with arg := var (':' type)?
// Untyped variables get type top.
inline Predicate parse_predicate(std::string_view text) {
  return detail::PredicateParser(text).parse();
}

inline std::string render_arg(const TypedArg& a) {
  return a.var + ":" + a.type.str();
}

// Canonical form: no whitespace, every type printed.
inline std::string render_predicate(const Predicate& p) {
  std::string out = p.name;
  out += '(';
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i) out += ',';
    out += render_arg(p.args[i]);
  }
  out += ')';
  return out;
}

// "var" or "var:type", used for argument and event structure values.
inline TypedArg parse_typed_arg(std::string_view text) {
  // Reuse the predicate grammar so errors and offsets stay consistent.
  std::string wrapped = "a(" + std::string(text) + ")";
  try {
    Predicate p = parse_predicate(wrapped);
    if (p.args.size() != 1) throw SyntaxError(0, "expected a single argument");
    return p.args.front();
  } catch (const SyntaxError& e) {
    std::size_t off = e.offset() >= 2 ? e.offset() - 2 : 0;
    throw SyntaxError(off, "malformed argument '" + std::string(text) + "'");
  }
}

}  // namespace glex
