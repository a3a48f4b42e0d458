#pragma once

// First-order de Bruijn and named representations of binder-only terms.
//
// Without application every term is a chain: k binders around a single
// variable occurrence. Both first-order types store exactly that shape.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hoas {

/// Positioned parse failure; line and column are 1-based, columns count
/// bytes.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class UnboundVariable : public std::runtime_error {
 public:
  explicit UnboundVariable(std::string name)
      : std::runtime_error("unbound variable " + name), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A de Bruijn term was expected to be closed but is not.
class OpenTermError : public std::invalid_argument {
 public:
  OpenTermError()
      : std::invalid_argument("de Bruijn term has an unbound index") {}
};

/// De Bruijn term: Lam(body) | Var(index), innermost binder = 0.
class DbTerm {
 public:
  static DbTerm var(std::uint64_t index) { return DbTerm(0, index); }
  static DbTerm lam(const DbTerm& body) {
    return DbTerm(body.binders_ + 1, body.index_);
  }

  bool is_lam() const noexcept { return binders_ > 0; }
  bool is_var() const noexcept { return binders_ == 0; }

  /// Body of a Lam node.
  DbTerm body() const {
    if (!is_lam()) throw std::logic_error("DbTerm::body on a Var node");
    return DbTerm(binders_ - 1, index_);
  }

  /// Number of Lam nodes above the occurrence.
  std::size_t binders() const noexcept { return binders_; }
  /// Index of the variable occurrence at the bottom of the chain.
  std::uint64_t index() const noexcept { return index_; }

  friend bool operator==(const DbTerm&, const DbTerm&) = default;

 private:
  DbTerm(std::size_t binders, std::uint64_t index)
      : binders_(binders), index_(index) {}

  std::size_t binders_;
  std::uint64_t index_;
};

/// Lam^binders(Var index)
inline DbTerm db_chain(std::size_t binders, std::uint64_t index) {
  DbTerm t = DbTerm::var(index);
  for (std::size_t i = 0; i < binders; ++i) t = DbTerm::lam(t);
  return t;
}

/// True iff `d` is well scoped under `depth` enclosing binders.
inline bool db_validate(const DbTerm& d, std::uint64_t depth) {
  std::uint64_t enclosing = depth;
  DbTerm cur = d;
  while (cur.is_lam()) {
    ++enclosing;
    cur = cur.body();
  }
  return cur.index() < enclosing;
}

/// Haskell `show` rendering: `Lam (Lam (Var 1))`.
inline std::string to_string(const DbTerm& d) {
  std::string out;
  for (std::size_t i = 0; i < d.binders(); ++i) out += "Lam (";
  out += "Var " + std::to_string(d.index());
  out.append(d.binders(), ')');
  return out;
}

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance(1);
    }
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  bool starts_with(std::string_view s) const {
    return text_.substr(pos_).starts_with(s);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_, column_, message);
  }

  std::string describe_next() const {
    if (at_end()) return "end of input";
    return "'" + std::string(1, peek()) + "'";
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace detail

/// Parses the `Lam (...)` / `Var n` format, with any whitespace between
/// tokens and optional redundant parentheses around any subterm.
inline DbTerm parse_db(std::string_view text) {
  detail::Cursor in(text);
  std::size_t open = 0;
  std::size_t binders = 0;
  // Each Lam consumes one mandatory '(' for its argument; extra parentheses
  // are tracked in the same counter.
  for (;;) {
    in.skip_space();
    if (in.peek() == '(') {
      in.advance(1);
      ++open;
      continue;
    }
    if (in.starts_with("Lam")) {
      in.advance(3);
      if (detail::is_ident_char(in.peek())) in.fail("unknown constructor");
      in.skip_space();
      if (in.peek() != '(') {
        in.fail("expected '(' after Lam, found " + in.describe_next());
      }
      in.advance(1);
      ++open;
      ++binders;
      continue;
    }
    if (in.starts_with("Var")) {
      in.advance(3);
      if (detail::is_ident_char(in.peek())) in.fail("unknown constructor");
      in.skip_space();
      if (!std::isdigit(static_cast<unsigned char>(in.peek()))) {
        in.fail("expected index after Var, found " + in.describe_next());
      }
      std::uint64_t index = 0;
      while (std::isdigit(static_cast<unsigned char>(in.peek()))) {
        auto digit = static_cast<std::uint64_t>(in.peek() - '0');
        if (index > (UINT64_MAX - digit) / 10) in.fail("index out of range");
        index = index * 10 + digit;
        in.advance(1);
      }
      for (; open > 0; --open) {
        in.skip_space();
        if (in.peek() != ')') {
          in.fail("expected ')', found " + in.describe_next());
        }
        in.advance(1);
      }
      in.skip_space();
      if (!in.at_end()) {
        in.fail("unexpected trailing input " + in.describe_next());
      }
      return db_chain(binders, index);
    }
    in.fail("expected Lam or Var, found " + in.describe_next());
  }
}

/// Named term: Abs(name, body) | Ref(name), stored as its binder chain.
class NamedTerm {
 public:
  static NamedTerm ref(std::string name) {
    return NamedTerm({}, std::move(name));
  }
  static NamedTerm abs(std::string name, NamedTerm body) {
    body.binders_.insert(body.binders_.begin(), std::move(name));
    return body;
  }
  /// Binders outermost first, then the occurrence.
  static NamedTerm chain(std::vector<std::string> binders,
                         std::string occurrence) {
    return NamedTerm(std::move(binders), std::move(occurrence));
  }

  /// Binder names, outermost first.
  const std::vector<std::string>& binders() const noexcept { return binders_; }
  /// Name at the variable occurrence.
  const std::string& occurrence() const noexcept { return occurrence_; }

  friend bool operator==(const NamedTerm&, const NamedTerm&) = default;

 private:
  NamedTerm(std::vector<std::string> binders, std::string occurrence)
      : binders_(std::move(binders)), occurrence_(std::move(occurrence)) {}

  std::vector<std::string> binders_;
  std::string occurrence_;
};

/// Concrete syntax: `\ x1. \ x2. x1`.
inline std::string render_named(const NamedTerm& t) {
  std::string out;
  for (const auto& b : t.binders()) out += "\\ " + b + ". ";
  return out + t.occurrence();
}

/// AST form used by the `parse` command: `Abs(x, Abs(y, Ref x))`.
inline std::string render_named_ast(const NamedTerm& t) {
  std::string out;
  for (const auto& b : t.binders()) out += "Abs(" + b + ", ";
  out += "Ref " + t.occurrence();
  out.append(t.binders().size(), ')');
  return out;
}

/// term := ('\' | 'λ') ident '.' term | ident
/// ident := [A-Za-z][A-Za-z0-9_]*
inline NamedTerm parse_named(std::string_view text) {
  static constexpr std::string_view lambda_utf8 = "\xCE\xBB";
  detail::Cursor in(text);
  std::vector<std::string> binders;

  auto ident = [&in]() {
    in.skip_space();
    if (!detail::is_ident_start(in.peek())) {
      in.fail("expected identifier, found " + in.describe_next());
    }
    std::string name;
    while (detail::is_ident_char(in.peek())) {
      name += in.peek();
      in.advance(1);
    }
    return name;
  };

  for (;;) {
    in.skip_space();
    if (in.peek() == '\\' || in.starts_with(lambda_utf8)) {
      in.advance(in.peek() == '\\' ? 1 : lambda_utf8.size());
      binders.push_back(ident());
      in.skip_space();
      if (in.peek() != '.') in.fail("expected '.', found " + in.describe_next());
      in.advance(1);
      continue;
    }
    std::string occurrence = ident();
    in.skip_space();
    if (!in.at_end()) {
      in.fail("unexpected trailing input " + in.describe_next());
    }
    return NamedTerm::chain(std::move(binders), std::move(occurrence));
  }
}

/// Standard de Bruijn conversion, innermost binder = 0.
inline DbTerm named_to_db(const NamedTerm& t) {
  const auto& bs = t.binders();
  for (std::size_t i = bs.size(); i-- > 0;) {
    if (bs[i] == t.occurrence()) return db_chain(bs.size(), bs.size() - 1 - i);
  }
  throw UnboundVariable(t.occurrence());
}

/// Canonical names: the binder at nesting level k (outermost = 1) is "x{k}".
inline NamedTerm db_to_named(const DbTerm& d) {
  if (!db_validate(d, 0)) throw OpenTermError();
  std::vector<std::string> names;
  names.reserve(d.binders());
  for (std::size_t k = 1; k <= d.binders(); ++k) {
    names.push_back("x" + std::to_string(k));
  }
  std::string occurrence = names[d.binders() - 1 - d.index()];
  return NamedTerm::chain(std::move(names), std::move(occurrence));
}

/// Lam nodes plus variable occurrences.
inline std::int64_t oracle_size(const DbTerm& d) {
  std::int64_t size = 0;
  DbTerm cur = d;
  while (cur.is_lam()) {
    ++size;
    cur = cur.body();
  }
  return size + 1;
}

/// Same byte format as printing a term through the print algebra.
inline std::string oracle_print(const DbTerm& d) {
  std::string out;
  std::vector<std::string> scope;
  DbTerm cur = d;
  while (cur.is_lam()) {
    scope.push_back("x" + std::to_string(scope.size() + 1));
    out += "\\ " + scope.back() + ". ";
    cur = cur.body();
  }
  if (cur.index() >= scope.size()) throw OpenTermError();
  return out + scope[scope.size() - 1 - cur.index()];
}

/// All closed chains Lam^k(Var i), 1 <= k <= max_depth, 0 <= i < k, in
/// (k, i) order.
inline std::vector<DbTerm> enumerate_terms(std::size_t max_depth) {
  std::vector<DbTerm> out;
  out.reserve(max_depth * (max_depth + 1) / 2);
  for (std::size_t k = 1; k <= max_depth; ++k) {
    for (std::size_t i = 0; i < k; ++i) out.push_back(db_chain(k, i));
  }
  return out;
}

}  // namespace hoas
