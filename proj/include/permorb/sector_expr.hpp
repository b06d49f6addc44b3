#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "permorb/soliton_algebra.hpp"

namespace permorb {

/*
 * Sector expressions, evaluated in the n = 2 soliton context.
 *
 *   expr  := unary ('*' unary)*
 *   unary := label
 *          | 'conj' '(' expr ')'
 *          | 'pi' '[' expr ']'
 *          | 'hom' '(' expr (',' expr)* ';' expr ')'
 *          | '(' expr ')'
 *          | '(' expr ',' expr (',' expr)* ')'     product sector
 *
 * conj, pi and hom are keywords only when followed by their bracket, so a
 * category may still name a label "pi".
 */
struct Expr {
  enum class Kind { label, conj, fuse, soliton, hom, tuple };

  Kind kind = Kind::label;
  Label label = 0;
  /// conj/soliton: one child; fuse: two; hom: factors then target; tuple: parts.
  std::vector<Expr> children;

  friend bool operator==(const Expr&, const Expr&) = default;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const FusionRing& ring) : text_(text), ring_(ring) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw Error(ErrorCode::parse, "column " + std::to_string(at + 1) + ": " + message);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "', found '" + text_[pos_] + "'");
    }
  }

  Expr expr() {
    Expr left = unary();
    while (accept('*')) {
      Expr node{Expr::Kind::fuse, 0, {}};
      node.children.push_back(std::move(left));
      node.children.push_back(unary());
      left = std::move(node);
    }
    return left;
  }

  Expr unary() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a sector before end of input");
    if (accept('(')) {
      Expr first = expr();
      if (accept(')')) return first;
      Expr node{Expr::Kind::tuple, 0, {}};
      node.children.push_back(std::move(first));
      while (accept(',')) node.children.push_back(expr());
      expect(')');
      return node;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    std::string_view word = text_.substr(start, pos_ - start);

    std::size_t after = pos_;
    skip_space();
    char next = pos_ < text_.size() ? text_[pos_] : '\0';
    if (word == "conj" && next == '(') {
      ++pos_;
      Expr node{Expr::Kind::conj, 0, {}};
      node.children.push_back(expr());
      expect(')');
      return node;
    }
    if (word == "pi" && next == '[') {
      ++pos_;
      Expr node{Expr::Kind::soliton, 0, {}};
      node.children.push_back(expr());
      expect(']');
      return node;
    }
    if (word == "hom" && next == '(') {
      ++pos_;
      Expr node{Expr::Kind::hom, 0, {}};
      node.children.push_back(expr());
      while (accept(',')) node.children.push_back(expr());
      expect(';');
      node.children.push_back(expr());
      expect(')');
      return node;
    }
    pos_ = after;
    auto label = ring_.find(word);
    if (!label) fail("unknown label '" + std::string(word) + "'", start);
    return Expr{Expr::Kind::label, *label, {}};
  }

  std::string_view text_;
  const FusionRing& ring_;
  std::size_t pos_ = 0;
};

inline std::string join(const FusionRing& ring, const std::vector<Expr>& parts, std::size_t from, std::size_t to);

}  // namespace detail

inline Expr parse_expr(std::string_view text, const FusionRing& ring) { return detail::ExprParser(text, ring).parse(); }

inline std::string print_expr(const Expr& e, const FusionRing& ring) {
  switch (e.kind) {
    case Expr::Kind::label: return ring.name(e.label);
    case Expr::Kind::conj: return "conj(" + print_expr(e.children[0], ring) + ")";
    case Expr::Kind::soliton: return "pi[" + print_expr(e.children[0], ring) + "]";
    case Expr::Kind::fuse: {
      const Expr& rhs = e.children[1];
      std::string right = print_expr(rhs, ring);
      if (rhs.kind == Expr::Kind::fuse) right = "(" + right + ")";
      return print_expr(e.children[0], ring) + " * " + right;
    }
    case Expr::Kind::hom:
      return "hom(" + detail::join(ring, e.children, 0, e.children.size() - 1) + "; " +
             print_expr(e.children.back(), ring) + ")";
    case Expr::Kind::tuple: return "(" + detail::join(ring, e.children, 0, e.children.size()) + ")";
  }
  return {};
}

inline std::string detail::join(const FusionRing& ring, const std::vector<Expr>& parts, std::size_t from,
                                std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) out += (i > from ? ", " : "") + print_expr(parts[i], ring);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

using ExprValue = std::variant<SectorSum, SolitonSector, ProductSectorSum, Multiplicity>;

namespace detail {

inline std::string_view value_kind(const ExprValue& v) {
  static constexpr std::string_view names[] = {"sector", "soliton", "product sector", "integer"};
  return names[v.index()];
}

inline Error type_error(const std::string& what) { return Error(ErrorCode::domain, "type error: " + what); }

inline const SectorSum& as_sum(const ExprValue& v, std::string_view context) {
  if (auto* s = std::get_if<SectorSum>(&v)) return *s;
  throw type_error(std::string(context) + " expects a sector, got a " + std::string(value_kind(v)));
}

}  // namespace detail

inline ExprValue evaluate(const ModularData& md, const Expr& e) {
  constexpr int n = 2;
  const auto& ring = md.ring();
  switch (e.kind) {
    case Expr::Kind::label: return SectorSum::of(e.label);

    case Expr::Kind::conj: {
      ExprValue inner = evaluate(md, e.children[0]);
      if (auto* s = std::get_if<SectorSum>(&inner)) return conjugate(ring, *s);
      if (auto* s = std::get_if<SolitonSector>(&inner)) return soliton_conjugate(md, n, *s);
      if (auto* p = std::get_if<ProductSectorSum>(&inner)) {
        ProductSectorSum out;
        for (const auto& [t, m] : *p) {
          Tuple c = t;
          for (Label& a : c) a = ring.conj(a);
          out.add(c, m);
        }
        return out;
      }
      throw detail::type_error("conj of an integer");
    }

    case Expr::Kind::soliton:
      return SolitonSector{detail::as_sum(evaluate(md, e.children[0]), "pi[...]")};

    case Expr::Kind::tuple: {
      ProductSectorSum out;
      out.add({}, 1);
      for (const auto& part : e.children) {
        const SectorSum factor = detail::as_sum(evaluate(md, part), "a product sector component");
        ProductSectorSum next;
        for (const auto& [t, m] : out)
          for (auto [a, ma] : factor) {
            Tuple longer = t;
            longer.push_back(a);
            next.add(longer, detail::checked_mul(m, ma));
          }
        out = std::move(next);
      }
      return out;
    }

    case Expr::Kind::hom: {
      SectorSum product = detail::as_sum(evaluate(md, e.children[0]), "hom");
      for (std::size_t i = 1; i + 1 < e.children.size(); ++i)
        product = fuse(ring, product, detail::as_sum(evaluate(md, e.children[i]), "hom"));
      return pairing(product, detail::as_sum(evaluate(md, e.children.back()), "hom"));
    }

    case Expr::Kind::fuse: {
      ExprValue left = evaluate(md, e.children[0]);
      ExprValue right = evaluate(md, e.children[1]);
      if (auto* a = std::get_if<SectorSum>(&left))
        if (auto* b = std::get_if<SectorSum>(&right)) return fuse(ring, *a, *b);
      if (auto* a = std::get_if<SolitonSector>(&left))
        if (auto* b = std::get_if<SolitonSector>(&right)) return soliton_compose(md, n, *a, *b);
      if (auto* p = std::get_if<ProductSectorSum>(&left)) {
        if (auto* s = std::get_if<SolitonSector>(&right)) {
          SolitonSector out;
          for (const auto& [t, m] : *p) {
            if (t.size() != 2) throw detail::type_error("only pairs (mu1, mu2) act on n = 2 solitons");
            for (auto [lambda, mult] : act_product_sector(md, n, t[0], t[1], *s).lambda)
              out.lambda.add(lambda, detail::checked_mul(m, mult));
          }
          return out;
        }
        if (auto* q = std::get_if<ProductSectorSum>(&right)) {
          ProductSectorSum out;
          for (const auto& [t1, m1] : *p)
            for (const auto& [t2, m2] : *q) {
              if (t1.size() != t2.size()) throw detail::type_error("product sectors of different lengths");
              // componentwise fusion, expanded
              ProductSectorSum partial;
              partial.add({}, detail::checked_mul(m1, m2));
              for (std::size_t k = 0; k < t1.size(); ++k) {
                ProductSectorSum next;
                SectorSum f = fuse(ring, t1[k], t2[k]);
                for (const auto& [t, m] : partial)
                  for (auto [c, mc] : f) {
                    Tuple longer = t;
                    longer.push_back(c);
                    next.add(longer, detail::checked_mul(m, mc));
                  }
                partial = std::move(next);
              }
              for (const auto& [t, m] : partial) out.add(t, m);
            }
          return out;
        }
      }
      throw detail::type_error("cannot multiply a " + std::string(detail::value_kind(left)) + " by a " +
                               std::string(detail::value_kind(right)));
    }
  }
  throw detail::type_error("unknown expression");
}

inline std::string format_value(const FusionRing& ring, const ExprValue& v) {
  struct Visitor {
    const FusionRing& ring;
    std::string operator()(const SectorSum& s) const { return format_sum(ring, s); }
    std::string operator()(const SolitonSector& s) const { return format_soliton(ring, s); }
    std::string operator()(const ProductSectorSum& p) const { return format_product_sum(ring, p); }
    std::string operator()(Multiplicity m) const { return std::to_string(m); }
  };
  return std::visit(Visitor{ring}, v);
}

}  // namespace permorb
