#pragma once

// Group-construction expression language.
//
//   Expr    := Term ('*' Term)*
//   Term    := Atom | 'sdp(' Module ',' Expr ',' Action ')'
//   Atom    := 'C(' n ')' | 'EA(' p ',' k ')' | 'Homocyclic(' m ',' k ')'
//            | 'D(' n ')' | 'Q8' | 'ES(' p ',' sign ')' | 'SL23'
//            | 'Sz8Borel' | 'A5'
//   Module  := Factor ('*' Factor)*
//   Factor  := Base ['^' k]
//   Base    := n | '(' n ('x' n)+ ')'
//   Action  := 'maxker' | 'mats(' GenMats (';' GenMats)* ')'
//   GenMats := Matrix (',' Matrix)*           one matrix per module factor
//   Matrix  := '[' Row (',' Row)* ']'
//   Row     := '[' int (',' int)* ']'
//
// The printed form is canonical: no whitespace, parameters in decimal,
// module factors run-length collapsed. parse(print(e)) == e.

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "vanish/constructors.hpp"

namespace vanish {

struct GroupExpr {
  enum Kind { Atom, Product, Sdp } kind = Atom;

  // Atom
  Family family = Family::Cyclic;
  std::vector<u64> params;
  int es_sign = +1;

  // Product: a flat factor list (direct products are associative, so the
  // canonical tree is the flattened one)
  std::vector<std::shared_ptr<GroupExpr>> factors;

  // Sdp
  ModuleSpec module;
  std::shared_ptr<GroupExpr> actor;
  ActionSpec action;

  friend bool operator==(const GroupExpr& a, const GroupExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Atom:
        return a.family == b.family && a.params == b.params &&
               (a.family != Family::Extraspecial || a.es_sign == b.es_sign);
      case Product: {
        if (a.factors.size() != b.factors.size()) return false;
        for (std::size_t i = 0; i < a.factors.size(); ++i)
          if (!(*a.factors[i] == *b.factors[i])) return false;
        return true;
      }
      case Sdp:
        return a.module == b.module && *a.actor == *b.actor &&
               a.action == b.action;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Printer.

namespace dsldetail {

inline void print_module(const ModuleSpec& m, std::string& out) {
  std::size_t i = 0;
  bool first = true;
  while (i < m.factors.size()) {
    std::size_t j = i;
    while (j < m.factors.size() && m.factors[j].modulus == m.factors[i].modulus &&
           m.factors[j].rank == m.factors[i].rank)
      ++j;
    if (!first) out += '*';
    first = false;
    if (m.factors[i].rank == 1) {
      out += std::to_string(m.factors[i].modulus);
    } else {
      out += '(';
      for (unsigned r = 0; r < m.factors[i].rank; ++r) {
        if (r) out += 'x';
        out += std::to_string(m.factors[i].modulus);
      }
      out += ')';
    }
    if (j - i > 1) {
      out += '^';
      out += std::to_string(j - i);
    }
    i = j;
  }
}

inline void print_action(const ActionSpec& a, std::string& out) {
  if (a.kind == ActionSpec::MaximalKernels) {
    out += "maxker";
    return;
  }
  out += "mats(";
  for (std::size_t g = 0; g < a.generator_blocks.size(); ++g) {
    if (g) out += ';';
    for (std::size_t f = 0; f < a.generator_blocks[g].size(); ++f) {
      if (f) out += ',';
      const std::vector<u64>& blk = a.generator_blocks[g][f];
      // square block, row-major
      unsigned r = 1;
      while (std::size_t(r) * r < blk.size()) ++r;
      out += '[';
      for (unsigned i = 0; i < r; ++i) {
        if (i) out += ',';
        out += '[';
        for (unsigned j = 0; j < r; ++j) {
          if (j) out += ',';
          out += std::to_string(blk[std::size_t(i) * r + j]);
        }
        out += ']';
      }
      out += ']';
    }
  }
  out += ')';
}

}  // namespace dsldetail

inline std::string print_group_expr(const GroupExpr& e) {
  std::string out;
  switch (e.kind) {
    case GroupExpr::Atom:
      switch (e.family) {
        case Family::Cyclic:
          out = "C(" + std::to_string(e.params[0]) + ")";
          break;
        case Family::ElementaryAbelian:
          out = "EA(" + std::to_string(e.params[0]) + "," +
                std::to_string(e.params[1]) + ")";
          break;
        case Family::Homocyclic:
          out = "Homocyclic(" + std::to_string(e.params[0]) + "," +
                std::to_string(e.params[1]) + ")";
          break;
        case Family::Dihedral:
          out = "D(" + std::to_string(e.params[0]) + ")";
          break;
        case Family::Quaternion8:
          out = "Q8";
          break;
        case Family::Extraspecial:
          out = "ES(" + std::to_string(e.params[0]) + "," +
                (e.es_sign > 0 ? "+" : "-") + ")";
          break;
        case Family::SL23:
          out = "SL23";
          break;
        case Family::Sz8Borel:
          out = "Sz8Borel";
          break;
        case Family::Alt5:
          out = "A5";
          break;
      }
      break;
    case GroupExpr::Product:
      for (std::size_t i = 0; i < e.factors.size(); ++i) {
        if (i) out += "*";
        out += print_group_expr(*e.factors[i]);
      }
      break;
    case GroupExpr::Sdp: {
      out = "sdp(";
      dsldetail::print_module(e.module, out);
      out += ",";
      out += print_group_expr(*e.actor);
      out += ",";
      dsldetail::print_action(e.action, out);
      out += ")";
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser.

namespace dsldetail {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  GroupExpr parse_expr() {
    GroupExpr e = parse_term();
    skip_ws();
    if (peek() != '*') return e;
    GroupExpr prod;
    prod.kind = GroupExpr::Product;
    prod.factors.push_back(std::make_shared<GroupExpr>(std::move(e)));
    while (peek() == '*') {
      get();
      prod.factors.push_back(std::make_shared<GroupExpr>(parse_term()));
      skip_ws();
    }
    return prod;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != s_.size()) fail("end of input");
  }

 private:
  GroupExpr parse_term() {
    skip_ws();
    std::string word = peek_word();
    if (word == "sdp") {
      take_word(word);
      expect('(');
      GroupExpr e;
      e.kind = GroupExpr::Sdp;
      e.module = parse_module();
      expect(',');
      e.actor = std::make_shared<GroupExpr>(parse_expr());
      expect(',');
      e.action = parse_action(e.module);
      expect(')');
      return e;
    }
    return parse_atom(word);
  }

  GroupExpr parse_atom(const std::string& word) {
    GroupExpr e;
    e.kind = GroupExpr::Atom;
    if (word == "C") {
      take_word(word);
      e.family = Family::Cyclic;
      expect('(');
      e.params = {parse_int()};
      expect(')');
    } else if (word == "EA") {
      take_word(word);
      e.family = Family::ElementaryAbelian;
      expect('(');
      e.params = {parse_int()};
      expect(',');
      e.params.push_back(parse_int());
      expect(')');
    } else if (word == "Homocyclic") {
      take_word(word);
      e.family = Family::Homocyclic;
      expect('(');
      e.params = {parse_int()};
      expect(',');
      e.params.push_back(parse_int());
      expect(')');
    } else if (word == "D") {
      take_word(word);
      e.family = Family::Dihedral;
      expect('(');
      e.params = {parse_int()};
      expect(')');
    } else if (word == "Q8") {
      take_word(word);
      e.family = Family::Quaternion8;
    } else if (word == "ES") {
      take_word(word);
      e.family = Family::Extraspecial;
      expect('(');
      e.params = {parse_int()};
      expect(',');
      skip_ws();
      if (peek() == '+') {
        get();
        e.es_sign = +1;
      } else if (peek() == '-') {
        get();
        e.es_sign = -1;
      } else {
        fail("'+' or '-'");
      }
      e.params.push_back(e.es_sign > 0 ? 0 : 1);
      expect(')');
    } else if (word == "SL23") {
      take_word(word);
      e.family = Family::SL23;
    } else if (word == "Sz8Borel") {
      take_word(word);
      e.family = Family::Sz8Borel;
    } else if (word == "A5") {
      take_word(word);
      e.family = Family::Alt5;
    } else {
      fail("a family atom (C, EA, Homocyclic, D, Q8, ES, SL23, Sz8Borel, A5) or sdp(...)");
    }
    return e;
  }

  ModuleSpec parse_module() {
    ModuleSpec m;
    while (true) {
      skip_ws();
      ModuleFactor f;
      if (peek() == '(') {
        get();
        f.modulus = parse_int();
        f.rank = 1;
        skip_ws();
        while (peek() == 'x') {
          get();
          u64 m2 = parse_int();
          if (m2 != f.modulus) fail("equal moduli inside a (mx..xm) factor");
          ++f.rank;
          skip_ws();
        }
        expect(')');
        if (f.rank < 2) fail("at least two moduli inside parentheses");
      } else {
        f.modulus = parse_int();
        f.rank = 1;
      }
      u64 reps = 1;
      skip_ws();
      if (peek() == '^') {
        get();
        reps = parse_int();
        if (reps == 0) fail("a positive exponent");
      }
      for (u64 i = 0; i < reps; ++i) m.factors.push_back(f);
      skip_ws();
      if (peek() == '*') {
        get();
        continue;
      }
      break;
    }
    return m;
  }

  ActionSpec parse_action(const ModuleSpec& module) {
    ActionSpec a;
    skip_ws();
    std::string word = peek_word();
    if (word == "maxker") {
      take_word(word);
      a.kind = ActionSpec::MaximalKernels;
      return a;
    }
    if (word != "mats") fail("'maxker' or 'mats(...)'");
    take_word(word);
    a.kind = ActionSpec::ExplicitMatrices;
    expect('(');
    while (true) {
      std::vector<std::vector<u64>> blocks;
      for (std::size_t f = 0; f < module.factors.size(); ++f) {
        if (f) expect(',');
        blocks.push_back(parse_matrix(module.factors[f].rank));
      }
      a.generator_blocks.push_back(std::move(blocks));
      skip_ws();
      if (peek() == ';') {
        get();
        continue;
      }
      break;
    }
    expect(')');
    return a;
  }

  std::vector<u64> parse_matrix(unsigned rank) {
    expect('[');
    std::vector<u64> flat;
    unsigned rows = 0;
    while (true) {
      expect('[');
      unsigned cols = 0;
      while (true) {
        flat.push_back(parse_int());
        ++cols;
        skip_ws();
        if (peek() == ',') {
          get();
          continue;
        }
        break;
      }
      expect(']');
      if (cols != rank) fail(std::to_string(rank) + " entries per row");
      ++rows;
      skip_ws();
      if (peek() == ',') {
        // could be the next row of this matrix or the next matrix; rows
        // always start with '['
        std::size_t save = pos_;
        get();
        skip_ws();
        if (peek() == '[' && rows < rank) continue;
        pos_ = save;
      }
      break;
    }
    expect(']');
    if (rows != rank) fail(std::to_string(rank) + " rows");
    return flat;
  }

  u64 parse_int() {
    skip_ws();
    if (pos_ >= s_.size() || !isdigit(s_[pos_])) fail("an integer");
    u64 v = 0;
    while (pos_ < s_.size() && isdigit(s_[pos_])) {
      v = v * 10 + u64(s_[pos_] - '0');
      if (v > (u64(1) << 40)) fail("a smaller integer");
      ++pos_;
    }
    return v;
  }

  std::string peek_word() const {
    std::size_t i = pos_;
    while (i < s_.size() && (isalnum(s_[i]))) ++i;
    return s_.substr(pos_, i - pos_);
  }
  void take_word(const std::string& w) { pos_ += w.size(); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' ||
                                s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("'") + c + "'");
    get();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, expected);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace dsldetail

inline GroupExpr parse_group_expr(const std::string& text) {
  dsldetail::Parser p(text);
  GroupExpr e = p.parse_expr();
  p.expect_end();
  return e;
}

inline std::string canonical_expr(const std::string& text) {
  return print_group_expr(parse_group_expr(text));
}

// ---------------------------------------------------------------------------
// Evaluation.

inline Group build_group(const GroupExpr& e,
                         std::size_t bound = kDefaultEnumerationBound) {
  switch (e.kind) {
    case GroupExpr::Atom:
      return build_base(e.family, e.params, bound);
    case GroupExpr::Product: {
      Group acc = build_group(*e.factors[0], bound);
      for (std::size_t i = 1; i < e.factors.size(); ++i) {
        Group next = build_group(*e.factors[i], bound);
        if (acc->order() * next->order() > bound)
          throw BoundExceeded("direct product order exceeds bound");
        acc = direct_product(acc, next);
      }
      return acc;
    }
    case GroupExpr::Sdp: {
      Group actor = build_group(*e.actor, bound);
      return semidirect_product(e.module, actor, e.action, bound).group;
    }
  }
  throw BadParams("unreachable expression kind");
}

inline Group build_group(const std::string& text,
                         std::size_t bound = kDefaultEnumerationBound) {
  return build_group(parse_group_expr(text), bound);
}

}  // namespace vanish
