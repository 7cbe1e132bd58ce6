#include "sv/notation.hpp"

#include <cctype>

namespace sv {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, what + " at byte " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  int integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a non-negative integer");
    long value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (text_[pos_++] - '0');
      if (value > 100000) fail("integer too large");
    }
    return static_cast<int>(value);
  }

  Partition int_list() {
    std::vector<int> v{integer()};
    while (accept(',')) v.push_back(integer());
    return Partition(v);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string rest_text(const Partition& rest, char lead) {
  std::string s;
  for (int e : rest.entries()) {
    s += lead;
    s += std::to_string(e);
    lead = ',';
  }
  return s;
}

}  // namespace

DistinctConfig parse_distinct(std::string_view text) {
  Cursor in(text);
  DistinctConfig cfg;
  if (in.done()) in.fail("empty pattern");
  while (!in.done()) {
    in.expect('(');
    DistinctPiece piece;
    piece.a1 = in.integer();
    in.expect('+');
    piece.a2 = in.integer();
    if (in.accept(',')) piece.rest = in.int_list();
    in.expect(')');
    in.expect('>');
    cfg.pieces.push_back(piece);
  }
  int p = cfg.p();
  for (const auto& piece : cfg.pieces) {
    cfg.m1 += piece.a1;
    cfg.m2 += piece.a2;
  }
  cfg.m1 += p - 1;
  cfg.m2 += p - 1;
  return cfg;
}

ClosedConfig parse_closed(std::string_view text) {
  Cursor in(text);
  ClosedConfig cfg;
  auto glue = [&]() -> Glue {
    if (in.accept('-')) return Glue::Direct;
    if (in.accept('=')) return Glue::Cylinder;
    in.fail("expected glue '-' or '='");
  };
  if (in.done()) in.fail("empty pattern");
  cfg.glue.push_back(glue());
  while (true) {
    in.expect('(');
    ClosedPiece piece;
    if (in.accept('F')) {
      piece.kind = PieceKind::FigureEight;
      piece.x = in.integer();
      in.expect('+');
      piece.y = in.integer();
    } else if (in.accept('H')) {
      piece.kind = PieceKind::PairOfHoles;
      piece.x = in.integer();
      in.expect(',');
      piece.y = in.integer();
    } else {
      in.fail("expected piece kind 'F' or 'H'");
    }
    if (in.accept(';')) piece.rest = in.int_list();
    in.expect(')');
    cfg.pieces.push_back(piece);
    if (in.done()) break;
    std::size_t at = in.pos();
    Glue g = glue();
    if (in.done()) {
      if (g != cfg.glue.front()) {
        throw Error(ErrorCode::ParseError, "closing glue differs from the leading glue (glue arity) at byte " +
                                               std::to_string(at) + " in '" + std::string(text) + "'");
      }
      break;
    }
    cfg.glue.push_back(g);
  }
  return cfg;
}

std::string format_distinct(const DistinctConfig& cfg) {
  std::string s;
  for (const auto& piece : cfg.pieces)
    s += "(" + std::to_string(piece.a1) + "+" + std::to_string(piece.a2) + rest_text(piece.rest, ',') + ")>";
  return s;
}

std::string format_closed(const ClosedConfig& cfg) {
  std::string s;
  for (int i = 0; i < cfg.p(); ++i) {
    const auto& piece = cfg.pieces[i];
    s += cfg.glue[i] == Glue::Cylinder ? '=' : '-';
    s += '(';
    s += piece.is_f() ? "F" + std::to_string(piece.x) + "+" + std::to_string(piece.y)
                      : "H" + std::to_string(piece.x) + "," + std::to_string(piece.y);
    s += rest_text(piece.rest, ';');
    s += ')';
  }
  return s;
}

std::string print_distinct(const DistinctConfig& cfg) { return format_distinct(canonicalize_distinct(cfg)); }

std::string print_closed(const ClosedConfig& cfg) { return format_closed(canonicalize_closed(cfg)); }

}  // namespace sv
