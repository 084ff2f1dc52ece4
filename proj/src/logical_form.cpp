#include "draftbind/logical_form.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>

namespace draftbind {

namespace {

constexpr std::array<const char*, 10> kOperators = {
    "AND", "JOIN", "R", "COUNT", "ARGMAX", "ARGMIN", "LT", "LE", "GT", "GE"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower_alnum(char c) { return (c >= 'a' && c <= 'z') || is_digit(c) || c == '_'; }

bool is_int_token(const std::string& t) {
  std::size_t i = (t.size() > 1 && (t[0] == '+' || t[0] == '-')) ? 1 : 0;
  if (i >= t.size()) return false;
  for (; i < t.size(); ++i)
    if (!is_digit(t[i])) return false;
  return true;
}

// digits '.' digits, or digits with exponent; optional sign and exponent.
bool is_float_token(const std::string& t) {
  std::size_t i = (t.size() > 1 && (t[0] == '+' || t[0] == '-')) ? 1 : 0;
  std::size_t digits = 0;
  while (i < t.size() && is_digit(t[i])) ++i, ++digits;
  if (digits == 0) return false;
  bool has_frac = false;
  if (i < t.size() && t[i] == '.') {
    ++i;
    std::size_t frac = 0;
    while (i < t.size() && is_digit(t[i])) ++i, ++frac;
    if (frac == 0) return false;
    has_frac = true;
  }
  bool has_exp = false;
  if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
    ++i;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
    std::size_t ed = 0;
    while (i < t.size() && is_digit(t[i])) ++i, ++ed;
    if (ed == 0) return false;
    has_exp = true;
  }
  return i == t.size() && (has_frac || has_exp);
}

bool is_date_token(const std::string& t) {
  if (t.size() != 10 || t[4] != '-' || t[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!is_digit(t[i])) return false;
  return true;
}

}  // namespace

bool is_mid_token(const std::string& t) {
  if (t.size() < 3 || (t[0] != 'm' && t[0] != 'g') || t[1] != '.') return false;
  for (std::size_t i = 2; i < t.size(); ++i)
    if (!is_lower_alnum(t[i])) return false;
  return true;
}

bool is_schema_token(const std::string& t) {
  std::size_t segments = 0;
  std::size_t seg_len = 0;
  for (char c : t) {
    if (c == '.') {
      if (seg_len == 0) return false;
      ++segments;
      seg_len = 0;
    } else if (is_lower_alnum(c)) {
      ++seg_len;
    } else {
      return false;
    }
  }
  return segments >= 1 && seg_len > 0;
}

bool is_operator_keyword(const std::string& t) {
  return std::find(kOperators.begin(), kOperators.end(), t) != kOperators.end();
}

LogicalForm LogicalForm::schema(std::string token) {
  LogicalForm lf;
  lf.leaf_kind = LeafKind::SchemaToken;
  lf.text = std::move(token);
  return lf;
}

LogicalForm LogicalForm::entity_surface(std::string name) {
  LogicalForm lf;
  lf.leaf_kind = LeafKind::Entity;
  lf.text = std::move(name);
  return lf;
}

LogicalForm LogicalForm::entity_mid(std::string mid) {
  LogicalForm lf;
  lf.leaf_kind = LeafKind::Entity;
  lf.text = std::move(mid);
  lf.entity_is_mid = true;
  return lf;
}

LogicalForm LogicalForm::literal(LiteralTag tag, std::string lexeme) {
  LogicalForm lf;
  lf.leaf_kind = LeafKind::Literal;
  lf.text = std::move(lexeme);
  lf.literal_tag = tag;
  return lf;
}

LogicalForm LogicalForm::node(NodeKind kind, std::vector<LogicalForm> children) {
  LogicalForm lf;
  lf.kind = kind;
  lf.children = std::move(children);
  return lf;
}

namespace {

struct Token {
  enum Type { LParen, RParen, Word, String, End } type;
  std::string text;
  std::size_t pos;
};

class Lexer {
public:
  explicit Lexer(const std::string& input) : in_(input) {}

  Token next() {
    while (at_ < in_.size() && is_space(in_[at_])) ++at_;
    if (at_ >= in_.size()) return {Token::End, "", in_.size()};
    std::size_t start = at_;
    char c = in_[at_];
    if (c == '(') {
      ++at_;
      return {Token::LParen, "(", start};
    }
    if (c == ')') {
      ++at_;
      return {Token::RParen, ")", start};
    }
    if (c == '"') {
      ++at_;
      std::string s;
      while (at_ < in_.size() && in_[at_] != '"') s += in_[at_++];
      if (at_ >= in_.size()) throw ParseError(start, "unterminated string");
      ++at_;
      return {Token::String, s, start};
    }
    std::string w;
    while (at_ < in_.size() && !is_space(in_[at_]) && in_[at_] != '(' && in_[at_] != ')' &&
           in_[at_] != '"')
      w += in_[at_++];
    return {Token::Word, w, start};
  }

private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  const std::string& in_;
  std::size_t at_ = 0;
};

NodeKind operator_kind(const std::string& word) {
  if (word == "AND") return NodeKind::And;
  if (word == "JOIN") return NodeKind::Join;
  if (word == "R") return NodeKind::Reverse;
  if (word == "COUNT") return NodeKind::Count;
  if (word == "ARGMAX") return NodeKind::ArgMax;
  if (word == "ARGMIN") return NodeKind::ArgMin;
  if (word == "LT") return NodeKind::Lt;
  if (word == "LE") return NodeKind::Le;
  if (word == "GT") return NodeKind::Gt;
  if (word == "GE") return NodeKind::Ge;
  return NodeKind::Leaf;
}

// Single tokens that never join a multi-word run (they contain a dot).
LogicalForm classify_dotted(const std::string& w) {
  if (is_mid_token(w)) return LogicalForm::entity_mid(w);
  if (is_float_token(w)) return LogicalForm::literal(LiteralTag::Float, w);
  if (is_schema_token(w)) return LogicalForm::schema(w);
  return LogicalForm::entity_surface(w);
}

LogicalForm classify_single(const std::string& w) {
  if (is_int_token(w)) return LogicalForm::literal(LiteralTag::Int, w);
  if (is_float_token(w)) return LogicalForm::literal(LiteralTag::Float, w);
  if (is_date_token(w)) return LogicalForm::literal(LiteralTag::Date, w);
  return LogicalForm::entity_surface(w);
}

bool is_relation_expr(const LogicalForm& lf) {
  if (lf.is_schema()) return true;
  return lf.kind == NodeKind::Reverse;
}

class Parser {
public:
  explicit Parser(const std::string& input) : lexer_(input) { advance(); }

  LogicalForm parse_top() {
    std::vector<LogicalForm> items = parse_arguments(/*until_rparen=*/false);
    if (items.empty()) throw ParseError(cur_.pos, "empty input");
    if (items.size() > 1) throw ParseError(cur_.pos, "trailing content after expression");
    return std::move(items.front());
  }

private:
  void advance() { cur_ = lexer_.next(); }

  // Parses a sequence of argument expressions, collapsing multi-word
  // surface-name runs, until ')' (or end of input at top level).
  std::vector<LogicalForm> parse_arguments(bool until_rparen) {
    std::vector<LogicalForm> out;
    std::vector<std::string> run;
    auto flush = [&] {
      if (run.empty()) return;
      if (run.size() == 1) {
        out.push_back(classify_single(run.front()));
      } else {
        std::string joined;
        for (std::size_t i = 0; i < run.size(); ++i) {
          if (i) joined += ' ';
          joined += run[i];
        }
        out.push_back(LogicalForm::entity_surface(joined));
      }
      run.clear();
    };
    for (;;) {
      switch (cur_.type) {
        case Token::LParen:
          flush();
          out.push_back(parse_form());
          break;
        case Token::RParen:
          if (!until_rparen) throw ParseError(cur_.pos, "unbalanced parentheses");
          flush();
          advance();
          return out;
        case Token::String:
          flush();
          out.push_back(LogicalForm::literal(LiteralTag::Str, cur_.text));
          advance();
          break;
        case Token::Word: {
          const std::string& w = cur_.text;
          if (is_operator_keyword(w)) {
            throw ParseError(cur_.pos, "operator keyword in argument position: " + w);
          }
          if (w.find('.') != std::string::npos) {
            flush();
            out.push_back(classify_dotted(w));
            advance();
          } else {
            run.push_back(w);
            advance();
          }
          break;
        }
        case Token::End:
          if (until_rparen) throw ParseError(cur_.pos, "unbalanced parentheses");
          flush();
          return out;
      }
    }
  }

  LogicalForm parse_form() {
    std::size_t open_pos = cur_.pos;
    advance();  // consume '('
    if (cur_.type == Token::RParen) throw ParseError(open_pos, "empty expression");
    if (cur_.type != Token::Word || !is_operator_keyword(cur_.text)) {
      if (cur_.type == Token::End) throw ParseError(cur_.pos, "unbalanced parentheses");
      throw ParseError(cur_.pos, "unknown operator: " + cur_.text);
    }
    NodeKind kind = operator_kind(cur_.text);
    std::string op = cur_.text;
    advance();
    std::vector<LogicalForm> args = parse_arguments(/*until_rparen=*/true);
    check_form(kind, op, args, open_pos);
    return LogicalForm::node(kind, std::move(args));
  }

  void check_form(NodeKind kind, const std::string& op, const std::vector<LogicalForm>& args,
                  std::size_t pos) const {
    auto expect_arity = [&](std::size_t n) {
      if (args.empty()) throw ParseError(pos, "empty argument list for " + op);
      if (args.size() != n)
        throw ParseError(pos, op + " expects " + std::to_string(n) + " arguments, got " +
                                  std::to_string(args.size()));
    };
    switch (kind) {
      case NodeKind::And:
        expect_arity(2);
        break;
      case NodeKind::Join:
        expect_arity(2);
        if (!is_relation_expr(args[0]))
          throw ParseError(pos, "JOIN expects a relation in first position");
        break;
      case NodeKind::Reverse:
        expect_arity(1);
        if (!is_relation_expr(args[0])) throw ParseError(pos, "R expects a relation");
        break;
      case NodeKind::Count:
        expect_arity(1);
        break;
      case NodeKind::ArgMax:
      case NodeKind::ArgMin:
        expect_arity(2);
        if (!is_relation_expr(args[1]))
          throw ParseError(pos, op + " expects a relation in second position");
        break;
      case NodeKind::Lt:
      case NodeKind::Le:
      case NodeKind::Gt:
      case NodeKind::Ge:
        expect_arity(2);
        if (!is_relation_expr(args[0]))
          throw ParseError(pos, op + " expects a relation in first position");
        if (!args[1].is_literal()) throw ParseError(pos, op + " expects a literal");
        break;
      case NodeKind::Leaf:
        break;
    }
  }

  Lexer lexer_;
  Token cur_{Token::End, "", 0};
};

const char* operator_name(NodeKind k) {
  switch (k) {
    case NodeKind::And: return "AND";
    case NodeKind::Join: return "JOIN";
    case NodeKind::Reverse: return "R";
    case NodeKind::Count: return "COUNT";
    case NodeKind::ArgMax: return "ARGMAX";
    case NodeKind::ArgMin: return "ARGMIN";
    case NodeKind::Lt: return "LT";
    case NodeKind::Le: return "LE";
    case NodeKind::Gt: return "GT";
    case NodeKind::Ge: return "GE";
    case NodeKind::Leaf: return "";
  }
  return "";
}

void render_into(const LogicalForm& lf, std::string& out) {
  if (lf.is_leaf()) {
    if (lf.is_literal() && lf.literal_tag == LiteralTag::Str) {
      out += '"';
      out += lf.text;
      out += '"';
    } else {
      out += lf.text;
    }
    return;
  }
  out += '(';
  out += operator_name(lf.kind);
  for (const LogicalForm& child : lf.children) {
    out += ' ';
    render_into(child, out);
  }
  out += ')';
}

enum class Position { Set, Relation };

template <typename Fn>
void walk_leaves(const LogicalForm& lf, Position pos, LeafPath& path, Fn&& fn) {
  if (lf.is_leaf()) {
    fn(lf, pos, path);
    return;
  }
  for (int i = 0; i < static_cast<int>(lf.children.size()); ++i) {
    Position child_pos = Position::Set;
    switch (lf.kind) {
      case NodeKind::Join:
        child_pos = (i == 0) ? Position::Relation : Position::Set;
        break;
      case NodeKind::Reverse:
        child_pos = Position::Relation;
        break;
      case NodeKind::ArgMax:
      case NodeKind::ArgMin:
        child_pos = (i == 1) ? Position::Relation : Position::Set;
        break;
      case NodeKind::Lt:
      case NodeKind::Le:
      case NodeKind::Gt:
      case NodeKind::Ge:
        child_pos = (i == 0) ? Position::Relation : Position::Set;
        break;
      default:
        break;
    }
    path.push_back(i);
    walk_leaves(lf.children[i], child_pos, path, fn);
    path.pop_back();
  }
}

}  // namespace

LogicalForm parse_draft(const std::string& text) {
  Parser parser(text);
  return parser.parse_top();
}

std::string render(const LogicalForm& ast) {
  std::string out;
  render_into(ast, out);
  return out;
}

bool is_grounded(const LogicalForm& ast) {
  if (ast.is_surface_entity()) return false;
  for (const LogicalForm& child : ast.children)
    if (!is_grounded(child)) return false;
  return true;
}

SlotList extract_slots(const LogicalForm& ast) {
  SlotList slots;
  LeafPath path;
  walk_leaves(ast, Position::Set, path, [&](const LogicalForm& leaf, Position pos,
                                            const LeafPath& at) {
    switch (leaf.leaf_kind) {
      case LeafKind::Entity:
        slots.entity_slots.push_back({leaf.text, leaf.entity_is_mid, at});
        break;
      case LeafKind::SchemaToken:
        if (pos == Position::Relation) {
          slots.relation_slots.push_back({leaf.text, at});
        } else {
          slots.class_slots.push_back({leaf.text, at});
        }
        break;
      case LeafKind::Literal:
        slots.literal_slots.push_back({leaf.literal_tag, leaf.text, at});
        break;
      case LeafKind::None:
        break;
    }
  });
  return slots;
}

const LogicalForm* leaf_at(const LogicalForm& ast, const LeafPath& path) {
  const LogicalForm* cur = &ast;
  for (int idx : path) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= cur->children.size()) return nullptr;
    cur = &cur->children[idx];
  }
  return cur;
}

namespace {

void substitute_in_place(LogicalForm& lf, const LeafPath& prefix,
                         const std::map<LeafPath, std::string>& bindings, bool as_entity) {
  auto it = bindings.find(prefix);
  if (it == bindings.end()) throw MissingBindingError(prefix);
  lf = as_entity ? LogicalForm::entity_mid(it->second) : LogicalForm::schema(it->second);
}

}  // namespace

LogicalForm substitute(const LogicalForm& ast, const std::map<LeafPath, std::string>& bindings) {
  LogicalForm out = ast;
  SlotList slots = extract_slots(ast);
  for (const EntitySlot& slot : slots.entity_slots) {
    LogicalForm* leaf = const_cast<LogicalForm*>(leaf_at(out, slot.path));
    substitute_in_place(*leaf, slot.path, bindings, /*as_entity=*/true);
  }
  for (const SchemaSlot& slot : slots.relation_slots) {
    LogicalForm* leaf = const_cast<LogicalForm*>(leaf_at(out, slot.path));
    substitute_in_place(*leaf, slot.path, bindings, /*as_entity=*/false);
  }
  for (const SchemaSlot& slot : slots.class_slots) {
    LogicalForm* leaf = const_cast<LogicalForm*>(leaf_at(out, slot.path));
    substitute_in_place(*leaf, slot.path, bindings, /*as_entity=*/false);
  }
  return out;
}

LogicalForm skeleton(const LogicalForm& ast) {
  if (ast.is_leaf()) {
    switch (ast.leaf_kind) {
      case LeafKind::Entity:
        return LogicalForm::entity_surface("ENT");
      case LeafKind::Literal:
        return LogicalForm::entity_surface("LIT");
      default:
        break;
    }
    return ast;  // schema tokens handled by the caller (position-dependent)
  }
  LogicalForm out = ast;
  LeafPath path;
  walk_leaves(out, Position::Set, path,
              [&](const LogicalForm& leaf, Position pos, const LeafPath& at) {
                LogicalForm* mut = const_cast<LogicalForm*>(leaf_at(out, at));
                switch (leaf.leaf_kind) {
                  case LeafKind::Entity:
                    *mut = LogicalForm::entity_surface("ENT");
                    break;
                  case LeafKind::Literal:
                    *mut = LogicalForm::entity_surface("LIT");
                    break;
                  case LeafKind::SchemaToken:
                    *mut = LogicalForm::schema(pos == Position::Relation ? "REL" : "CLS");
                    break;
                  case LeafKind::None:
                    break;
                }
              });
  return out;
}

LogicalForm canonicalize(const LogicalForm& ast) {
  LogicalForm out = ast;
  for (LogicalForm& child : out.children) child = canonicalize(child);
  if (out.kind == NodeKind::And && out.children.size() == 2) {
    if (render(out.children[1]) < render(out.children[0]))
      std::swap(out.children[0], out.children[1]);
  }
  return out;
}

bool em_match(const LogicalForm& pred, const LogicalForm& gold) {
  return canonicalize(pred) == canonicalize(gold);
}

}  // namespace draftbind
