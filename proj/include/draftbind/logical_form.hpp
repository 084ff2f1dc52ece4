#pragma once

#include <map>
#include <string>
#include <vector>

#include "draftbind/errors.hpp"

namespace draftbind {

// S-expression logical forms over a knowledge base.
//
// Grammar (GrailQA-style):
//   expr   := leaf | (AND expr expr) | (JOIN rel expr) | (COUNT expr)
//           | (ARGMAX expr rel) | (ARGMIN expr rel)
//           | (LT rel literal) | (LE rel literal) | (GT rel literal) | (GE rel literal)
//   rel    := schema-token | (R rel)
//   leaf   := schema-token | entity | literal
//
// A leaf token is classified by shape: `m.xxx`/`g.xxx` is an entity MID,
// `a.b.c`-style dotted lowercase is a schema token, numerals and ISO dates
// are literals, everything else is surface text. A maximal run of
// consecutive dot-free non-operator tokens collapses into one multi-word
// surface name ("Data Compression" is a single entity leaf).
//
// "Draft" forms (LLM output) may carry surface-name entities and schema
// tokens that do not exist in any KB; "grounded" forms carry MIDs only.

enum class NodeKind { And, Join, Reverse, Count, ArgMax, ArgMin, Lt, Le, Gt, Ge, Leaf };

enum class LeafKind { None, SchemaToken, Entity, Literal };

enum class LiteralTag { Int, Float, Date, Str };

struct LogicalForm {
  NodeKind kind = NodeKind::Leaf;
  std::vector<LogicalForm> children;

  // Leaf payload; meaningful only when kind == Leaf.
  LeafKind leaf_kind = LeafKind::None;
  std::string text;            // schema token, entity text, or literal lexeme
  bool entity_is_mid = false;  // Entity leaves: MID vs. surface name
  LiteralTag literal_tag = LiteralTag::Str;

  bool operator==(const LogicalForm&) const = default;

  bool is_leaf() const { return kind == NodeKind::Leaf; }
  bool is_schema() const { return is_leaf() && leaf_kind == LeafKind::SchemaToken; }
  bool is_entity() const { return is_leaf() && leaf_kind == LeafKind::Entity; }
  bool is_literal() const { return is_leaf() && leaf_kind == LeafKind::Literal; }
  bool is_surface_entity() const { return is_entity() && !entity_is_mid; }

  static LogicalForm schema(std::string token);
  static LogicalForm entity_surface(std::string name);
  static LogicalForm entity_mid(std::string mid);
  static LogicalForm literal(LiteralTag tag, std::string lexeme);
  static LogicalForm node(NodeKind kind, std::vector<LogicalForm> children);
};

// Path of child indices from the root; {} addresses the root itself.
using LeafPath = std::vector<int>;

struct EntitySlot {
  std::string text;  // surface name, or MID when the draft already carried one
  bool is_mid = false;
  LeafPath path;
};

struct SchemaSlot {
  std::string token;  // draft relation or class token
  LeafPath path;
};

struct LiteralSlot {
  LiteralTag tag = LiteralTag::Str;
  std::string lexeme;
  LeafPath path;
};

// Decomposition of a draft into bindable positions. Relation slots are
// schema tokens in relation position (JOIN head, comparative head,
// ARGMAX/ARGMIN attribute, anything under R); class slots are schema tokens
// in set position.
struct SlotList {
  std::vector<EntitySlot> entity_slots;
  std::vector<SchemaSlot> relation_slots;
  std::vector<SchemaSlot> class_slots;
  std::vector<LiteralSlot> literal_slots;
};

// Token shape predicates used by the parser and by KB loaders.
bool is_mid_token(const std::string& token);
bool is_schema_token(const std::string& token);
bool is_operator_keyword(const std::string& token);

// Parse an s-expression draft. Throws ParseError on malformed input; never
// crashes on arbitrary bytes.
LogicalForm parse_draft(const std::string& text);

// Serialize with single spaces and no trailing whitespace.
// parse_draft(render(x)) == x for every AST render can produce.
std::string render(const LogicalForm& ast);

// True when the form carries no surface-name entities (every entity leaf is
// a MID). Vocabulary membership of schema tokens is checked at execution.
bool is_grounded(const LogicalForm& ast);

SlotList extract_slots(const LogicalForm& ast);

// Replace every entity/relation/class slot leaf with the bound identifier.
// Throws MissingBindingError if any slot path is absent from `bindings`.
LogicalForm substitute(const LogicalForm& ast, const std::map<LeafPath, std::string>& bindings);

// Operator tree with leaves replaced by ENT / REL / CLS / LIT placeholders.
// Spelling-invariant: substitute() never changes a form's skeleton.
LogicalForm skeleton(const LogicalForm& ast);

// Canonical form: children of AND sorted by their rendered text. em_match
// compares canonical forms, so AND commutes; everything else is syntactic.
LogicalForm canonicalize(const LogicalForm& ast);

bool em_match(const LogicalForm& pred, const LogicalForm& gold);

const LogicalForm* leaf_at(const LogicalForm& ast, const LeafPath& path);

}  // namespace draftbind
