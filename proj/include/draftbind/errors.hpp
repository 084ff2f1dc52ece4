#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace draftbind {

// S-expression parse failure, annotated with the byte offset it occurred at.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t position, std::string reason)
      : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + reason),
        position_(position),
        reason_(std::move(reason)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t position_;
  std::string reason_;
};

// Malformed line in a TSV input (triples or entity catalog).
class FormatError : public std::runtime_error {
public:
  FormatError(std::size_t line, std::string what_arg)
      : std::runtime_error("line " + std::to_string(line) + ": " + what_arg), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// A slot required by substitute() has no binding.
class MissingBindingError : public std::runtime_error {
public:
  explicit MissingBindingError(std::vector<int> path)
      : std::runtime_error("no binding for slot at path " + path_string(path)),
        path_(std::move(path)) {}

  const std::vector<int>& path() const noexcept { return path_; }

  static std::string path_string(const std::vector<int>& path) {
    std::string s = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(path[i]);
    }
    return s + "]";
  }

private:
  std::vector<int> path_;
};

// An exemplar's raw logical form references a MID absent from the catalog.
class UnknownMidError : public std::runtime_error {
public:
  explicit UnknownMidError(std::string mid)
      : std::runtime_error("mid not in catalog: " + mid), mid_(std::move(mid)) {}

  const std::string& mid() const noexcept { return mid_; }

private:
  std::string mid_;
};

class DuplicateDocIdError : public std::runtime_error {
public:
  explicit DuplicateDocIdError(const std::string& doc_id)
      : std::runtime_error("duplicate doc id: " + doc_id) {}
};

class UnknownDocIdError : public std::runtime_error {
public:
  explicit UnknownDocIdError(const std::string& doc_id)
      : std::runtime_error("unknown doc id: " + doc_id) {}
};

// Entity binding produced nothing, not even a BM25 anchor.
class NoCandidateError : public std::runtime_error {
public:
  explicit NoCandidateError(const std::string& surface)
      : std::runtime_error("no entity candidate for \"" + surface + "\"") {}
};

class PoolTooSmallError : public std::runtime_error {
public:
  PoolTooSmallError(std::size_t pool, std::size_t wanted)
      : std::runtime_error("exemplar pool has " + std::to_string(pool) +
                           " entries, need " + std::to_string(wanted)) {}
};

// LLM or SPARQL transport failure. Retryable errors are re-attempted with
// backoff before surfacing as a question-level failure.
class ClientError : public std::runtime_error {
public:
  ClientError(std::string message, bool retryable)
      : std::runtime_error(std::move(message)), retryable_(retryable) {}

  bool retryable() const noexcept { return retryable_; }

private:
  bool retryable_;
};

class ExemplarError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace draftbind
