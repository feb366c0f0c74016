#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace petri {

/// Broad failure category. The CLI maps these onto exit codes.
enum class ErrorKind {
  structural,   // malformed net, run, module or unknown identifier
  parse,        // textual input could not be read
  enabling,     // a transition (or mode) is not enabled
  reversal,     // a step cannot be taken backwards
  composition,  // interface mismatch while composing modules
  synthesis,    // inconsistent step set
  sort,         // ill-sorted high-level inscription
  relation,     // concurrency relation undefined for the arguments
  capacity,     // a configured size cap was exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what)
      : Error(ErrorKind::structural, what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(ErrorKind::parse, format(source, line, what)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    return (source.empty() ? std::string("<input>") : source) + ":" +
           std::to_string(line) + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

/// Thrown when a transition is fired without being enabled. Carries the
/// places lacking tokens and, for sequences, the failing position.
class EnablingError : public Error {
 public:
  EnablingError(const std::string& what, std::vector<std::string> deficient,
                std::optional<std::size_t> index = std::nullopt)
      : Error(ErrorKind::enabling, what),
        deficient_(std::move(deficient)),
        index_(index) {}

  const std::vector<std::string>& deficient_places() const noexcept {
    return deficient_;
  }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  std::vector<std::string> deficient_;
  std::optional<std::size_t> index_;
};

class ReversalError : public Error {
 public:
  explicit ReversalError(const std::string& what)
      : Error(ErrorKind::reversal, what) {}
};

class CompositionError : public Error {
 public:
  CompositionError(const std::string& what, std::string label = {})
      : Error(ErrorKind::composition, what), label_(std::move(label)) {}

  const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
};

class SynthesisError : public Error {
 public:
  explicit SynthesisError(const std::string& what)
      : Error(ErrorKind::synthesis, what) {}
};

class SortError : public Error {
 public:
  explicit SortError(const std::string& what) : Error(ErrorKind::sort, what) {}
};

class RelationError : public Error {
 public:
  explicit RelationError(const std::string& what)
      : Error(ErrorKind::relation, what) {}
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(ErrorKind::capacity, what) {}
};

}  // namespace petri
