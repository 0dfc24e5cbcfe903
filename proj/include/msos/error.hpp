#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msos {

// Base class for all engine errors. Every throw site uses a subclass so
// callers can react to the failure class, not the message text.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Label or object assignment does not match the governing signature.
class SignatureError : public Error {
public:
  using Error::Error;
};

// Two labels are not composable; names the first offending entity.
class ComposeError : public Error {
public:
  ComposeError(const std::string& entity, const std::string& what)
      : Error(what), entity_(entity) {}
  const std::string& entity() const { return entity_; }

private:
  std::string entity_;
};

// Arity or sort mismatch while injecting, or malformed argument tuple.
class ConstructionError : public Error {
public:
  using Error::Error;
};

// Language definition cannot be built into a language.
class BuildError : public Error {
public:
  enum class Code { UnknownComponent, MissingImport, EntityMismatch, BadDefinition };

  BuildError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

private:
  Code code_;
};

// The deterministic driver met more than one enabled transition.
class NondeterminismError : public Error {
public:
  using Error::Error;
};

// Text input (s-expression program or language definition file) is invalid.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// Internal invariant of the property harness failed; must never fire.
class HarnessError : public Error {
public:
  using Error::Error;
};

}  // namespace msos
