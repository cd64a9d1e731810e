#pragma once

// Batch sessions: a YAML file of named structures, ring morphisms, modules,
// module morphisms and an ordered command list; results are collected into
// a JSON certificate whose field order is fixed:
//   tool, version, input_digest, results[{command, verdict, witness, artifacts}]

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "diffalg/atiyah.hpp"

namespace diffalg {

class SessionError : public Error {
 public:
  enum class Kind { Parse, Semantic };
  SessionError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr const char* kToolName = "diffalg";
inline constexpr const char* kToolVersion = "0.1.0";

struct SessionOptions {
  unsigned degree_bound = 2;
  unsigned depth = 1;
  std::size_t rank_cap = 8;
};

struct SessionResult {
  nlohmann::ordered_json certificate;
  bool verdicts_ok = true;
};

class Session {
 public:
  /// Parses and validates the definitions.  Throws SessionError.
  explicit Session(const std::string& text);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Runs the command list in order.  Throws SessionError.
  SessionResult run(const SessionOptions& options = {});

  /// Modules defined in the file or produced by `as:` during run().
  const DiffModule& module(const std::string& name) const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

/// The certificate as written to disk: 2-space indentation, trailing newline.
std::string certificate_text(const nlohmann::ordered_json& certificate);

}  // namespace diffalg
