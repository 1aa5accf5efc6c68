#pragma once

#include <stdexcept>
#include <string>

namespace idsample {

// Process exit codes used by the CLI. Library errors map onto these so
// scripts can tell an unreadable input apart from a sampling failure.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitSamplingExhausted = 3,
  kExitSchemaMismatch = 4,
  kExitNumericError = 5,
};

// Unreadable file, malformed CSV, bad argument, violated precondition.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// The acceptance loop ran out of attempts without a similar sample.
struct SamplingExhausted : std::runtime_error {
  SamplingExhausted(const std::string& msg, double best)
      : std::runtime_error(msg), best_statistic(best) {}
  double best_statistic;
};

// Two datasets that were expected to share a feature schema do not.
struct SchemaMismatch : std::runtime_error {
  explicit SchemaMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to converge or produced nonsense.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace idsample
