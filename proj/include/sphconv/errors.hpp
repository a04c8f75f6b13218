#ifndef SPHCONV_ERRORS_HPP
#define SPHCONV_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace sphconv {

struct UnimodularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LowerBoundViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-fatal diagnostics. Computations keep going; callers that care pass a
/// sink and inspect (the CLI folds them into a warnings column).
enum class WarningKind {
  Truncation,
  Accuracy,
  NumericalNoise,
  SmallDivisor,
};

struct Warning {
  WarningKind kind;
  std::string message;
};

class Warnings {
 public:
  void add(WarningKind kind, std::string message) {
    items_.push_back({kind, std::move(message)});
  }
  const std::vector<Warning>& items() const { return items_; }
  bool has(WarningKind kind) const {
    for (const auto& w : items_)
      if (w.kind == kind) return true;
    return false;
  }
  bool empty() const { return items_.empty(); }
  void clear() { items_.clear(); }

 private:
  std::vector<Warning> items_;
};

inline void warn(Warnings* sink, WarningKind kind, std::string message) {
  if (sink) sink->add(kind, std::move(message));
}

const char* warning_name(WarningKind kind);

}  // namespace sphconv

#endif
