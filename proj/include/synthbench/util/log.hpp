#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace synthbench {

enum class LogLevel { Quiet, Warn, Info };

void set_log_level(LogLevel level);
LogLevel log_level();

void log_warn(std::string_view message);
void log_info(std::string_view message);

/// Collects warnings emitted on the current thread while alive.
/// Nested captures see only their own scope.
class WarningCapture {
 public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }
  bool contains(std::string_view needle) const;

 private:
  friend void log_warn(std::string_view message);
  std::vector<std::string> messages_;
  WarningCapture* previous_;
};

}  // namespace synthbench
