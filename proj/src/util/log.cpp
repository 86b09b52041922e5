#include "synthbench/util/log.hpp"

#include <atomic>
#include <iostream>

namespace synthbench {
namespace {

std::atomic<LogLevel> g_level{LogLevel::Warn};
thread_local WarningCapture* t_capture = nullptr;

}  // namespace

void set_log_level(LogLevel level) { g_level = level; }
LogLevel log_level() { return g_level; }

void log_warn(std::string_view message) {
  if (t_capture != nullptr) {
    t_capture->messages_.emplace_back(message);
    return;
  }
  if (g_level != LogLevel::Quiet) std::cerr << "warning: " << message << '\n';
}

void log_info(std::string_view message) {
  if (g_level == LogLevel::Info) std::cerr << message << '\n';
}

WarningCapture::WarningCapture() : previous_(t_capture) { t_capture = this; }
WarningCapture::~WarningCapture() { t_capture = previous_; }

bool WarningCapture::contains(std::string_view needle) const {
  for (const auto& m : messages_) {
    if (m.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace synthbench
