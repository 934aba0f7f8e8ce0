/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 lbforge contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "lbforge/util/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace lbforge {

static LogLevel parse_level() {
  const char* env = std::getenv("LBFORGE_LOG");
  if (env == nullptr) return LogLevel::warn;
  if (std::strcmp(env, "error") == 0) return LogLevel::error;
  if (std::strcmp(env, "warn") == 0) return LogLevel::warn;
  if (std::strcmp(env, "info") == 0) return LogLevel::info;
  if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
  return LogLevel::warn;
}

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_message(LogLevel level, const char* fmt, ...) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[lbforge %s] ", names[static_cast<int>(level)]);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace lbforge
